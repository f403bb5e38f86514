"""Exception hierarchy for the geometry engine.

Every failure mode that callers are expected to handle gets its own class so
that the CLI can map construction/usage problems to a distinct exit code and
tests can assert on the precise failure.
"""

from __future__ import annotations


class GeometryError(Exception):
    """Base class for all engine errors."""


class DimensionMismatch(GeometryError):
    """Vector or operator dimensions do not match the metric."""


class DegenerateSubspace(GeometryError):
    """A subspace whose Gram matrix is singular where invertibility is required."""


class DegeneratePlane(GeometryError):
    """Sectional curvature requested on a plane with singular Gram matrix."""


class StructureAxiomFailure(GeometryError):
    """A constructed structure violates one of its defining identities.

    Carries the label of the first failing identity and the observed residual.
    """

    def __init__(self, label: str, residual: float):
        self.label = label
        self.residual = residual
        super().__init__(f"structure axiom {label} failed with residual {residual:.3e}")


class StructureUnavailable(GeometryError):
    """The operation needs a (phi, xi, eta) structure but the space carries none."""


class PointOffManifold(GeometryError):
    """A base point does not satisfy the manifold's defining constraint."""


class DegenerateInducedMetric(GeometryError):
    """The induced metric at a point of an immersion is singular."""


class RankDeficientJacobian(GeometryError):
    """The immersion's Jacobian drops rank at the requested parameter point."""


class NotNormal(GeometryError):
    """A field passed as a normal field has a non-negligible tangential part."""


class NullDirection(GeometryError):
    """No non-null sample direction was found within the sampling budget."""


class PlaneNotInvariant(GeometryError):
    """The requested coordinate plane is not preserved by the operator triple."""


class SubspaceNotTotallyReal(GeometryError):
    """The requested subspace is not orthogonal to its images under the triple."""


class FrameConstructionFailure(GeometryError):
    """Frame construction ran out of non-null candidate vectors."""


class UnknownCheckId(GeometryError):
    """A check id was requested that the verifier registry does not contain."""
