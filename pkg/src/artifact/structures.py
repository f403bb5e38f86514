"""Pointwise verification of the mixed 3-structure identities, the
cosymplectic/Sasakian parallelism conditions, and canonical frame building.

Residuals are max-norms over vector components (absolute values for scalar
identities), maximized over sample points, sampled tangent vectors, and the
even permutations (1,2,3), (2,3,1), (3,1,2) of the structure index.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

import numpy as np

from .ambient import EVEN_PERMS, AmbientSpace, covariant_derivative
from .config import FD_STEP1, TOL_ALG, derive_rng
from .errors import FrameConstructionFailure, StructureUnavailable
from .linalg import inner

__all__ = [
    "AxiomResiduals",
    "StructureClass",
    "ParallelismResiduals",
    "check_axioms",
    "check_parallelism_class",
    "canonical_frame",
]


def _minf(v) -> float:
    return float(np.max(np.abs(v)))


@dataclass(frozen=True)
class AxiomResiduals:
    """Per-identity maxima of the eight pointwise structure identities.

    r1: phi_a^2 X = tau_a (-X + eta_a(X) xi_a)   (and eta_a(xi_a) = 1)
    r2: phi_a xi_a = 0,  eta_a(phi_a X) = 0
    r3: eta_a(xi_b) = 0 for a != b
    r4: phi_a xi_b = tau_b xi_c,  phi_b xi_a = -tau_a xi_c
    r5: eta_a(phi_b X) = tau_c eta_c(X) = -eta_b(phi_a X)
    r6: phi_a phi_b X - tau_a eta_b(X) xi_a = tau_c phi_c X
        = -phi_b phi_a X + tau_b eta_a(X) xi_b
    r7: g(phi_a X, phi_a Y) = tau_a [g(X,Y) - eps_a eta_a(X) eta_a(Y)]
    r8: eta_a(X) = eps_a g(X, xi_a),  g(phi_a X, Y) = -g(X, phi_a Y)
    """

    r1: float
    r2: float
    r3: float
    r4: float
    r5: float
    r6: float
    r7: float
    r8: float

    points_tested: int
    seed: int

    def as_dict(self) -> dict[str, float]:
        return {f"r{k}": getattr(self, f"r{k}") for k in range(1, 9)}

    def max_residual(self) -> float:
        return max(self.as_dict().values())

    def worst(self) -> tuple[str, float]:
        items = sorted(self.as_dict().items(), key=lambda kv: -kv[1])
        return items[0]


def check_axioms(space: AmbientSpace, points: int = 100, seed: int = 42) -> AxiomResiduals:
    """Evaluate all eight structure identities at seeded random points.

    Deterministic for a fixed seed.  The identities are exact properties of
    the constructions, so residuals should sit at roundoff level regardless
    of the seed.
    """
    st = space.structure
    if st is None:
        raise StructureUnavailable(f"{space.kind.name} carries no (phi, xi, eta) structure")
    g = space.metric
    rng = derive_rng(seed, "check_axioms")
    r = {k: 0.0 for k in range(1, 9)}

    for _ in range(points):
        p = space.random_point(rng)
        X = space.random_tangent(rng, p)
        Y = space.random_tangent(rng, p)
        xis = {a: st.xi(a, p) for a in (1, 2, 3)}

        for (a, b, c) in EVEN_PERMS:
            ta, tb, tc = st.tau[a - 1], st.tau[b - 1], st.tau[c - 1]
            ea = st.eps[a - 1]
            phiX = st.phi(a, p, X)
            phiY = st.phi(a, p, Y)

            r[1] = max(
                r[1],
                _minf(st.phi(a, p, phiX) - ta * (-X + st.eta(a, p, X) * xis[a])),
                abs(st.eta(a, p, xis[a]) - 1.0),
            )
            r[2] = max(r[2], _minf(st.phi(a, p, xis[a])), abs(st.eta(a, p, phiX)))
            r[3] = max(r[3], abs(st.eta(a, p, xis[b])), abs(st.eta(b, p, xis[a])))
            r[4] = max(
                r[4],
                _minf(st.phi(a, p, xis[b]) - tb * xis[c]),
                _minf(st.phi(b, p, xis[a]) + ta * xis[c]),
            )
            etacX = st.eta(c, p, X)
            r[5] = max(
                r[5],
                abs(st.eta(a, p, st.phi(b, p, X)) - tc * etacX),
                abs(st.eta(b, p, phiX) + tc * etacX),
            )
            phicX = st.phi(c, p, X)
            r[6] = max(
                r[6],
                _minf(st.phi(a, p, st.phi(b, p, X)) - ta * st.eta(b, p, X) * xis[a] - tc * phicX),
                _minf(st.phi(b, p, phiX) - tb * st.eta(a, p, X) * xis[b] + tc * phicX),
            )
            r[7] = max(
                r[7],
                abs(
                    inner(phiX, phiY, g)
                    - ta * (inner(X, Y, g) - ea * st.eta(a, p, X) * st.eta(a, p, Y))
                ),
            )
            r[8] = max(
                r[8],
                abs(st.eta(a, p, X) - ea * inner(X, xis[a], g)),
                abs(inner(phiX, Y, g) + inner(X, phiY, g)),
            )

    return AxiomResiduals(
        r1=r[1], r2=r[2], r3=r[3], r4=r[4], r5=r[5], r6=r[6], r7=r[7], r8=r[8],
        points_tested=points, seed=seed,
    )


class StructureClass(Enum):
    COSYMPLECTIC = "Cosymplectic"
    SASAKIAN = "Sasakian"
    NEITHER = "Neither"


@dataclass(frozen=True)
class ParallelismResiduals:
    """First-derivative residuals of the parallelism conditions.

    r_cosym_phi:   || (nabla_X phi_a) Y ||
    r_sasaki_phi:  || (nabla_X phi_a) Y - tau_a [g(X,Y) xi_a - eps_a eta_a(Y) X] ||
    r_cosym_xi:    || nabla_X xi_a ||
    r_sasaki_xi:   || nabla_X xi_a + eps_a phi_a X ||
    """

    verdict: StructureClass
    r_cosym_phi: float
    r_sasaki_phi: float
    r_cosym_xi: float
    r_sasaki_xi: float
    points_tested: int
    seed: int


def check_parallelism_class(
    space: AmbientSpace,
    points: int = 5,
    seed: int = 42,
    h: float = FD_STEP1,
    tol_d1: float = 1e-6,
) -> ParallelismResiduals:
    """Classify the structure as Cosymplectic, Sasakian, or Neither.

    Computes (nabla_X phi_a) Y = nabla_X (phi_a Y~) - phi_a (nabla_X Y~) with
    Y~ the tangentially-projected constant extension of Y, plus nabla_X xi_a,
    by single-layer central differences.
    """
    st = space.structure
    if st is None:
        raise StructureUnavailable(f"{space.kind.name} carries no (phi, xi, eta) structure")
    g = space.metric
    rng = derive_rng(seed, "check_parallelism")
    rc_phi = rs_phi = rc_xi = rs_xi = 0.0

    for _ in range(points):
        p = space.random_point(rng)
        X = space.random_tangent(rng, p)
        Y = space.random_tangent(rng, p)

        def Yf(q, Y=Y):
            return space.tangential(q, Y)

        for a in (1, 2, 3):
            ta, ea = st.tau[a - 1], st.eps[a - 1]

            def phiYf(q, a=a, Yf=Yf):
                return st.phi(a, q, Yf(q))

            def xif(q, a=a):
                return st.xi(a, q)

            nabla_phiY = covariant_derivative(space, p, X, phiYf, h=h)
            nabla_Y = covariant_derivative(space, p, X, Yf, h=h)
            nabla_phi = nabla_phiY - st.phi(a, p, nabla_Y)
            rhs = ta * (inner(X, Y, g) * st.xi(a, p) - ea * st.eta(a, p, Y) * X)
            rc_phi = max(rc_phi, _minf(nabla_phi))
            rs_phi = max(rs_phi, _minf(nabla_phi - rhs))

            nabla_xi = covariant_derivative(space, p, X, xif, h=h)
            rc_xi = max(rc_xi, _minf(nabla_xi))
            rs_xi = max(rs_xi, _minf(nabla_xi + ea * st.phi(a, p, X)))

    if max(rc_phi, rc_xi) < tol_d1:
        verdict = StructureClass.COSYMPLECTIC
    elif max(rs_phi, rs_xi) < tol_d1:
        verdict = StructureClass.SASAKIAN
    else:
        verdict = StructureClass.NEITHER
    return ParallelismResiduals(
        verdict=verdict,
        r_cosym_phi=rc_phi,
        r_sasaki_phi=rs_phi,
        r_cosym_xi=rc_xi,
        r_sasaki_xi=rs_xi,
        points_tested=points,
        seed=seed,
    )


def canonical_frame(
    space: AmbientSpace, p: np.ndarray, tol: float = TOL_ALG
) -> list[tuple[np.ndarray, float]]:
    """Pseudo-orthonormal tangent frame {(E_i, phi1 E_i, phi2 E_i, phi3 E_i)},
    xi_1, xi_2, xi_3 — quadruples first, structure vectors last.

    Each E_i is picked greedily from tangentially-projected coordinate
    vectors, orthogonalized against everything accepted so far, choosing the
    candidate with the largest |self-inner| (ties: lowest coordinate index).
    The phi-images of a unit E orthogonal to the xi's are automatically unit
    and orthogonal, so only E itself needs pivoting.
    """
    st = space.structure
    if st is None:
        raise StructureUnavailable(f"{space.kind.name} carries no (phi, xi, eta) structure")
    g = space.metric
    p = space.require_on(p)
    xis = [(st.xi(a, p), st.eps[a - 1]) for a in (1, 2, 3)]

    accepted: list[tuple[np.ndarray, float]] = list(xis)
    quads: list[tuple[np.ndarray, float]] = []
    n_quads = (space.tangent_dim - 3) // 4

    def reduce(v: np.ndarray) -> np.ndarray:
        for u, s in accepted:
            v = v - s * inner(v, u, g) * u
        return v

    for _ in range(n_quads):
        best_val, best_vec = 0.0, None
        for k in range(space.dim):
            e = np.zeros(space.dim)
            e[k] = 1.0
            v = reduce(space.tangential(p, e))
            val = abs(inner(v, v, g))
            if val > best_val + tol:
                best_val, best_vec = val, v
        if best_vec is None or best_val < tol:
            raise FrameConstructionFailure(
                f"no non-null candidate for quadruple {len(quads) // 4 + 1}"
            )
        E = best_vec / np.sqrt(best_val)
        quad = [E] + [st.phi(a, p, E) for a in (1, 2, 3)]
        for v in quad:
            self_inner = inner(v, v, g)
            u = v / np.sqrt(abs(self_inner))
            pair = (u, float(np.sign(self_inner)))
            quads.append(pair)
            accepted.append(pair)

    return quads + xis
