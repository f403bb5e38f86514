"""Ambient spaces: flat para-hyperhermitian R^{4n+4}, pseudo-spheres carrying
mixed 3-Sasakian structures, and flat mixed 3-cosymplectic R^{4n+3}.

The operator triple (J1, J2, J3) on R^{4n+4} (2n+2 minus signs, then 2n+2
plus signs) acts by

* J1: pair-reversal with a sign on the first slot of each pair,
* J2: full coordinate reversal,
* J3: rotation within each coordinate pair,

and satisfies J1^2 = J2^2 = Id, J3^2 = -Id, J1J2 = -J2J1 = J3, with
g(J1X, J1Y) = g(J2X, J2Y) = -g(J3X, J3Y) = -g(X, Y).

On a pseudo-sphere {g(x,x) = c}, c = +-1, the structure tensors are

    xi_a  = s_a J_a x,
    phi_a = t_a * (tangential projection) o J_a,
    eta_a(X) = eps_a g(X, xi_a),          eps_a = tau_a * c,

with per-level sign choices (s, t) fixed so that *all* structure identities
and the Sasakian conditions hold simultaneously (verified at construction;
see ``structures.check_axioms``):

    level +1: s = (-1, -1, -1), t = (-1, -1, +1)
    level -1: s = (-1, -1, +1), t = (+1, +1, +1)

The flat mixed 3-cosymplectic space is R^3_t x R^{4n}_y with xi_a = d/dt_a,
phi_a acting as J_a of the (n-1)-parameter triple on the y-block and by the
structure identities on the t-block; all coefficients are constant, so the
structure is parallel.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum, auto
from functools import lru_cache
from typing import Callable, Optional

import numpy as np

from .config import FD_STEP1, FD_STEP2, TOL_ALG
from .errors import (
    DimensionMismatch,
    PointOffManifold,
    StructureAxiomFailure,
    StructureUnavailable,
)
from .linalg import (
    SignatureMetric,
    Subspace,
    inner,
    orthogonal_complement,
    pseudo_orthonormalize,
)

__all__ = [
    "SpaceKind",
    "ParaHypercomplexTriple",
    "MixedThreeStructure",
    "AmbientSpace",
    "make_para_hypercomplex",
    "make_flat_para_hyperhermitian",
    "make_pseudosphere",
    "make_flat_cosymplectic",
    "covariant_derivative",
    "ambient_riemann",
    "ambient_riemann_fd",
    "ricci_and_einstein",
]

TAU = (-1.0, -1.0, 1.0)
EVEN_PERMS = ((1, 2, 3), (2, 3, 1), (3, 1, 2))


class SpaceKind(Enum):
    FLAT_PARA_HYPERHERMITIAN = auto()
    PSEUDO_SPHERE = auto()
    FLAT_MIXED_COSYMPLECTIC = auto()


@dataclass(frozen=True)
class ParaHypercomplexTriple:
    """The (J1, J2, J3) operators on R^{4n+4} together with their metric."""

    n: int
    J1: np.ndarray
    J2: np.ndarray
    J3: np.ndarray
    metric: SignatureMetric

    def J(self, alpha: int) -> np.ndarray:
        return (self.J1, self.J2, self.J3)[alpha - 1]


@dataclass(frozen=True)
class MixedThreeStructure:
    """Pointwise evaluators for (phi_a, xi_a, eta_a), a = 1, 2, 3.

    ``tau`` is always (-1, -1, +1); ``eps`` holds the computed self-inners
    g(xi_a, xi_a), each exactly +-1.
    """

    tau: tuple[float, float, float]
    eps: tuple[float, float, float]
    phi: Callable[[int, np.ndarray, np.ndarray], np.ndarray]
    xi: Callable[[int, np.ndarray], np.ndarray]
    eta: Callable[[int, np.ndarray, np.ndarray], float]


@dataclass(frozen=True)
class AmbientSpace:
    """One of the three ambient space families, with enough data to evaluate
    the metric, the structure tensors, and covariant derivatives."""

    kind: SpaceKind
    dim: int
    metric: SignatureMetric
    structure: Optional[MixedThreeStructure]
    level: Optional[int] = None  # pseudo-spheres only: g(x,x) = level
    triple: Optional[ParaHypercomplexTriple] = None
    n: int = 1

    # -- point/tangent helpers -------------------------------------------

    @property
    def tangent_dim(self) -> int:
        return self.dim - 1 if self.kind is SpaceKind.PSEUDO_SPHERE else self.dim

    def contains(self, p: np.ndarray, tol: float = TOL_ALG) -> bool:
        p = np.asarray(p, dtype=float)
        if p.shape != (self.dim,):
            return False
        if self.kind is SpaceKind.PSEUDO_SPHERE:
            return abs(inner(p, p, self.metric) - self.level) < tol
        return True

    def require_on(self, p: np.ndarray, tol: float = TOL_ALG) -> np.ndarray:
        p = np.asarray(p, dtype=float)
        if p.shape != (self.dim,):
            raise DimensionMismatch(
                f"point has shape {p.shape}, space dim is {self.dim}"
            )
        if self.kind is SpaceKind.PSEUDO_SPHERE:
            defect = abs(inner(p, p, self.metric) - self.level)
            if defect >= tol:
                raise PointOffManifold(
                    f"|g(p,p) - ({self.level})| = {defect:.3e} >= {tol:g}"
                )
        return p

    def tangential(self, p: np.ndarray, v: np.ndarray) -> np.ndarray:
        """Project v onto the tangent space at p.

        For pseudo-spheres this divides by the actual g(p,p) rather than the
        nominal level, so nested finite-difference evaluations at slightly
        off-sphere points remain well-posed.
        """
        if self.kind is not SpaceKind.PSEUDO_SPHERE:
            return np.asarray(v, dtype=float)
        norm2 = inner(p, p, self.metric)
        return v - (inner(v, p, self.metric) / norm2) * p

    def base_point(self) -> np.ndarray:
        """A canonical on-manifold point (used as the default by the CLI)."""
        if self.kind is SpaceKind.PSEUDO_SPHERE:
            idx = 0 if self.level == -1 else self.metric.dim // 2
            e = np.zeros(self.dim)
            e[idx] = 1.0
            return e
        return np.zeros(self.dim)

    def random_point(self, rng: np.random.Generator) -> np.ndarray:
        if self.kind is not SpaceKind.PSEUDO_SPHERE:
            return rng.uniform(-1.0, 1.0, self.dim)
        for _ in range(1000):
            x = rng.uniform(-1.0, 1.0, self.dim)
            q = inner(x, x, self.metric)
            if self.level * q > 0.1:
                return x / np.sqrt(abs(q))
        raise RuntimeError("failed to sample a point on the pseudo-sphere")

    def random_tangent(self, rng: np.random.Generator, p: np.ndarray) -> np.ndarray:
        return self.tangential(p, rng.uniform(-1.0, 1.0, self.dim))


# ---------------------------------------------------------------------------
# constructors
# ---------------------------------------------------------------------------


@lru_cache(maxsize=None)
def make_para_hypercomplex(n: int) -> ParaHypercomplexTriple:
    """The standard operator triple on R^{4n+4} as dense matrices."""
    if n < 0:
        raise ValueError("n must be >= 0")
    d = 4 * n + 4
    npairs = 2 * n + 2
    J1 = np.zeros((d, d))
    J2 = np.zeros((d, d))
    J3 = np.zeros((d, d))
    for k in range(1, npairs + 1):  # 1-based pair index
        # J1: pair k maps to pair (npairs + 1 - k), minus on the first slot
        J1[2 * k - 2, 2 * (npairs + 1 - k) - 2] = -1.0
        J1[2 * k - 1, 2 * (npairs + 1 - k) - 1] = 1.0
        # J3: rotation within pair k
        J3[2 * k - 2, 2 * k - 1] = -1.0
        J3[2 * k - 1, 2 * k - 2] = 1.0
    for i in range(d):
        J2[i, d - 1 - i] = 1.0
    metric = SignatureMetric.from_counts(npairs, npairs)
    return ParaHypercomplexTriple(n=n, J1=J1, J2=J2, J3=J3, metric=metric)


def _verify_triple(triple: ParaHypercomplexTriple, tol: float = TOL_ALG) -> None:
    """Check the defining operator identities entrywise; raise on failure."""
    J1, J2, J3 = triple.J1, triple.J2, triple.J3
    eye = np.eye(J1.shape[0])
    G = triple.metric.matrix()
    checks = [
        ("J1^2 = Id", J1 @ J1 - eye),
        ("J2^2 = Id", J2 @ J2 - eye),
        ("J3^2 = -Id", J3 @ J3 + eye),
        ("J1J2 = J3", J1 @ J2 - J3),
        ("J2J1 = -J3", J2 @ J1 + J3),
        ("g(J1.,J1.) = -g", J1.T @ G @ J1 + G),
        ("g(J2.,J2.) = -g", J2.T @ G @ J2 + G),
        ("g(J3.,J3.) = +g", J3.T @ G @ J3 - G),
    ]
    for label, resid in checks:
        r = float(np.max(np.abs(resid)))
        if r >= tol:
            raise StructureAxiomFailure(label, r)


@lru_cache(maxsize=None)
def make_flat_para_hyperhermitian(n: int) -> AmbientSpace:
    """Flat R^{4n+4} with the operator triple and its adapted metric.

    Carries no (phi, xi, eta) structure — it is the ambient for the spheres
    and the model for the cosymplectic y-block.
    """
    triple = make_para_hypercomplex(n)
    _verify_triple(triple)
    return AmbientSpace(
        kind=SpaceKind.FLAT_PARA_HYPERHERMITIAN,
        dim=4 * n + 4,
        metric=triple.metric,
        structure=None,
        triple=triple,
        n=n,
    )


# Per-level sign recipes (s_a multiplies J_a x for xi_a; t_a scales phi_a).
# These are the unique choices, given xi_1 = -J1 x and xi_2 = -J2 x, for which
# the cross-structure identities AND the Sasakian conditions all hold; see the
# module docstring.
_SPHERE_SIGNS = {
    +1: ((-1.0, -1.0, -1.0), (-1.0, -1.0, 1.0)),
    -1: ((-1.0, -1.0, 1.0), (1.0, 1.0, 1.0)),
}


@lru_cache(maxsize=None)
def make_pseudosphere(n: int, level: int = 1) -> AmbientSpace:
    """Pseudo-sphere {g(x,x) = level} in R^{4n+4} with its induced structure.

    The construction is verified at 100 seeded points before the space is
    returned; a sign-convention bug raises StructureAxiomFailure with the
    first failing identity.
    """
    if level not in (+1, -1):
        raise ValueError("level must be +1 or -1")
    triple = make_para_hypercomplex(n)
    _verify_triple(triple)
    g = triple.metric
    s, t = _SPHERE_SIGNS[level]
    Js = (triple.J1, triple.J2, triple.J3)

    def xi(alpha: int, p: np.ndarray) -> np.ndarray:
        return s[alpha - 1] * (Js[alpha - 1] @ p)

    eps = tuple(TAU[a] * float(level) for a in range(3))

    def eta(alpha: int, p: np.ndarray, X: np.ndarray) -> float:
        return eps[alpha - 1] * inner(X, xi(alpha, p), g)

    def phi(alpha: int, p: np.ndarray, X: np.ndarray) -> np.ndarray:
        w = Js[alpha - 1] @ X
        norm2 = inner(p, p, g)
        return t[alpha - 1] * (w - (inner(w, p, g) / norm2) * p)

    structure = MixedThreeStructure(tau=TAU, eps=eps, phi=phi, xi=xi, eta=eta)
    space = AmbientSpace(
        kind=SpaceKind.PSEUDO_SPHERE,
        dim=4 * n + 4,
        metric=g,
        structure=structure,
        level=level,
        triple=triple,
        n=n,
    )
    # the computed eps must match the stored one at the base point
    p0 = space.base_point()
    for a in (1, 2, 3):
        measured = inner(xi(a, p0), xi(a, p0), g)
        if abs(measured - eps[a - 1]) >= TOL_ALG:
            raise StructureAxiomFailure(f"eps_{a} = g(xi_{a}, xi_{a})", abs(measured - eps[a - 1]))
    _validate_axioms(space)
    return space


# t-block actions of phi_1, phi_2, phi_3 on (xi_1, xi_2, xi_3), read off the
# structure identity phi_a(xi_b) = tau_b xi_c / phi_b(xi_a) = -tau_a xi_c:
_T_BLOCKS = (
    np.array([[0.0, 0.0, 0.0], [0.0, 0.0, -1.0], [0.0, -1.0, 0.0]]),
    np.array([[0.0, 0.0, 1.0], [0.0, 0.0, 0.0], [1.0, 0.0, 0.0]]),
    np.array([[0.0, 1.0, 0.0], [-1.0, 0.0, 0.0], [0.0, 0.0, 0.0]]),
)


@lru_cache(maxsize=None)
def make_flat_cosymplectic(n: int, eps1: int = 1) -> AmbientSpace:
    """Flat R^3_t x R^{4n}_y with a constant-coefficient mixed 3-structure.

    Metric signs: (eps1, eps1, -eps1) on the t-block, then the adapted signs
    of the (n-1)-parameter triple on the y-block.  xi_a = d/dt_a.  Being
    constant, the structure is parallel: covariant derivatives of phi and xi
    vanish identically.
    """
    if n < 0:
        raise ValueError("n must be >= 0")
    if eps1 not in (+1, -1):
        raise ValueError("eps1 must be +1 or -1")
    d = 4 * n + 3
    t_signs = np.array([eps1, eps1, -eps1], dtype=float)
    if n > 0:
        ytriple = make_para_hypercomplex(n - 1)
        _verify_triple(ytriple)
        y_signs = ytriple.metric.signs
        yJs = (ytriple.J1, ytriple.J2, ytriple.J3)
    else:
        y_signs = np.zeros(0)
        yJs = None
    metric = SignatureMetric(dim=d, signs=np.concatenate([t_signs, y_signs]))

    phis = []
    for a in range(3):
        M = np.zeros((d, d))
        M[:3, :3] = _T_BLOCKS[a]
        if n > 0:
            M[3:, 3:] = yJs[a]
        phis.append(M)
    phis = tuple(phis)

    eps = (float(eps1), float(eps1), float(-eps1))
    xis = tuple(np.eye(d)[a] for a in range(3))

    def xi(alpha: int, p: np.ndarray) -> np.ndarray:
        return xis[alpha - 1].copy()

    def eta(alpha: int, p: np.ndarray, X: np.ndarray) -> float:
        return eps[alpha - 1] * inner(X, xis[alpha - 1], metric)

    def phi(alpha: int, p: np.ndarray, X: np.ndarray) -> np.ndarray:
        return phis[alpha - 1] @ X

    structure = MixedThreeStructure(tau=TAU, eps=eps, phi=phi, xi=xi, eta=eta)
    space = AmbientSpace(
        kind=SpaceKind.FLAT_MIXED_COSYMPLECTIC,
        dim=d,
        metric=metric,
        structure=structure,
        n=n,
    )
    _validate_axioms(space)
    return space


def _validate_axioms(space: AmbientSpace) -> None:
    """Run the full pointwise axiom sweep; raise on the worst violation."""
    from .structures import check_axioms  # deferred: structures imports us

    res = check_axioms(space, points=100, seed=0)
    worst_label, worst = res.worst()
    if worst >= TOL_ALG:
        raise StructureAxiomFailure(worst_label, worst)


# ---------------------------------------------------------------------------
# connection and curvature
# ---------------------------------------------------------------------------


def _flat_derivative(
    p: np.ndarray,
    X: np.ndarray,
    field: Callable[[np.ndarray], np.ndarray],
    h: float,
) -> np.ndarray:
    return (field(p + h * X) - field(p - h * X)) / (2.0 * h)


def _covariant(
    space: AmbientSpace,
    p: np.ndarray,
    X: np.ndarray,
    field: Callable[[np.ndarray], np.ndarray],
    h: float,
) -> np.ndarray:
    """Covariant derivative without the base-point validation (internal)."""
    d = _flat_derivative(p, X, field, h)
    return space.tangential(p, d)


def covariant_derivative(
    space: AmbientSpace,
    p: np.ndarray,
    X: np.ndarray,
    Yfield: Callable[[np.ndarray], np.ndarray],
    h: float = FD_STEP1,
    tol: float = TOL_ALG,
) -> np.ndarray:
    """Levi-Civita derivative (nabla_X Y)(p) of an ambient vector field.

    Flat spaces: central finite difference along X.  Pseudo-spheres: the flat
    derivative followed by tangential projection at p.
    """
    p = space.require_on(p, tol)
    return _covariant(space, p, np.asarray(X, dtype=float), Yfield, h)


def _constant_extension(space: AmbientSpace, v: np.ndarray):
    """Extend a tangent vector to a field: pointwise tangential projection of
    the constant vector (reduces to the constant field on flat spaces)."""
    v = np.asarray(v, dtype=float)
    if space.kind is not SpaceKind.PSEUDO_SPHERE:
        return lambda q: v
    return lambda q: space.tangential(q, v)


def ambient_riemann(
    space: AmbientSpace,
    p: np.ndarray,
    X: np.ndarray,
    Y: np.ndarray,
    Z: np.ndarray,
    tol: float = TOL_ALG,
) -> np.ndarray:
    """Closed-form curvature R(X,Y)Z (oracle).

    Zero on the flat spaces; on a pseudo-sphere of level c the space-form
    formula c * (g(Y,Z) X - g(X,Z) Y).
    """
    p = space.require_on(p, tol)
    if space.kind is not SpaceKind.PSEUDO_SPHERE:
        return np.zeros(space.dim)
    g = space.metric
    return float(space.level) * (inner(Y, Z, g) * X - inner(X, Z, g) * Y)


def ambient_riemann_fd(
    space: AmbientSpace,
    p: np.ndarray,
    X: np.ndarray,
    Y: np.ndarray,
    Z: np.ndarray,
    h1: float = FD_STEP1,
    h2: float = FD_STEP2,
    tol: float = TOL_ALG,
) -> np.ndarray:
    """R(X,Y)Z by nested finite differences of the covariant derivative.

    X, Y, Z are extended as tangentially-projected constants; the bracket of
    the extension fields is included, so the result is the honest curvature
    tensor value regardless of the extensions.  Outer derivatives use h2,
    inner first derivatives h1.
    """
    p = space.require_on(p, tol)
    X = np.asarray(X, dtype=float)
    Y = np.asarray(Y, dtype=float)
    Xf = _constant_extension(space, X)
    Yf = _constant_extension(space, Y)
    Zf = _constant_extension(space, Z)

    def nabla_Y_Z(q: np.ndarray) -> np.ndarray:
        return _covariant(space, q, Yf(q), Zf, h1)

    def nabla_X_Z(q: np.ndarray) -> np.ndarray:
        return _covariant(space, q, Xf(q), Zf, h1)

    term1 = _covariant(space, p, X, nabla_Y_Z, h2)
    term2 = _covariant(space, p, Y, nabla_X_Z, h2)
    bracket = _flat_derivative(p, X, Yf, h1) - _flat_derivative(p, Y, Xf, h1)
    term3 = _covariant(space, p, space.tangential(p, bracket), Zf, h1)
    return term1 - term2 - term3


def ricci_and_einstein(
    space: AmbientSpace,
    p: np.ndarray,
    h1: float = FD_STEP1,
    h2: float = FD_STEP2,
    tol: float = TOL_ALG,
) -> tuple[np.ndarray, float, float]:
    """(Ricci matrix on a pseudo-orthonormal tangent frame, lambda, residual).

    Ric(X, Y) = sum_i s_i g(R(u_i, X) Y, u_i) over a pseudo-orthonormal
    tangent frame; lambda is the frame-traced scalar curvature divided by the
    manifold dimension; residual = max |Ric - lambda g| on the frame.  Uses
    the finite-difference curvature so the Einstein property is genuinely
    measured rather than assumed from the oracle.
    """
    if space.kind is not SpaceKind.PSEUDO_SPHERE:
        raise StructureUnavailable("ricci_and_einstein needs a curved (sphere) ambient")
    p = space.require_on(p, tol)
    g = space.metric
    radial = Subspace.from_vectors([p], g)
    tangent = orthogonal_complement(radial, g)
    frame = pseudo_orthonormalize(tangent, g)
    m = len(frame)  # = 4n+3
    us = [u for u, _ in frame]
    signs = np.array([s for _, s in frame])

    ric = np.zeros((m, m))
    for j in range(m):
        for k in range(j, m):
            total = 0.0
            for i in range(m):
                if i == j:
                    continue  # R(u_j, u_j) = 0
                val = ambient_riemann_fd(space, p, us[i], us[j], us[k], h1, h2, tol)
                total += signs[i] * inner(val, us[i], g)
            ric[j, k] = total
            ric[k, j] = total
    lam = float(np.sum(signs * np.diag(ric)) / m)
    residual = float(np.max(np.abs(ric - lam * np.diag(signs))))
    return ric, lam, residual
