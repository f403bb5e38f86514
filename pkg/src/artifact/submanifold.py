"""Submanifold calculus for immersions into the ambient spaces.

Conventions:

* Immersions map a parameter box in R^m to the ambient manifold; coordinate
  tangent fields X_i = df/du_i are columns of the Jacobian.
* Coordinate fields commute, so curvature formulas along parameter lines
  carry no bracket terms.
* Normal fields are differentiated by exact formulas (structure fields,
  phi-images of coordinate fields, pointwise projections of constants) —
  never by interpolating per-point bases.
* All decomposition residuals use the max-norm over ambient components.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from typing import Callable, Optional

import numpy as np

from .ambient import AmbientSpace, SpaceKind
from .config import FD_STEP1, FD_STEP2, TOL_ALG, TOL_D1, TOL_D2, derive_rng
from .errors import (
    DegenerateInducedMetric,
    DegeneratePlane,
    NotNormal,
    NullDirection,
    RankDeficientJacobian,
    StructureUnavailable,
)
from .linalg import Subspace, inner, orthogonal_complement, project

__all__ = [
    "Immersion",
    "PointFrame",
    "SubmanifoldKind",
    "Tangency",
    "Classification",
    "IntrinsicCurvature",
    "ProbeMode",
    "frame_at",
    "tangential_part",
    "normal_part",
    "second_fundamental_form",
    "shape_operator",
    "weingarten_shape",
    "normal_connection",
    "normal_curvature",
    "ricci_equation_discrepancy",
    "gauss_reconstruction_residual",
    "intrinsic_curvature",
    "sectional_curvature",
    "mean_curvature",
    "umbilic_residual",
    "classify",
    "induced_parallelism_residual",
    "distribution_bracket_probe",
]


def _minf(v) -> float:
    return float(np.max(np.abs(v))) if np.size(v) else 0.0


def _unit(m: int, i: int) -> np.ndarray:
    e = np.zeros(m)
    e[i] = 1.0
    return e


@dataclass(frozen=True, eq=False)
class Immersion:
    """A parameterized submanifold f: box in R^m -> ambient manifold."""

    domain_dim: int
    ambient: AmbientSpace
    f: Callable[[np.ndarray], np.ndarray]
    jacobian: Optional[Callable[[np.ndarray], np.ndarray]] = None  # (dim, m)
    box_lo: np.ndarray = field(default=None)
    box_hi: np.ndarray = field(default=None)
    name: str = ""

    def __post_init__(self):
        lo = self.box_lo if self.box_lo is not None else np.zeros(self.domain_dim)
        hi = self.box_hi if self.box_hi is not None else np.ones(self.domain_dim)
        object.__setattr__(self, "box_lo", np.asarray(lo, dtype=float))
        object.__setattr__(self, "box_hi", np.asarray(hi, dtype=float))

    def point(self, u: np.ndarray, tol: float = TOL_ALG) -> np.ndarray:
        u = np.asarray(u, dtype=float)
        return self.ambient.require_on(self.f(u), tol)

    def jacobian_at(self, u: np.ndarray, h: float = FD_STEP1) -> np.ndarray:
        u = np.asarray(u, dtype=float)
        if self.jacobian is not None:
            return np.asarray(self.jacobian(u), dtype=float)
        cols = []
        for i in range(self.domain_dim):
            e = _unit(self.domain_dim, i)
            cols.append((self.f(u + h * e) - self.f(u - h * e)) / (2.0 * h))
        return np.stack(cols, axis=1)

    def sample_params(self, rng: np.random.Generator, count: int) -> np.ndarray:
        return rng.uniform(self.box_lo, self.box_hi, (count, self.domain_dim))


@dataclass(frozen=True, eq=False)
class PointFrame:
    """Tangent/normal data of an immersion at one parameter point."""

    u: np.ndarray
    p: np.ndarray
    tangent: Subspace  # rows X_1..X_m
    normal: Subspace  # rows N_1..N_k spanning T_pM^perp inside the ambient tangent
    induced_gram: np.ndarray
    induced_gram_inv: np.ndarray
    normal_gram: np.ndarray

    @property
    def X(self) -> np.ndarray:
        return self.tangent.basis

    @property
    def m(self) -> int:
        return self.tangent.k

    @property
    def k(self) -> int:
        return self.normal.k


def frame_at(imm: Immersion, u, tol: float = TOL_ALG) -> PointFrame:
    """Coordinate tangent frame, induced metric, and a normal basis at u.

    Raises RankDeficientJacobian / DegenerateInducedMetric / PointOffManifold
    as appropriate; the normal basis is computed inside the ambient tangent
    space (for spheres: also orthogonal to the position vector).
    """
    u = np.asarray(u, dtype=float)
    p = imm.point(u, tol)
    g = imm.ambient.metric
    J = imm.jacobian_at(u)
    sv = np.linalg.svd(J, compute_uv=False)
    if sv.min() < tol:
        raise RankDeficientJacobian(
            f"Jacobian rank < {imm.domain_dim} at u={u} (min sv {sv.min():.3e})"
        )
    tangent = Subspace.from_vectors(J.T, g, check_independent=False)
    det = np.linalg.det(tangent.gram)
    if abs(det) < tol:
        raise DegenerateInducedMetric(f"|det g_ij| = {abs(det):.3e} at u={u}")
    if imm.ambient.kind is SpaceKind.PSEUDO_SPHERE:
        spanned = Subspace.from_vectors(
            np.vstack([J.T, p[None, :]]), g, check_independent=False
        )
    else:
        spanned = tangent
    normal = orthogonal_complement(spanned, g, tol)
    return PointFrame(
        u=u,
        p=p,
        tangent=tangent,
        normal=normal,
        induced_gram=tangent.gram,
        induced_gram_inv=np.linalg.inv(tangent.gram),
        normal_gram=normal.gram,
    )


def tangential_part(frame: PointFrame, g, v: np.ndarray) -> np.ndarray:
    return project(v, frame.tangent, g)


def normal_part(frame: PointFrame, g, v: np.ndarray) -> np.ndarray:
    """v minus its tangential part (v must lie in the ambient tangent space)."""
    return v - tangential_part(frame, g, v)


def _tangent_coefficients(frame: PointFrame, g, v: np.ndarray) -> np.ndarray:
    """Coefficients c with sum_i c_i X_i = tangential part of v."""
    rhs = frame.X @ (g.signs * v)
    return frame.induced_gram_inv @ rhs


def _covariant_along(
    imm: Immersion,
    u: np.ndarray,
    a: np.ndarray,
    vfield: Callable[[np.ndarray], np.ndarray],
    h: float,
) -> np.ndarray:
    """Ambient covariant derivative of a field along M in the parameter
    direction a (flat central difference along the curve, then tangential
    projection onto the ambient tangent space at f(u))."""
    p = imm.f(u)
    d = (vfield(u + h * a) - vfield(u - h * a)) / (2.0 * h)
    return imm.ambient.tangential(p, d)


# ---------------------------------------------------------------------------
# second fundamental form and shape operators
# ---------------------------------------------------------------------------


def second_fundamental_form(
    imm: Immersion,
    u,
    h2: float = FD_STEP2,
    frame: Optional[PointFrame] = None,
) -> np.ndarray:
    """h[i, j] = normal part of nabla_{X_i} X_j, shape (m, m, ambient dim).

    The ambient derivative of a coordinate field is the parameter derivative
    of the Jacobian column (projected tangentially on spheres), evaluated by
    central differences with the outer step h2.
    """
    frame = frame or frame_at(imm, u)
    g = imm.ambient.metric
    m = frame.m
    h = np.zeros((m, m, imm.ambient.dim))
    for i in range(m):
        e = _unit(m, i)
        dJ = (imm.jacobian_at(frame.u + h2 * e) - imm.jacobian_at(frame.u - h2 * e)) / (
            2.0 * h2
        )
        for j in range(m):
            v = imm.ambient.tangential(frame.p, dJ[:, j])
            h[i, j] = normal_part(frame, g, v)
    return h


def shape_operator(
    imm: Immersion,
    u,
    N: np.ndarray,
    frame: Optional[PointFrame] = None,
    h_tensor: Optional[np.ndarray] = None,
) -> np.ndarray:
    """A_N on the coordinate basis, from g(A_N X_i, X_k) = g(h(X_i, X_k), N).

    Returns the matrix A with (A_N X_k) = sum_i A[i, k] X_i.
    """
    frame = frame or frame_at(imm, u)
    if h_tensor is None:
        h_tensor = second_fundamental_form(imm, u, frame=frame)
    g = imm.ambient.metric
    M = np.array(
        [[inner(h_tensor[i, k], N, g) for k in range(frame.m)] for i in range(frame.m)]
    )
    return frame.induced_gram_inv @ M


def weingarten_shape(
    imm: Immersion,
    u,
    nfield: Callable[[np.ndarray], np.ndarray],
    h1: float = FD_STEP1,
    frame: Optional[PointFrame] = None,
) -> np.ndarray:
    """A_N from the derivative of a normal field: A_N X_k = -tang(nabla_{X_k} N).

    Cross-check route for shape_operator when the normal vector extends to an
    explicit field along M (nfield maps the parameter point to the vector).
    """
    frame = frame or frame_at(imm, u)
    g = imm.ambient.metric
    cols = []
    for k in range(frame.m):
        dN = _covariant_along(imm, frame.u, _unit(frame.m, k), nfield, h1)
        cols.append(-_tangent_coefficients(frame, g, dN))
    return np.stack(cols, axis=1)


# ---------------------------------------------------------------------------
# normal connection and curvatures
# ---------------------------------------------------------------------------


def normal_connection(
    imm: Immersion,
    u,
    direction,
    nfield: Callable[[np.ndarray], np.ndarray],
    h1: float = FD_STEP1,
    frame: Optional[PointFrame] = None,
    tol_d1: float = TOL_D1,
) -> np.ndarray:
    """Normal part of nabla_X N for a normal field N along M.

    ``direction`` is either a parameter-velocity vector (length m) or an
    ambient tangent vector (length ambient dim, converted via the induced
    metric).  Raises NotNormal when nfield(u) has a tangential part.
    """
    u = np.asarray(u, dtype=float)
    frame = frame or frame_at(imm, u)
    g = imm.ambient.metric
    N0 = nfield(u)
    tang0 = tangential_part(frame, g, N0)
    if _minf(tang0) >= tol_d1:
        raise NotNormal(
            f"field has tangential part of size {_minf(tang0):.3e} at u={u}"
        )
    direction = np.asarray(direction, dtype=float)
    if direction.shape == (frame.m,):
        a = direction
    elif direction.shape == (imm.ambient.dim,):
        a = _tangent_coefficients(frame, g, direction)
    else:
        raise ValueError(f"direction has shape {direction.shape}")
    dN = _covariant_along(imm, u, a, nfield, h1)
    return normal_part(frame, g, dN)


def normal_curvature(
    imm: Immersion,
    u,
    i: int,
    j: int,
    nfield: Callable[[np.ndarray], np.ndarray],
    h1: float = FD_STEP1,
    h2: float = FD_STEP2,
) -> np.ndarray:
    """R_perp(X_i, X_j) N by nested differences of the normal connection.

    Coordinate directions commute, so no bracket term appears.
    """
    u = np.asarray(u, dtype=float)
    frame = frame_at(imm, u)
    g = imm.ambient.metric

    def conn(direction_idx: int) -> Callable[[np.ndarray], np.ndarray]:
        def G(uu: np.ndarray) -> np.ndarray:
            return normal_connection(
                imm, uu, _unit(frame.m, direction_idx), nfield, h1
            )

        return G

    def second(outer_idx: int, G: Callable[[np.ndarray], np.ndarray]) -> np.ndarray:
        e = _unit(frame.m, outer_idx)
        d = (G(u + h2 * e) - G(u - h2 * e)) / (2.0 * h2)
        d = imm.ambient.tangential(frame.p, d)
        return normal_part(frame, g, d)

    return second(i, conn(j)) - second(j, conn(i))


def ricci_equation_discrepancy(
    imm: Immersion,
    u,
    i: int,
    j: int,
    nfields: list[Callable[[np.ndarray], np.ndarray]],
    h1: float = FD_STEP1,
    h2: float = FD_STEP2,
) -> float:
    """Max |g(R_perp(X_i,X_j)N_a, N_b) - g([A_{N_a}, A_{N_b}] X_i, X_j)|.

    The right side is the oracle: the commutator of shape operators plus the
    closed-form ambient curvature term; the left side is the
    finite-difference normal curvature.  Agreement validates both paths end
    to end.
    """
    from .ambient import ambient_riemann

    frame = frame_at(imm, u)
    g = imm.ambient.metric
    h_tensor = second_fundamental_form(imm, u, frame=frame)
    A = [
        shape_operator(imm, u, nf(frame.u), frame=frame, h_tensor=h_tensor)
        for nf in nfields
    ]
    worst = 0.0
    for a, nfa in enumerate(nfields):
        Rn = normal_curvature(imm, u, i, j, nfa, h1, h2)
        bar = ambient_riemann(
            imm.ambient, frame.p, frame.X[i], frame.X[j], nfa(frame.u)
        )
        for b, nfb in enumerate(nfields):
            lhs = inner(Rn, nfb(frame.u), g)
            comm = A[a] @ A[b] - A[b] @ A[a]
            rhs = float(comm[:, i] @ frame.induced_gram[:, j]) + inner(
                bar, nfb(frame.u), g
            )
            worst = max(worst, abs(lhs - rhs))
    return worst


def gauss_reconstruction_residual(
    imm: Immersion,
    u,
    h2: float = FD_STEP2,
) -> float:
    """Residual of splitting nabla_{X_i} X_j into Christoffel combination
    plus second fundamental form: the two sides of the Gauss formula."""
    u = np.asarray(u, dtype=float)
    frame = frame_at(imm, u)
    m = frame.m
    metric_at = _metric_fn(imm)
    gamma = _christoffel(metric_at, u, m, h2)
    h_tensor = second_fundamental_form(imm, u, h2=h2, frame=frame)
    worst = 0.0
    for i in range(m):
        e = _unit(m, i)
        dJ = (imm.jacobian_at(u + h2 * e) - imm.jacobian_at(u - h2 * e)) / (2.0 * h2)
        for j in range(m):
            total = imm.ambient.tangential(frame.p, dJ[:, j])
            tangential = gamma[:, i, j] @ frame.X
            worst = max(worst, _minf(total - tangential - h_tensor[i, j]))
    return worst


# ---------------------------------------------------------------------------
# intrinsic curvature
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class IntrinsicCurvature:
    """Coordinate curvature of the induced metric.

    riemann[i, j, k, l] is component l of R(d_i, d_j) d_k with the convention
    R(X, Y) Z = nabla_X nabla_Y Z - nabla_Y nabla_X Z - nabla_{[X,Y]} Z.
    """

    riemann: np.ndarray
    sectional: dict
    is_flat: bool
    max_abs: float


def _metric_fn(imm: Immersion):
    signs = imm.ambient.metric.signs

    def metric_at(uu: np.ndarray) -> np.ndarray:
        J = imm.jacobian_at(uu)
        return (J.T * signs) @ J

    return metric_at


def _christoffel(metric_at, uu: np.ndarray, m: int, h2: float) -> np.ndarray:
    g0 = metric_at(uu)
    ginv = np.linalg.inv(g0)
    dg = np.zeros((m, m, m))  # dg[l] = d g / d u_l
    for l in range(m):
        e = _unit(m, l)
        dg[l] = (metric_at(uu + h2 * e) - metric_at(uu - h2 * e)) / (2.0 * h2)
    gamma = np.zeros((m, m, m))  # gamma[k, i, j] = Gamma^k_ij
    for k in range(m):
        for i in range(m):
            for j in range(m):
                total = 0.0
                for l in range(m):
                    total += ginv[k, l] * (dg[i][j, l] + dg[j][i, l] - dg[l][i, j])
                gamma[k, i, j] = 0.5 * total
    return gamma


def intrinsic_curvature(
    imm: Immersion,
    u,
    h2: float = FD_STEP2,
    tol_d2: float = TOL_D2,
    tol: float = TOL_ALG,
) -> IntrinsicCurvature:
    """Riemann tensor and sectional curvatures of the induced metric.

    Christoffel symbols come from central differences of g_ij(u) with step
    h2; their derivatives from a second (nested) difference.  Sectional
    curvatures are reported for coordinate planes with non-degenerate Gram.
    """
    u = np.asarray(u, dtype=float)
    m = imm.domain_dim
    if m < 2:
        raise ValueError("intrinsic curvature needs domain dimension >= 2")
    frame = frame_at(imm, u)  # validates rank/degeneracy up front
    metric_at = _metric_fn(imm)
    g0 = metric_at(u)
    gamma0 = _christoffel(metric_at, u, m, h2)
    dgamma = np.zeros((m, m, m, m))  # dgamma[l] = d Gamma / d u_l
    for l in range(m):
        e = _unit(m, l)
        dgamma[l] = (
            _christoffel(metric_at, u + h2 * e, m, h2)
            - _christoffel(metric_at, u - h2 * e, m, h2)
        ) / (2.0 * h2)

    riem = np.zeros((m, m, m, m))
    for i in range(m):
        for j in range(m):
            for k in range(m):
                for l in range(m):
                    val = dgamma[i][l, j, k] - dgamma[j][l, i, k]
                    for mm in range(m):
                        val += (
                            gamma0[l, i, mm] * gamma0[mm, j, k]
                            - gamma0[l, j, mm] * gamma0[mm, i, k]
                        )
                    riem[i, j, k, l] = val

    sectional = {}
    for i in range(m):
        for j in range(i + 1, m):
            denom = g0[i, i] * g0[j, j] - g0[i, j] ** 2
            if abs(denom) < tol:
                continue
            num = float(riem[i, j, j] @ g0[:, i])
            sectional[(i, j)] = num / denom
    max_abs = _minf(riem)
    return IntrinsicCurvature(
        riemann=riem,
        sectional=sectional,
        is_flat=bool(max_abs < tol_d2),
        max_abs=max_abs,
    )


def sectional_curvature(imm: Immersion, u, i: int, j: int, h2: float = FD_STEP2) -> float:
    """K of the coordinate plane (i, j); raises DegeneratePlane when singular."""
    curv = intrinsic_curvature(imm, u, h2)
    if (i, j) in curv.sectional:
        return curv.sectional[(i, j)]
    if (j, i) in curv.sectional:
        return curv.sectional[(j, i)]
    raise DegeneratePlane(f"coordinate plane ({i},{j}) has degenerate Gram at u={u}")


# ---------------------------------------------------------------------------
# mean curvature
# ---------------------------------------------------------------------------


def mean_curvature(
    imm: Immersion,
    u,
    frame: Optional[PointFrame] = None,
    h_tensor: Optional[np.ndarray] = None,
) -> np.ndarray:
    """H = (1/m) g^{ij} h_ij (ambient vector, normal to M)."""
    frame = frame or frame_at(imm, u)
    if h_tensor is None:
        h_tensor = second_fundamental_form(imm, u, frame=frame)
    ginv = frame.induced_gram_inv
    H = np.tensordot(ginv, h_tensor, axes=([0, 1], [0, 1])) / frame.m
    return H


def umbilic_residual(
    imm: Immersion,
    u,
    frame: Optional[PointFrame] = None,
    h_tensor: Optional[np.ndarray] = None,
) -> float:
    """max_ij || h_ij - g_ij H ||  (zero iff totally umbilical at u)."""
    frame = frame or frame_at(imm, u)
    if h_tensor is None:
        h_tensor = second_fundamental_form(imm, u, frame=frame)
    H = mean_curvature(imm, u, frame=frame, h_tensor=h_tensor)
    worst = 0.0
    for i in range(frame.m):
        for j in range(frame.m):
            worst = max(worst, _minf(h_tensor[i, j] - frame.induced_gram[i, j] * H))
    return worst


# ---------------------------------------------------------------------------
# classification
# ---------------------------------------------------------------------------


class SubmanifoldKind(Enum):
    INVARIANT = "Invariant"
    ANTI_INVARIANT = "AntiInvariant"
    NEITHER = "Neither"


class Tangency(Enum):
    TANGENT = "Tangent"
    NORMAL = "Normal"
    OBLIQUE = "Oblique"


@dataclass(frozen=True)
class Classification:
    """Invariance class of the submanifold plus the xi decomposition."""

    kind: SubmanifoldKind
    xi_tangency: tuple[Tangency, Tangency, Tangency]
    dim_xi_t: int
    dim_xi_n: int
    residuals: dict


def classify(
    imm: Immersion,
    u,
    tol: float = TOL_ALG,
    rank_tol: float = 1e-6,
    frame: Optional[PointFrame] = None,
) -> Classification:
    """Decide Invariant/AntiInvariant/Neither and the xi_a tangencies.

    Invariant residual: largest normal component of any phi_a X_i;
    anti-invariant residual: largest tangential component.  Each xi_a splits
    as xi^t + xi^n via metric projections onto T_pM and T_pM^perp; the
    split must reassemble to xi within tol.
    """
    st = imm.ambient.structure
    if st is None:
        raise StructureUnavailable("ambient space carries no structure to classify against")
    frame = frame or frame_at(imm, u)
    g = imm.ambient.metric
    inv_res = anti_res = 0.0
    for a in (1, 2, 3):
        for i in range(frame.m):
            w = st.phi(a, frame.p, frame.X[i])
            wt = tangential_part(frame, g, w)
            inv_res = max(inv_res, _minf(w - wt))
            anti_res = max(anti_res, _minf(wt))
    if inv_res < tol:
        kind = SubmanifoldKind.INVARIANT
    elif anti_res < tol:
        kind = SubmanifoldKind.ANTI_INVARIANT
    else:
        kind = SubmanifoldKind.NEITHER

    residuals = {"invariant": inv_res, "anti_invariant": anti_res}
    tangencies = []
    xts, xns = [], []
    decomp = 0.0
    for a in (1, 2, 3):
        xi = st.xi(a, frame.p)
        xt = tangential_part(frame, g, xi)
        xn = project(xi, frame.normal, g) if frame.k else np.zeros_like(xi)
        decomp = max(decomp, _minf(xi - xt - xn))
        xts.append(xt)
        xns.append(xn)
        normal_mag = _minf(xi - xt)
        tangent_mag = _minf(xt)
        residuals[f"xi{a}_tangential_part"] = tangent_mag
        residuals[f"xi{a}_normal_part"] = normal_mag
        if normal_mag < tol:
            tangencies.append(Tangency.TANGENT)
        elif tangent_mag < tol:
            tangencies.append(Tangency.NORMAL)
        else:
            tangencies.append(Tangency.OBLIQUE)
    residuals["xi_decomposition"] = decomp

    def rank_of(vectors) -> int:
        stacked = np.array(vectors)
        sv = np.linalg.svd(stacked, compute_uv=False)
        return int(np.sum(sv > rank_tol))

    return Classification(
        kind=kind,
        xi_tangency=tuple(tangencies),
        dim_xi_t=rank_of(xts),
        dim_xi_n=rank_of(xns),
        residuals=residuals,
    )


# ---------------------------------------------------------------------------
# induced structure parallelism
# ---------------------------------------------------------------------------


def induced_parallelism_residual(
    imm: Immersion,
    u,
    target: str,
    h1: float = FD_STEP1,
    tol: float = TOL_D1,
) -> float:
    """Residual of the induced-structure parallelism condition on M.

    target='sasakian':    || nabla_{X_i}(phi X_j) - phi(nabla_{X_i} X_j)
                              - tau_a [g_ij xi_a - eps_a eta_a(X_j) X_i] ||
    target='cosymplectic': same without the right-hand side.

    Both use the induced connection (tangential part of the ambient one) and
    require the structure vector fields to be tangent, i.e. the submanifold
    must actually inherit the structure.
    """
    st = imm.ambient.structure
    if st is None:
        raise StructureUnavailable("ambient space carries no structure")
    if target not in ("sasakian", "cosymplectic"):
        raise ValueError(f"unknown target {target!r}")
    u = np.asarray(u, dtype=float)
    frame = frame_at(imm, u)
    g = imm.ambient.metric
    for a in (1, 2, 3):
        xi = st.xi(a, frame.p)
        if _minf(xi - tangential_part(frame, g, xi)) >= tol:
            raise StructureUnavailable(
                f"xi_{a} is not tangent; the submanifold carries no induced structure"
            )

    worst = 0.0
    for a in (1, 2, 3):
        ta, ea = st.tau[a - 1], st.eps[a - 1]
        for j in range(frame.m):

            def Xj_field(uu, j=j):
                return imm.jacobian_at(uu)[:, j]

            def phiXj_field(uu, a=a, j=j):
                return st.phi(a, imm.f(uu), imm.jacobian_at(uu)[:, j])

            for i in range(frame.m):
                e = _unit(frame.m, i)
                d_phiXj = tangential_part(
                    frame, g, _covariant_along(imm, u, e, phiXj_field, h1)
                )
                d_Xj = tangential_part(
                    frame, g, _covariant_along(imm, u, e, Xj_field, h1)
                )
                lhs = d_phiXj - st.phi(a, frame.p, d_Xj)
                if target == "sasakian":
                    rhs = ta * (
                        frame.induced_gram[i, j] * st.xi(a, frame.p)
                        - ea * st.eta(a, frame.p, frame.X[j]) * frame.X[i]
                    )
                else:
                    rhs = np.zeros(imm.ambient.dim)
                worst = max(worst, _minf(lhs - rhs))
    return worst


# ---------------------------------------------------------------------------
# distribution bracket probes
# ---------------------------------------------------------------------------


class ProbeMode(Enum):
    XI_XI = "XiXi"
    D_PHI = "DPhi"
    D_D = "DD"


def _flat_bracket(pfield, qfield, p: np.ndarray, h1: float) -> np.ndarray:
    """[P, Q](p) = D_P Q - D_Q P for ambient fields (flat derivatives)."""
    P0, Q0 = pfield(p), qfield(p)
    DPQ = (qfield(p + h1 * P0) - qfield(p - h1 * P0)) / (2.0 * h1)
    DQP = (pfield(p + h1 * Q0) - pfield(p - h1 * Q0)) / (2.0 * h1)
    return DPQ - DQP


def _dbar_project(space: AmbientSpace, q: np.ndarray, w: np.ndarray) -> np.ndarray:
    """Project a constant vector onto D-bar at q: ambient tangent and
    orthogonal to every xi_a."""
    st = space.structure
    v = space.tangential(q, w)
    for a in (1, 2, 3):
        xi = st.xi(a, q)
        v = v - st.eps[a - 1] * inner(v, xi, space.metric) * xi
    return v


def distribution_bracket_probe(
    imm: Immersion,
    u,
    mode: ProbeMode | str,
    seed: int = 42,
    h1: float = FD_STEP1,
    samples: int = 5,
    tol_d1: float = TOL_D1,
) -> float:
    """Lie-bracket integrability probes for the structure distributions.

    XiXi: max over pairs a<b and sampled D-bar directions N of
          |g([xi_a, xi_b], N)| — small iff the xi-span is involutive modulo
          itself.  Requires the xi's tangent to M.
    DPhi: picks a non-null X in D-bar along M and returns
          max_a |g([X, phi_a X], xi_a) - 2 eps_a tau_a g(X, X)| — the bracket
          escapes D by exactly that amount on Sasakian ambients, exhibiting
          non-integrability.  Raises NullDirection when 100 samples yield
          only null candidates.
    DD:   max_a |g([X, Y], xi_a)| for X, Y sampled from D on M (tangent and
          orthogonal to the xi's) — small iff D is integrable.  Requires the
          xi's tangent to M.
    """
    mode = ProbeMode(mode)
    st = imm.ambient.structure
    if st is None:
        raise StructureUnavailable("ambient space carries no structure")
    u = np.asarray(u, dtype=float)
    frame = frame_at(imm, u)
    g = imm.ambient.metric
    p = frame.p
    rng = derive_rng(seed, f"bracket_probe/{mode.value}/{imm.name}")

    def require_xi_tangent():
        for a in (1, 2, 3):
            xi = st.xi(a, p)
            if _minf(xi - tangential_part(frame, g, xi)) >= tol_d1:
                raise StructureUnavailable(
                    f"xi_{a} is not tangent to the submanifold; probe undefined"
                )

    if mode is ProbeMode.XI_XI:
        require_xi_tangent()
        worst = 0.0
        for a in (1, 2, 3):
            for b in range(a + 1, 4):
                br = _flat_bracket(
                    lambda q, a=a: st.xi(a, q), lambda q, b=b: st.xi(b, q), p, h1
                )
                for _ in range(samples):
                    N = _dbar_project(imm.ambient, p, rng.uniform(-1, 1, imm.ambient.dim))
                    norm = np.linalg.norm(N)
                    if norm < 1e-8:
                        continue
                    worst = max(worst, abs(inner(br, N / norm, g)))
        return worst

    if mode is ProbeMode.D_PHI:
        X = None
        for _ in range(100):
            w = rng.uniform(-1.0, 1.0, imm.ambient.dim)
            cand = _dbar_project(imm.ambient, p, w)
            if abs(inner(cand, cand, g)) >= 1e-2:
                X = cand
                break
        if X is None:
            raise NullDirection("no non-null D-bar direction in 100 samples")

        def Xf(q, w=w):
            return _dbar_project(imm.ambient, q, w)

        worst = 0.0
        for a in (1, 2, 3):
            def phiXf(q, a=a):
                return st.phi(a, q, Xf(q))

            br = _flat_bracket(Xf, phiXf, p, h1)
            expected = 2.0 * st.eps[a - 1] * st.tau[a - 1] * inner(X, X, g)
            worst = max(worst, abs(inner(br, st.xi(a, p), g) - expected))
        return worst

    # mode DD
    require_xi_tangent()

    def d_project(uu: np.ndarray, w: np.ndarray) -> np.ndarray:
        fr = frame_at(imm, uu) if not np.array_equal(uu, u) else frame
        v = tangential_part(fr, g, w)
        for a in (1, 2, 3):
            xi = st.xi(a, fr.p)
            v = v - st.eps[a - 1] * inner(v, xi, g) * xi
        return v

    X = Y = None
    for _ in range(100):
        w1 = rng.uniform(-1.0, 1.0, imm.ambient.dim)
        w2 = rng.uniform(-1.0, 1.0, imm.ambient.dim)
        Xc, Yc = d_project(u, w1), d_project(u, w2)
        if np.linalg.norm(Xc) > 1e-6 and np.linalg.norm(Yc) > 1e-6:
            X, Y = Xc, Yc
            break
    if X is None:
        raise NullDirection("no usable D directions in 100 samples")

    aX = _tangent_coefficients(frame, g, X)
    aY = _tangent_coefficients(frame, g, Y)

    def Xfield(uu, w1=w1):
        return d_project(uu, w1)

    def Yfield(uu, w2=w2):
        return d_project(uu, w2)

    DXY = (Yfield(u + h1 * aX) - Yfield(u - h1 * aX)) / (2.0 * h1)
    DYX = (Xfield(u + h1 * aY) - Xfield(u - h1 * aY)) / (2.0 * h1)
    br = DXY - DYX
    return max(abs(inner(br, st.xi(a, p), g)) for a in (1, 2, 3))
