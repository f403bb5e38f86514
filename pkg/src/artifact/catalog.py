"""Registry of concrete submanifolds with their expected geometry.

Each entry packages an immersion into one of the ambient model spaces
together with the classification and property flags it is expected to
exhibit; the verifier confirms every expectation numerically.  Entry ids
are stable strings used by the CLI and in reports.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Optional

import numpy as np

from .ambient import (
    AmbientSpace,
    make_flat_cosymplectic,
    make_para_hypercomplex,
    make_pseudosphere,
)
from .errors import PlaneNotInvariant, SubspaceNotTotallyReal
from .submanifold import Immersion, SubmanifoldKind, Tangency

__all__ = [
    "ExpectedProfile",
    "CatalogEntry",
    "clifford_torus",
    "flat_torus",
    "great_sphere",
    "real_sphere",
    "cosymplectic_leaf",
    "cosymplectic_tangent_block",
    "registry",
    "entry_ids",
    "get_entry",
]


@dataclass(frozen=True)
class ExpectedProfile:
    """Expected classification and property flags for a catalog entry."""

    kind: SubmanifoldKind
    xi_tangency: tuple[Tangency, Tangency, Tangency]
    dim_xi_t: int
    dim_xi_n: int
    totally_geodesic: bool
    minimal: bool
    flat: Optional[bool]  # None when the domain is 1-dimensional
    induced_structure: Optional[str]  # "sasakian" | "cosymplectic" | "para-hyper-kahler"


@dataclass(frozen=True, eq=False)
class CatalogEntry:
    id: str
    description: str
    immersion: Immersion
    expected: ExpectedProfile
    anchor: str  # citation tag carried into reports


def clifford_torus() -> CatalogEntry:
    """Product of two circles of radius 1/sqrt(2) inside the 7-dimensional
    positive unit pseudo-sphere; flat, minimal, anti-invariant, with exactly
    one structure field tangent (xi_3 = -X_1 - X_2)."""
    space = make_pseudosphere(1, 1)
    s = 1.0 / np.sqrt(2.0)

    def f(u: np.ndarray) -> np.ndarray:
        return np.array(
            [0.0, 0.0, 0.0, 0.0,
             s * np.cos(u[0]), s * np.sin(u[0]),
             s * np.cos(u[1]), s * np.sin(u[1])]
        )

    def jac(u: np.ndarray) -> np.ndarray:
        J = np.zeros((8, 2))
        J[4, 0] = -s * np.sin(u[0])
        J[5, 0] = s * np.cos(u[0])
        J[6, 1] = -s * np.sin(u[1])
        J[7, 1] = s * np.cos(u[1])
        return J

    imm = Immersion(
        domain_dim=2,
        ambient=space,
        f=f,
        jacobian=jac,
        box_lo=np.array([0.2, 0.2]),
        box_hi=np.array([1.2, 1.2]),
        name="clifford-torus",
    )
    expected = ExpectedProfile(
        kind=SubmanifoldKind.ANTI_INVARIANT,
        xi_tangency=(Tangency.NORMAL, Tangency.NORMAL, Tangency.TANGENT),
        dim_xi_t=1,
        dim_xi_n=2,
        totally_geodesic=False,
        minimal=True,
        flat=True,
        induced_structure=None,
    )
    return CatalogEntry(
        id="clifford-torus",
        description="S^1(1/sqrt 2) x S^1(1/sqrt 2) in the 7-dim positive pseudo-sphere",
        immersion=imm,
        expected=expected,
        anchor=(
            "§3.1.4 “The Clifford torus S^1(1/√2)×S^1(1/√2) ⊂ S^7_3”: "
            "“Therefore M is an anti-invariant submanifold of S^7_3” and "
            "“since ξ_3=-X_1-X_2, we deduce that ξ_3 is tangent to the submanifold”."
        ),
    )


def flat_torus(n: int) -> CatalogEntry:
    """The n-torus immersed in the (4n+3)-dim positive pseudo-sphere by n+1
    unit circles with angles x_1..x_n, x_{n+1} = -(x_1+...+x_n), scaled by
    1/sqrt(n+1); anti-invariant, normal to all structure fields, minimal,
    and intrinsically flat (constant induced metric (delta_ij+1)/(n+1))."""
    if n < 1:
        raise ValueError("flat_torus needs n >= 1")
    space = make_pseudosphere(n, 1)
    dim = 4 * n + 4
    offset = 2 * n + 2  # circles fill the positive-sign block
    s = 1.0 / np.sqrt(n + 1.0)

    def angles(u: np.ndarray) -> np.ndarray:
        return np.append(u, -np.sum(u))

    def f(u: np.ndarray) -> np.ndarray:
        x = np.zeros(dim)
        for k, t in enumerate(angles(u)):
            x[offset + 2 * k] = s * np.cos(t)
            x[offset + 2 * k + 1] = s * np.sin(t)
        return x

    def jac(u: np.ndarray) -> np.ndarray:
        th = angles(u)
        J = np.zeros((dim, n))
        for i in range(n):
            J[offset + 2 * i, i] = -s * np.sin(th[i])
            J[offset + 2 * i + 1, i] = s * np.cos(th[i])
            # the dependent (n+1)-th circle moves with every parameter
            J[offset + 2 * n, i] = s * np.sin(th[n])
            J[offset + 2 * n + 1, i] = -s * np.cos(th[n])
        return J

    imm = Immersion(
        domain_dim=n,
        ambient=space,
        f=f,
        jacobian=jac,
        box_lo=np.full(n, 0.2),
        box_hi=np.full(n, 1.2),
        name=f"flat-torus-n{n}",
    )
    expected = ExpectedProfile(
        kind=SubmanifoldKind.ANTI_INVARIANT,
        xi_tangency=(Tangency.NORMAL, Tangency.NORMAL, Tangency.NORMAL),
        dim_xi_t=0,
        dim_xi_n=3,
        totally_geodesic=False,
        minimal=True,
        flat=True if n >= 2 else None,
        induced_structure=None,
    )
    return CatalogEntry(
        id=f"flat-torus-n{n}",
        description=f"T^{n} minimally immersed in the (4n+3)-dim positive pseudo-sphere",
        immersion=imm,
        expected=expected,
        anchor=(
            "§4.1 “We can construct a minimal isometric immersion f: T^n → S^{4n+3}_{2n+1}”; "
            "“an anti-invariant flat minimal submanifold of S^{4n+3}_{2n+1}, "
            "normal to the structure vector fields”."
        ),
    )


def _support(v: np.ndarray, tol: float = 1e-12) -> set[int]:
    return set(np.nonzero(np.abs(v) > tol)[0].tolist())


def great_sphere(plane: tuple[int, int, int, int], n: int = 1) -> CatalogEntry:
    """Unit sphere of a J-invariant coordinate 4-plane inside the (4n+3)-dim
    positive pseudo-sphere, in generalized spherical coordinates; invariant,
    tangent to all structure fields, totally geodesic, induced structure
    Sasakian-type, constant sectional curvature +1.

    Raises PlaneNotInvariant when some J_alpha moves the plane off itself.
    """
    space = make_pseudosphere(n, 1)
    dim = space.dim
    plane = tuple(sorted(int(i) for i in plane))
    if len(plane) != 4 or len(set(plane)) != 4:
        raise ValueError("plane must be four distinct coordinate indices")
    if min(plane) < 0 or max(plane) >= dim:
        raise ValueError(f"plane indices out of range for dimension {dim}")
    pset = set(plane)
    for a in (1, 2, 3):
        J = space.triple.J(a)
        for i in plane:
            image = _support(J[:, i])
            if not image <= pset:
                raise PlaneNotInvariant(
                    f"J_{a} e_{i} has support {sorted(image)} outside plane {plane}"
                )
    signs = space.metric.signs
    neg = [i for i in plane if signs[i] < 0]
    pos = [i for i in plane if signs[i] > 0]
    if len(neg) != 2 or len(pos) != 2:
        raise PlaneNotInvariant(
            f"plane {plane} has in-plane signature ({len(neg)},{len(pos)}), need (2,2)"
        )
    i1, i2 = neg
    i3, i4 = pos

    def f(u: np.ndarray) -> np.ndarray:
        rho, a, b = u
        x = np.zeros(dim)
        x[i1] = np.sinh(rho) * np.cos(a)
        x[i2] = np.sinh(rho) * np.sin(a)
        x[i3] = np.cosh(rho) * np.cos(b)
        x[i4] = np.cosh(rho) * np.sin(b)
        return x

    def jac(u: np.ndarray) -> np.ndarray:
        rho, a, b = u
        J = np.zeros((dim, 3))
        J[i1, 0] = np.cosh(rho) * np.cos(a)
        J[i2, 0] = np.cosh(rho) * np.sin(a)
        J[i3, 0] = np.sinh(rho) * np.cos(b)
        J[i4, 0] = np.sinh(rho) * np.sin(b)
        J[i1, 1] = -np.sinh(rho) * np.sin(a)
        J[i2, 1] = np.sinh(rho) * np.cos(a)
        J[i3, 2] = -np.cosh(rho) * np.sin(b)
        J[i4, 2] = np.cosh(rho) * np.cos(b)
        return J

    if plane == (2, 3, 4, 5) and n == 1:
        entry_id = "great-s3-fiber"
        desc = "great S^3 of the J-invariant plane through the base point (fiber type)"
    elif plane == (0, 1, 6, 7) and n == 1:
        entry_id = "great-s3-alt"
        desc = "great S^3 of a second J-invariant coordinate plane"
    else:
        entry_id = "great-s3-" + "".join(str(i) for i in plane)
        desc = f"great S^3 of the J-invariant plane {plane}"

    imm = Immersion(
        domain_dim=3,
        ambient=space,
        f=f,
        jacobian=jac,
        box_lo=np.full(3, 0.2),
        box_hi=np.full(3, 1.2),
        name=entry_id,
    )
    expected = ExpectedProfile(
        kind=SubmanifoldKind.INVARIANT,
        xi_tangency=(Tangency.TANGENT, Tangency.TANGENT, Tangency.TANGENT),
        dim_xi_t=3,
        dim_xi_n=0,
        totally_geodesic=True,
        minimal=True,
        flat=False,
        induced_structure="sasakian",
    )
    return CatalogEntry(
        id=entry_id,
        description=desc,
        immersion=imm,
        expected=expected,
        anchor=(
            "§3.1.2 “M=S^{4m+3}_{2m+1} is an invariant totally geodesic submanifold of "
            "S^{4n+3}_{2n+1}, tangent to the structure vector fields”; "
            "§3.1.3 “S^3_1 is an invariant submanifold of S^{4n+3}_{2n+1}, "
            "tangent to the structure vector fields”."
        ),
    )


def real_sphere(n: int = 1, indices: tuple[int, int] = None) -> CatalogEntry:
    """Great circle of a totally real coordinate 2-plane (default span of the
    two even positive-block axes) inside the positive pseudo-sphere;
    anti-invariant, normal to all structure fields, totally geodesic.

    Raises SubspaceNotTotallyReal when some J_alpha maps the plane into
    itself in part.
    """
    space = make_pseudosphere(n, 1)
    dim = space.dim
    if indices is None:
        indices = (2 * n + 2, 2 * n + 4)
    indices = tuple(int(i) for i in indices)
    if len(indices) != 2 or len(set(indices)) != 2:
        raise ValueError("indices must be two distinct coordinate indices")
    if min(indices) < 0 or max(indices) >= dim:
        raise ValueError(f"indices out of range for dimension {dim}")
    iset = set(indices)
    for a in (1, 2, 3):
        J = space.triple.J(a)
        for i in indices:
            overlap = _support(J[:, i]) & iset
            if overlap:
                raise SubspaceNotTotallyReal(
                    f"J_{a} e_{i} meets the subspace at {sorted(overlap)}"
                )
    if any(space.metric.signs[i] < 0 for i in indices):
        raise ValueError("circle plane must lie in the positive-sign block")
    i1, i2 = indices

    def f(u: np.ndarray) -> np.ndarray:
        x = np.zeros(dim)
        x[i1] = np.cos(u[0])
        x[i2] = np.sin(u[0])
        return x

    def jac(u: np.ndarray) -> np.ndarray:
        J = np.zeros((dim, 1))
        J[i1, 0] = -np.sin(u[0])
        J[i2, 0] = np.cos(u[0])
        return J

    entry_id = "real-circle" if (n == 1 and indices == (4, 6)) else (
        "real-circle-" + "".join(str(i) for i in indices)
    )
    imm = Immersion(
        domain_dim=1,
        ambient=space,
        f=f,
        jacobian=jac,
        box_lo=np.array([0.2]),
        box_hi=np.array([1.2]),
        name=entry_id,
    )
    expected = ExpectedProfile(
        kind=SubmanifoldKind.ANTI_INVARIANT,
        xi_tangency=(Tangency.NORMAL, Tangency.NORMAL, Tangency.NORMAL),
        dim_xi_t=0,
        dim_xi_n=3,
        totally_geodesic=True,
        minimal=True,
        flat=None,
        induced_structure=None,
    )
    return CatalogEntry(
        id=entry_id,
        description="great circle of a totally real coordinate plane",
        immersion=imm,
        expected=expected,
        anchor=(
            "§3.1.2 “M=S^m_ν is an anti-invariant totally geodesic submanifold of "
            "S^{4n+3}_{2n+1}, normal to the structure vector fields”; "
            "Lemma 3.3 “If the structure vector fields are normal to M, "
            "then M is anti-invariant”."
        ),
    )


def cosymplectic_leaf(n: int = 1) -> CatalogEntry:
    """A leaf {t = const} x R^{4n} of the flat mixed 3-cosymplectic space:
    invariant, normal to all structure fields, an affine subspace (second
    fundamental form identically zero) whose induced triple of operators
    forms a parallel para-hypercomplex family."""
    if n < 1:
        raise ValueError("cosymplectic_leaf needs n >= 1")
    space = make_flat_cosymplectic(n, 1)
    dim = space.dim
    t0 = np.array([0.1, -0.2, 0.3])
    m = 4 * n

    basis = np.zeros((dim, m))
    for i in range(m):
        basis[3 + i, i] = 1.0
    base = np.zeros(dim)
    base[:3] = t0

    def f(u: np.ndarray) -> np.ndarray:
        return base + basis @ u

    def jac(u: np.ndarray) -> np.ndarray:
        return basis

    imm = Immersion(
        domain_dim=m,
        ambient=space,
        f=f,
        jacobian=jac,
        box_lo=np.full(m, -1.0),
        box_hi=np.full(m, 1.0),
        name="cosym-leaf",
    )
    expected = ExpectedProfile(
        kind=SubmanifoldKind.INVARIANT,
        xi_tangency=(Tangency.NORMAL, Tangency.NORMAL, Tangency.NORMAL),
        dim_xi_t=0,
        dim_xi_n=3,
        totally_geodesic=True,
        minimal=True,
        flat=True,
        induced_structure="para-hyper-kahler",
    )
    return CatalogEntry(
        id="cosym-leaf",
        description="leaf {t=const} x R^{4n} of the flat mixed 3-cosymplectic space",
        immersion=imm,
        expected=expected,
        anchor=(
            "§6 Prop “If M̄ is mixed 3-cosymplectic, then M is a para-hyper-Kähler "
            "manifold, totally geodesically immersed in M̄”; "
            "§6 Prop “Then M admits an almost para-hyperhermitian structure”."
        ),
    )


def cosymplectic_tangent_block(n: int = 2) -> CatalogEntry:
    """R^3_t times the middle J-invariant 4-dim block of the y-factor inside
    the flat mixed 3-cosymplectic space: invariant, tangent to all structure
    fields, totally geodesic, with integrable xi- and D-distributions and an
    induced structure that is again mixed 3-cosymplectic."""
    if n < 1:
        raise ValueError("cosymplectic_tangent_block needs n >= 1")
    space = make_flat_cosymplectic(n, 1)
    dim = space.dim
    # middle pairs (n, n+1) of the 2n coordinate pairs of R^{4n} are closed
    # under all three operators of the para-hypercomplex triple
    y_local = [2 * n - 2 + j for j in range(4)]
    cols = [0, 1, 2] + [3 + j for j in y_local]
    m = len(cols)

    basis = np.zeros((dim, m))
    for i, c in enumerate(cols):
        basis[c, i] = 1.0

    def f(u: np.ndarray) -> np.ndarray:
        return basis @ u

    def jac(u: np.ndarray) -> np.ndarray:
        return basis

    imm = Immersion(
        domain_dim=m,
        ambient=space,
        f=f,
        jacobian=jac,
        box_lo=np.full(m, -1.0),
        box_hi=np.full(m, 1.0),
        name="cosym-tangent-block",
    )
    expected = ExpectedProfile(
        kind=SubmanifoldKind.INVARIANT,
        xi_tangency=(Tangency.TANGENT, Tangency.TANGENT, Tangency.TANGENT),
        dim_xi_t=3,
        dim_xi_n=0,
        totally_geodesic=True,
        minimal=True,
        flat=True,
        induced_structure="cosymplectic",
    )
    return CatalogEntry(
        id="cosym-tangent-block",
        description="R^3_t x (J-invariant 4-dim y-block) in the flat mixed 3-cosymplectic space",
        immersion=imm,
        expected=expected,
        anchor=(
            "§5 Prop “If M̄ is mixed 3-cosymplectic, then the distribution D is "
            "integrable. Moreover, the leaves of the foliation are mixed 3-cosymplectic "
            "manifold, totally geodesically immersed in M̄”."
        ),
    )


@lru_cache(maxsize=1)
def registry() -> dict[str, CatalogEntry]:
    """All shipped catalog entries keyed by id (insertion order stable)."""
    entries = [
        clifford_torus(),
        flat_torus(2),
        great_sphere((2, 3, 4, 5), 1),
        great_sphere((0, 1, 6, 7), 1),
        real_sphere(1),
        cosymplectic_leaf(1),
        cosymplectic_tangent_block(2),
    ]
    return {e.id: e for e in entries}


def entry_ids() -> list[str]:
    return sorted(registry().keys())


def get_entry(entry_id: str) -> CatalogEntry:
    reg = registry()
    if entry_id not in reg:
        raise KeyError(f"unknown catalog id {entry_id!r}; known: {', '.join(sorted(reg))}")
    return reg[entry_id]
