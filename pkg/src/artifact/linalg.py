"""Signature-aware dense linear algebra on small vector spaces (dim <= 32).

All inner products are taken with respect to a diagonal metric of signs
``(s_1, ..., s_d)``, ``s_i = +-1``.  Because the metric may be indefinite,
self-inner products can vanish on nonzero (null) vectors; every routine here
is written to survive that, using absolute pivot thresholds (inputs are O(1)
throughout the engine).

Vectors are dense 1-d float64 arrays; subspace bases are stored as the rows
of a 2-d array.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .config import TOL_ALG
from .errors import DegenerateSubspace, DimensionMismatch

__all__ = [
    "SignatureMetric",
    "Subspace",
    "inner",
    "orthogonal_complement",
    "project",
    "signature_of",
    "pseudo_orthonormalize",
]


@dataclass(frozen=True)
class SignatureMetric:
    """Diagonal metric on R^dim with entries +-1.

    Attributes
    ----------
    dim : int
        Dimension of the coordinate space.
    signs : np.ndarray
        Length-``dim`` array with entries exactly +1.0 or -1.0.
    """

    dim: int
    signs: np.ndarray

    def __post_init__(self) -> None:
        signs = np.asarray(self.signs, dtype=float)
        if signs.shape != (self.dim,):
            raise DimensionMismatch(
                f"signs has shape {signs.shape}, expected ({self.dim},)"
            )
        if not np.all(np.abs(signs) == 1.0):
            raise ValueError("metric signs must all be exactly +1 or -1")
        object.__setattr__(self, "signs", signs)

    @classmethod
    def from_counts(cls, n_minus: int, n_plus: int) -> "SignatureMetric":
        """Metric with ``n_minus`` minus signs first, then ``n_plus`` plus signs."""
        signs = np.concatenate([-np.ones(n_minus), np.ones(n_plus)])
        return cls(dim=n_minus + n_plus, signs=signs)

    def matrix(self) -> np.ndarray:
        return np.diag(self.signs)


def inner(u: np.ndarray, v: np.ndarray, g: SignatureMetric) -> float:
    """Indefinite inner product sum_i signs[i] * u_i * v_i.

    Exactly symmetric in (u, v): the signs are exact +-1, so each term
    signs[i]*u_i*v_i rounds identically in either argument order and the
    summation order is the same.
    """
    u = np.asarray(u, dtype=float)
    v = np.asarray(v, dtype=float)
    if u.shape != (g.dim,) or v.shape != (g.dim,):
        raise DimensionMismatch(
            f"inner: shapes {u.shape}, {v.shape} vs metric dim {g.dim}"
        )
    return float(np.dot(g.signs * u, v))


@dataclass(frozen=True)
class Subspace:
    """A subspace of R^ambient_dim given by linearly independent basis rows.

    ``gram[i, j]`` caches the pairwise inner products of the basis vectors
    under the metric the subspace was built with.
    """

    ambient_dim: int
    basis: np.ndarray  # shape (k, ambient_dim), rows are basis vectors
    gram: np.ndarray  # shape (k, k)

    @classmethod
    def from_vectors(
        cls,
        vectors,
        g: SignatureMetric,
        tol: float = TOL_ALG,
        check_independent: bool = True,
    ) -> "Subspace":
        basis = np.asarray(vectors, dtype=float)
        if basis.size == 0:
            basis = np.zeros((0, g.dim))
        basis = np.atleast_2d(basis)
        if basis.shape[1] != g.dim:
            raise DimensionMismatch(
                f"basis vectors live in R^{basis.shape[1]}, metric dim is {g.dim}"
            )
        if check_independent and basis.shape[0] > 0:
            sv = np.linalg.svd(basis, compute_uv=False)
            if sv.size and sv.min() < tol:
                raise ValueError(
                    f"basis is linearly dependent (min singular value {sv.min():.3e})"
                )
        gram = basis @ (basis * g.signs).T
        # symmetrize to kill roundoff asymmetry from the matmul
        gram = 0.5 * (gram + gram.T)
        return cls(ambient_dim=g.dim, basis=basis, gram=gram)

    @property
    def k(self) -> int:
        return self.basis.shape[0]


def orthogonal_complement(
    W: Subspace, g: SignatureMetric, tol: float = TOL_ALG
) -> Subspace:
    """All vectors v with inner(v, w) = 0 for every basis vector w of W.

    Computed as the null space of the constraint matrix ``W.basis @ diag(signs)``
    via SVD with absolute singular-value threshold ``tol``.  Degenerate W is
    fine: the annihilator is still well defined (and then meets W).
    """
    if W.k == 0:
        raise ValueError("orthogonal_complement: empty subspace basis")
    constraints = W.basis * g.signs[None, :]
    _, sv, vt = np.linalg.svd(constraints)
    rank = int(np.sum(sv > tol))
    null_rows = vt[rank:]
    return Subspace.from_vectors(null_rows, g, check_independent=False)


def project(
    v: np.ndarray, W: Subspace, g: SignatureMetric, tol: float = TOL_ALG
) -> np.ndarray:
    """Metric projection of v onto span(W): the unique w in W with v - w ⟂ W.

    Solves ``gram @ c = (inner(v, basis_i))_i``; requires the Gram matrix to
    be invertible — projection onto a degenerate subspace is ill-posed.
    """
    v = np.asarray(v, dtype=float)
    if v.shape != (g.dim,):
        raise DimensionMismatch(f"project: vector shape {v.shape}, metric dim {g.dim}")
    if abs(np.linalg.det(W.gram)) < tol:
        raise DegenerateSubspace(
            f"projection onto degenerate subspace (|det gram| = "
            f"{abs(np.linalg.det(W.gram)):.3e} < {tol:g})"
        )
    rhs = W.basis @ (g.signs * v)
    coeffs = np.linalg.solve(W.gram, rhs)
    return coeffs @ W.basis


def signature_of(
    W: Subspace, g: SignatureMetric, tol: float = TOL_ALG
) -> tuple[int, int, int]:
    """(n_minus, n_plus, n_null) eigenvalue counts of W's Gram matrix.

    Eigenvalues with |lambda| < tol count as null; a nonzero null count means
    the induced metric on W is degenerate.
    """
    if W.k == 0:
        return (0, 0, 0)
    eigs = np.linalg.eigvalsh(W.gram)
    n_minus = int(np.sum(eigs < -tol))
    n_plus = int(np.sum(eigs > tol))
    return (n_minus, n_plus, W.k - n_minus - n_plus)


def _gs_reduce(v: np.ndarray, done: list[tuple[np.ndarray, float]], g: SignatureMetric) -> np.ndarray:
    """Subtract from v its components along already-accepted unit vectors."""
    for u, s in done:
        v = v - s * inner(v, u, g) * u
    return v


def pseudo_orthonormalize(
    vectors, g: SignatureMetric, tol: float = TOL_ALG
) -> list[tuple[np.ndarray, float]]:
    """Pseudo-orthonormal basis [(u_i, s_i)] of span(vectors):
    inner(u_i, u_j) = s_i δ_ij.  Accepts a Subspace or a vector sequence.

    Gram–Schmidt in input order with *lazy* pivoting:

    1. orthogonalize the current front vector against the accepted ones;
       accept it if its self-inner is non-null (|.| >= tol);
    2. if it is null, pivot: try every remaining vector and accept the one
       with the largest |self-inner| (ties: lowest index);
    3. if all remaining candidates are null, try pairwise combinations
       v_i + v_j and v_i - v_j (null vectors can sum to non-null ones, e.g.
       e1+e5 and e1-e5 under a (-,+) metric); after accepting a combination,
       drop one Euclidean-dependent vector from the working set.

    Raises DegenerateSubspace when even the combinations are all null.
    """
    rows = vectors.basis if isinstance(vectors, Subspace) else vectors
    work: list[np.ndarray] = [np.asarray(w, dtype=float).copy() for w in rows]
    done: list[tuple[np.ndarray, float]] = []

    def accept(v: np.ndarray) -> None:
        self_inner = inner(v, v, g)
        u = v / np.sqrt(abs(self_inner))
        done.append((u, float(np.sign(self_inner))))

    while work:
        reduced = [_gs_reduce(v, done, g) for v in work]
        self_inners = [abs(inner(r, r, g)) for r in reduced]

        # 1. classical Gram–Schmidt in input order
        if self_inners[0] >= tol:
            accept(reduced[0])
            work.pop(0)
            continue

        # 2. pivot to the remaining candidate with the largest |self-inner|
        best = int(np.argmax(self_inners))
        if self_inners[best] >= tol:
            accept(reduced[best])
            work.pop(best)
            continue

        # 3. all candidates null: pairwise combinations
        combo = None
        combo_inner = tol
        for i in range(len(reduced)):
            for j in range(i + 1, len(reduced)):
                for sign in (+1.0, -1.0):
                    cand = reduced[i] + sign * reduced[j]
                    val = abs(inner(cand, cand, g))
                    if val > combo_inner:
                        combo, combo_inner = cand, val
        if combo is None:
            raise DegenerateSubspace(
                "pseudo_orthonormalize: all candidates and pairwise combinations null"
            )
        accept(combo)
        # Drop one vector that became Euclidean-dependent after reduction,
        # keeping the working span's residual dimension consistent: the
        # Euclidean-smallest contributor goes, later index on ties.
        rereduced = [_gs_reduce(v, done, g) for v in work]
        norms = [float(np.linalg.norm(r)) for r in rereduced]
        min_norm = min(norms)
        drop = max(i for i, nv in enumerate(norms) if nv <= min_norm + 1e-12)
        work.pop(drop)

    return done
