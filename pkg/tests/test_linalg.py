"""Signature-aware linear algebra: frozen examples plus random-input properties."""

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from artifact import (
    DegenerateSubspace,
    DimensionMismatch,
    SignatureMetric,
    Subspace,
    inner,
    orthogonal_complement,
    project,
    pseudo_orthonormalize,
    signature_of,
)

LORENTZ = SignatureMetric.from_counts(1, 3)  # (-, +, +, +)
SPLIT6 = SignatureMetric.from_counts(3, 3)


def e(i: int, dim: int = 4) -> np.ndarray:
    v = np.zeros(dim)
    v[i] = 1.0
    return v


# ---------------------------------------------------------------------------
# SignatureMetric / inner
# ---------------------------------------------------------------------------


def test_from_counts_layout():
    g = SignatureMetric.from_counts(2, 3)
    assert g.dim == 5
    np.testing.assert_array_equal(g.signs, [-1, -1, 1, 1, 1])
    np.testing.assert_array_equal(g.matrix(), np.diag([-1.0, -1.0, 1.0, 1.0, 1.0]))


def test_metric_rejects_bad_signs():
    with pytest.raises(ValueError):
        SignatureMetric(dim=2, signs=np.array([1.0, 0.5]))
    with pytest.raises(DimensionMismatch):
        SignatureMetric(dim=3, signs=np.array([1.0, -1.0]))


def test_inner_frozen_values():
    assert inner(e(0), e(0), LORENTZ) == -1.0
    assert inner(e(1), e(1), LORENTZ) == 1.0
    assert inner(e(0), e(1), LORENTZ) == 0.0
    # null vector: e0 + e1 has self-inner -1 + 1 = 0
    assert inner(e(0) + e(1), e(0) + e(1), LORENTZ) == 0.0


def test_inner_shape_check():
    with pytest.raises(DimensionMismatch):
        inner(np.zeros(3), np.zeros(4), LORENTZ)


@given(st.integers(0, 2**31 - 1))
@settings(max_examples=50, deadline=None)
def test_inner_symmetric_and_bilinear(seed):
    rng = np.random.default_rng(seed)
    u, v, w = rng.normal(size=(3, 6))
    a = float(rng.normal())
    assert inner(u, v, SPLIT6) == inner(v, u, SPLIT6)  # exactly symmetric
    lhs = inner(a * u + w, v, SPLIT6)
    rhs = a * inner(u, v, SPLIT6) + inner(w, v, SPLIT6)
    assert abs(lhs - rhs) < 1e-12 * max(1.0, abs(lhs))


# ---------------------------------------------------------------------------
# Subspace / complement / projection
# ---------------------------------------------------------------------------


def test_subspace_rejects_dependent_basis():
    with pytest.raises(ValueError):
        Subspace.from_vectors([e(0), e(1), e(0) + e(1)], LORENTZ)


def test_subspace_gram_frozen():
    W = Subspace.from_vectors([e(0), e(1)], LORENTZ)
    assert W.k == 2
    np.testing.assert_array_equal(W.gram, np.diag([-1.0, 1.0]))


def test_orthogonal_complement_frozen():
    W = Subspace.from_vectors([e(0), e(1)], LORENTZ)
    C = orthogonal_complement(W, LORENTZ)
    assert C.k == 2
    for c in C.basis:
        for w in W.basis:
            assert abs(inner(c, w, LORENTZ)) < 1e-12


def test_complement_of_null_line_contains_it():
    # the annihilator of a null line contains the line itself
    null = e(0) + e(1)
    W = Subspace.from_vectors([null], LORENTZ)
    C = orthogonal_complement(W, LORENTZ)
    assert C.k == 3
    resid = null - np.linalg.lstsq(C.basis.T, null, rcond=None)[0] @ C.basis
    assert np.max(np.abs(resid)) < 1e-12


def test_project_frozen():
    W = Subspace.from_vectors([e(0), e(1)], LORENTZ)
    v = np.array([2.0, -3.0, 5.0, 7.0])
    w = project(v, W, LORENTZ)
    np.testing.assert_allclose(w, [2.0, -3.0, 0.0, 0.0], atol=1e-12)


def test_project_onto_degenerate_raises():
    W = Subspace.from_vectors([e(0) + e(1)], LORENTZ)  # null line, gram = [[0]]
    with pytest.raises(DegenerateSubspace):
        project(e(2), W, LORENTZ)


@given(st.integers(0, 2**31 - 1))
@settings(max_examples=50, deadline=None)
def test_projection_properties(seed):
    rng = np.random.default_rng(seed)
    basis = rng.normal(size=(3, 6))
    W = Subspace.from_vectors(basis, SPLIT6)
    if abs(np.linalg.det(W.gram)) < 1e-6:
        return  # nearly degenerate draw: projection is ill-posed by contract
    v = rng.normal(size=6)
    w = project(v, W, SPLIT6)
    # defining property: v - w is orthogonal to W
    for b in W.basis:
        assert abs(inner(v - w, b, SPLIT6)) < 1e-8
    # idempotence
    np.testing.assert_allclose(project(w, W, SPLIT6), w, atol=1e-8)


# ---------------------------------------------------------------------------
# signature_of
# ---------------------------------------------------------------------------


def test_signature_frozen():
    assert signature_of(Subspace.from_vectors([e(0), e(1)], LORENTZ), LORENTZ) == (1, 1, 0)
    assert signature_of(Subspace.from_vectors([e(1), e(2), e(3)], LORENTZ), LORENTZ) == (0, 3, 0)
    null = Subspace.from_vectors([e(0) + e(1)], LORENTZ)
    assert signature_of(null, LORENTZ) == (0, 0, 1)


# ---------------------------------------------------------------------------
# pseudo_orthonormalize
# ---------------------------------------------------------------------------


def _check_pseudo_orthonormal(pairs, g):
    for i, (u, si) in enumerate(pairs):
        assert si in (-1.0, 1.0)
        for j, (v, sj) in enumerate(pairs):
            want = si if i == j else 0.0
            assert abs(inner(u, v, g) - want) < 1e-9


def test_pseudo_orthonormalize_frozen():
    pairs = pseudo_orthonormalize([e(0), e(0) + 2 * e(2)], LORENTZ)
    assert [s for _, s in pairs] == [-1.0, 1.0]
    _check_pseudo_orthonormal(pairs, LORENTZ)


def test_pseudo_orthonormalize_null_pair_combination():
    # both inputs are null, but their sum/difference are not: the routine
    # must fall back to pairwise combinations instead of failing
    v1 = e(0) + e(1)
    v2 = e(0) - e(1)
    pairs = pseudo_orthonormalize([v1, v2], LORENTZ)
    assert len(pairs) == 2
    assert sorted(s for _, s in pairs) == [-1.0, 1.0]
    _check_pseudo_orthonormal(pairs, LORENTZ)


def test_pseudo_orthonormalize_degenerate_raises():
    # a single null vector spans a degenerate line: no basis exists
    with pytest.raises(DegenerateSubspace):
        pseudo_orthonormalize([e(0) + e(1)], LORENTZ)


@given(st.integers(0, 2**31 - 1), st.integers(1, 6))
@settings(max_examples=50, deadline=None)
def test_pseudo_orthonormalize_random_spans(seed, k):
    rng = np.random.default_rng(seed)
    vectors = rng.normal(size=(k, 6))
    sv = np.linalg.svd(vectors, compute_uv=False)
    if sv.min() < 1e-3:
        return  # keep the span numerically honest
    try:
        pairs = pseudo_orthonormalize(vectors, SPLIT6)
    except DegenerateSubspace:
        return  # a genuinely degenerate random span is a legal outcome
    assert len(pairs) == k
    _check_pseudo_orthonormal(pairs, SPLIT6)
    # the output spans the same subspace
    stacked = np.array([u for u, _ in pairs])
    aug = np.vstack([vectors, stacked])
    assert np.linalg.matrix_rank(aug, tol=1e-6) == k
