"""Ambient model spaces: operator triples, structures, connections, curvature."""

import dataclasses

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from artifact import (
    PointOffManifold,
    SpaceKind,
    ambient_riemann,
    ambient_riemann_fd,
    check_axioms,
    covariant_derivative,
    inner,
    make_flat_cosymplectic,
    make_flat_para_hyperhermitian,
    make_para_hypercomplex,
    make_pseudosphere,
    ricci_and_einstein,
)
from artifact.config import derive_rng


def e(i: int, dim: int = 8) -> np.ndarray:
    v = np.zeros(dim)
    v[i] = 1.0
    return v


# ---------------------------------------------------------------------------
# operator triple
# ---------------------------------------------------------------------------


def test_triple_operator_relations():
    tr = make_para_hypercomplex(1)
    J1, J2, J3 = tr.J(1), tr.J(2), tr.J(3)
    eye = np.eye(8)
    np.testing.assert_array_equal(J1 @ J1, eye)
    np.testing.assert_array_equal(J2 @ J2, eye)
    np.testing.assert_array_equal(J3 @ J3, -eye)
    np.testing.assert_array_equal(J1 @ J2, J3)
    np.testing.assert_array_equal(J2 @ J1, -J3)
    np.testing.assert_array_equal(J2 @ J3, -J1)
    np.testing.assert_array_equal(J3 @ J2, J1)
    np.testing.assert_array_equal(J3 @ J1, -J2)
    np.testing.assert_array_equal(J1 @ J3, J2)


def test_triple_metric_compatibility():
    tr = make_para_hypercomplex(1)
    G = tr.metric.matrix()
    # J1, J2 are anti-isometries, J3 an isometry
    np.testing.assert_allclose(tr.J1.T @ G @ tr.J1, -G, atol=1e-14)
    np.testing.assert_allclose(tr.J2.T @ G @ tr.J2, -G, atol=1e-14)
    np.testing.assert_allclose(tr.J3.T @ G @ tr.J3, G, atol=1e-14)


@pytest.mark.parametrize("n", [0, 1, 2])
def test_triple_dimensions(n):
    tr = make_para_hypercomplex(n)
    d = 4 * n + 4
    assert tr.J1.shape == (d, d)
    assert tuple(np.unique(tr.metric.signs)) == (-1.0, 1.0)
    assert int(np.sum(tr.metric.signs < 0)) == 2 * n + 2


# ---------------------------------------------------------------------------
# space constructors
# ---------------------------------------------------------------------------


def test_flat_para_hyperhermitian_shape():
    ph = make_flat_para_hyperhermitian(1)
    assert ph.kind is SpaceKind.FLAT_PARA_HYPERHERMITIAN
    assert ph.dim == 8 and ph.tangent_dim == 8
    assert ph.structure is None  # no Reeb-type fields on the linear model
    np.testing.assert_array_equal(ph.metric.signs, [-1, -1, -1, -1, 1, 1, 1, 1])


def test_pseudosphere_shape_and_levels():
    sp = make_pseudosphere(1, level=1)
    assert sp.dim == 8 and sp.tangent_dim == 7
    assert sp.level == 1
    assert inner(sp.base_point(), sp.base_point(), sp.metric) == 1.0
    sn = make_pseudosphere(1, level=-1)
    assert inner(sn.base_point(), sn.base_point(), sn.metric) == -1.0


def test_structure_signs_by_level():
    assert make_pseudosphere(1, 1).structure.eps == (-1.0, -1.0, 1.0)
    assert make_pseudosphere(1, -1).structure.eps == (1.0, 1.0, -1.0)
    assert make_pseudosphere(1, 1).structure.tau == (-1.0, -1.0, 1.0)


def test_flat_cosymplectic_shape():
    co = make_flat_cosymplectic(1)
    assert co.dim == 7 and co.tangent_dim == 7
    np.testing.assert_array_equal(co.metric.signs, [1, 1, -1, -1, -1, 1, 1])
    assert co.structure.eps == (1.0, 1.0, -1.0)
    assert co.structure.tau == (-1.0, -1.0, 1.0)


def test_structure_field_values_frozen():
    # at the base point e5 of the level +1 sphere (n=1)
    sp = make_pseudosphere(1, 1)
    st_ = sp.structure
    p = e(5)
    np.testing.assert_allclose(st_.xi(1, p), -e(3), atol=1e-15)
    np.testing.assert_allclose(st_.xi(2, p), -e(2), atol=1e-15)
    np.testing.assert_allclose(st_.xi(3, p), e(4), atol=1e-15)
    np.testing.assert_allclose(st_.phi(1, p, e(7)), -e(1), atol=1e-15)
    np.testing.assert_allclose(st_.phi(2, p, e(7)), -e(0), atol=1e-15)
    np.testing.assert_allclose(st_.phi(3, p, e(7)), -e(6), atol=1e-15)
    # eta_a(X) = eps_a * g(X, xi_a); the Reeb fields are eps-unit
    for a in (1, 2, 3):
        assert st_.eta(a, p, st_.xi(a, p)) == pytest.approx(1.0, abs=1e-12)
        assert inner(st_.xi(a, p), st_.xi(a, p), sp.metric) == st_.eps[a - 1]


def test_contains_and_require_on():
    sp = make_pseudosphere(1, 1)
    assert sp.contains(e(5))
    assert not sp.contains(2.0 * e(5))
    with pytest.raises(PointOffManifold):
        sp.require_on(2.0 * e(5))


@given(st.integers(0, 2**31 - 1))
@settings(max_examples=30, deadline=None)
def test_random_point_and_tangent(seed):
    sp = make_pseudosphere(1, 1)
    rng = np.random.default_rng(seed)
    p = sp.random_point(rng)
    assert abs(inner(p, p, sp.metric) - 1.0) < 1e-9
    X = sp.random_tangent(rng, p)
    assert abs(inner(X, p, sp.metric)) < 1e-9


def test_tangential_projection():
    sp = make_pseudosphere(1, 1)
    rng = derive_rng(11, "test-tangential")
    p = sp.random_point(rng)
    v = rng.normal(size=8)
    t = sp.tangential(p, v)
    assert abs(inner(t, p, sp.metric)) < 1e-12
    np.testing.assert_allclose(sp.tangential(p, t), t, atol=1e-12)
    # flat spaces project trivially
    co = make_flat_cosymplectic(1)
    w = rng.normal(size=7)
    np.testing.assert_array_equal(co.tangential(np.zeros(7), w), w)


# ---------------------------------------------------------------------------
# connection and curvature
# ---------------------------------------------------------------------------


def test_covariant_derivative_stays_tangent():
    sp = make_pseudosphere(1, 1)
    rng = derive_rng(7, "test-cov")
    p = sp.random_point(rng)
    X = sp.random_tangent(rng, p)
    v = rng.normal(size=8)
    W = covariant_derivative(sp, p, X, lambda q: sp.tangential(q, v))
    assert abs(inner(W, p, sp.metric)) < 1e-10


def test_covariant_derivative_flat_is_directional():
    co = make_flat_cosymplectic(1)
    p = np.zeros(7)
    X = e(1, 7)
    A = derive_rng(3, "test-lin").normal(size=(7, 7))
    W = covariant_derivative(co, p, X, lambda q: A @ q)
    np.testing.assert_allclose(W, A @ X, atol=1e-9)


def test_ambient_riemann_flat_spaces_vanish():
    for space in (make_flat_para_hyperhermitian(1), make_flat_cosymplectic(1)):
        p = np.zeros(space.dim)
        R = ambient_riemann(space, p, e(0, space.dim), e(1, space.dim), e(4, space.dim))
        np.testing.assert_array_equal(R, np.zeros(space.dim))


@pytest.mark.parametrize("level", [1, -1])
def test_ambient_riemann_constant_curvature(level):
    # R(X,Y)Z = level * (g(Y,Z) X - g(X,Z) Y), exactly (closed form)
    sp = make_pseudosphere(1, level)
    rng = derive_rng(13, f"test-curv-{level}")
    p = sp.random_point(rng)
    X, Y, Z = (sp.random_tangent(rng, p) for _ in range(3))
    R = ambient_riemann(sp, p, X, Y, Z)
    cf = level * (inner(Y, Z, sp.metric) * X - inner(X, Z, sp.metric) * Y)
    np.testing.assert_allclose(R, cf, atol=1e-12)


def test_ambient_riemann_fd_agrees_with_closed_form():
    sp = make_pseudosphere(1, 1)
    rng = derive_rng(17, "test-curv-fd")
    p = sp.random_point(rng)
    X, Y, Z = (sp.random_tangent(rng, p) for _ in range(3))
    R = ambient_riemann(sp, p, X, Y, Z)
    Rfd = ambient_riemann_fd(sp, p, X, Y, Z)
    assert np.max(np.abs(R - Rfd)) < 5e-4


@pytest.mark.parametrize("n,want", [(1, 6.0), (2, 10.0)])
def test_einstein_constant(n, want):
    sp = make_pseudosphere(n, 1)
    rng = derive_rng(5, "einstein-probe")
    p = sp.random_point(rng)
    _, lam, resid = ricci_and_einstein(sp, p)
    assert abs(lam - want) < 5e-4
    assert resid < 5e-4
    # sign law: lambda = -(4n+2) * eps_1
    assert lam == pytest.approx(-(4 * n + 2) * sp.structure.eps[0], abs=5e-4)


# ---------------------------------------------------------------------------
# negative control: the corrupted sign recipe must fail the axiom suite
# ---------------------------------------------------------------------------


def test_corrupted_phi_recipe_fails_cross_composition_axioms():
    sp = make_pseudosphere(1, 1)
    st_ = sp.structure
    bad_phi = lambda a, p, X, _phi=st_.phi: (-1 if a in (1, 2) else 1) * _phi(a, p, X)
    bad = dataclasses.replace(sp, structure=dataclasses.replace(st_, phi=bad_phi))
    res = check_axioms(bad, points=10, seed=1)
    d = res.as_dict()
    # the single-structure identities still hold ...
    for key in ("r1", "r2", "r3", "r7", "r8"):
        assert d[key] < 1e-12
    # ... but every cross-structure composition identity breaks at O(1)
    for key in ("r4", "r5", "r6"):
        assert d[key] > 1.0
    name, worst = res.worst()
    assert name in ("r4", "r5", "r6") and worst > 1.0
