"""Catalog entries: registry integrity and every expected profile re-verified."""

import numpy as np
import pytest

from artifact import (
    PlaneNotInvariant,
    SubspaceNotTotallyReal,
    classify,
    entry_ids,
    flat_torus,
    get_entry,
    great_sphere,
    intrinsic_curvature,
    mean_curvature,
    real_sphere,
    registry,
    second_fundamental_form,
)

EXPECTED_IDS = [
    "clifford-torus",
    "cosym-leaf",
    "cosym-tangent-block",
    "flat-torus-n2",
    "great-s3-alt",
    "great-s3-fiber",
    "real-circle",
]


def midpoint(imm) -> np.ndarray:
    return (np.asarray(imm.box_lo) + np.asarray(imm.box_hi)) / 2.0


def test_registry_ids_frozen():
    assert entry_ids() == EXPECTED_IDS
    reg = registry()
    assert sorted(reg) == EXPECTED_IDS
    for eid, entry in reg.items():
        assert entry.id == eid


def test_get_entry_unknown_id():
    with pytest.raises(KeyError):
        get_entry("mystery-manifold")


def test_entries_carry_descriptions_and_anchors():
    for entry in registry().values():
        assert entry.description.strip()
        assert entry.anchor.strip()


@pytest.mark.parametrize("eid", EXPECTED_IDS)
def test_entry_points_lie_on_the_ambient(eid):
    imm = get_entry(eid).immersion
    rng = np.random.default_rng(1)
    for u in imm.sample_params(rng, 5):
        imm.point(u)  # raises PointOffManifold on failure


@pytest.mark.parametrize("eid", EXPECTED_IDS)
def test_entry_matches_expected_profile(eid):
    entry = get_entry(eid)
    imm = entry.immersion
    want = entry.expected
    u = midpoint(imm)

    c = classify(imm, u)
    assert c.kind is want.kind
    assert c.xi_tangency == want.xi_tangency
    assert (c.dim_xi_t, c.dim_xi_n) == (want.dim_xi_t, want.dim_xi_n)

    h = second_fundamental_form(imm, u)
    if want.totally_geodesic:
        assert np.max(np.abs(h)) < 5e-4
    else:
        assert np.max(np.abs(h)) > 0.05
    if want.minimal:
        assert np.max(np.abs(mean_curvature(imm, u))) < 5e-4

    if want.flat is not None and imm.domain_dim >= 2:
        assert intrinsic_curvature(imm, u).is_flat is want.flat


@pytest.mark.parametrize("eid", EXPECTED_IDS)
def test_classification_stable_across_sampled_points(eid):
    entry = get_entry(eid)
    imm = entry.immersion
    rng = np.random.default_rng(7)
    for u in imm.sample_params(rng, 3):
        c = classify(imm, u)
        assert c.kind is entry.expected.kind
        assert c.xi_tangency == entry.expected.xi_tangency


def test_flat_torus_scales_with_n():
    entry = flat_torus(3)
    imm = entry.immersion
    assert imm.ambient.dim == 16  # lives on the level +1 sphere for n = 3
    c = classify(imm, midpoint(imm))
    assert c.kind is entry.expected.kind


def test_great_sphere_rejects_non_invariant_plane():
    with pytest.raises(PlaneNotInvariant):
        great_sphere((0, 1, 4, 5), 1)


def test_real_sphere_rejects_non_totally_real_plane():
    with pytest.raises(SubspaceNotTotallyReal):
        real_sphere(1, indices=(4, 5))


def test_real_sphere_rejects_malformed_indices():
    with pytest.raises(ValueError):
        real_sphere(1, indices=(4, 4))
    with pytest.raises(ValueError):
        real_sphere(1, indices=(4, 99))
