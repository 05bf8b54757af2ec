"""The coset slab construction, its identities, and the aperiodicity certificate."""
import random
from fractions import Fraction

import pytest

from zonotile.lattices import lattice_from_vectors, plane_section
from zonotile.linalg import Vec3, primitive
from zonotile.tiling import verify_level
from zonotile.weird import (
    BLACK,
    RED,
    Coloring,
    ap_coloring,
    build_construction,
    build_weird,
    choose_coefficients,
    construction_from_indices,
    irregularity_certificate,
    slab_identity_check,
)
from zonotile.zonotope import Zonotope

from conftest import E1, E2, E3, ZERO

HALF = Fraction(1, 2)
W5 = (Vec3(-5, -5, -5), Vec3(5, 5, 5))


def cube_construction(cube):
    return construction_from_indices(cube, [0, 1], coefficients=(HALF, HALF))


def test_cube_construction_offsets_and_levels(cube):
    c = cube_construction(cube)
    assert c.v_indices == (0, 1) and c.w_indices == (2,)
    assert c.n_value == 2 and c.base_level == 1
    assert set(c.s_offsets) == {ZERO, Vec3(HALF, HALF, 0)}
    assert set(c.t_offsets) == {Vec3(HALF, 0, 0), Vec3(0, HALF, 0)}
    assert c.cosets is not None and c.cosets.torsion_order == 1


def test_construction_input_validation(cube):
    with pytest.raises(ValueError, match="empty"):
        construction_from_indices(cube, [])
    with pytest.raises(IndexError):
        construction_from_indices(cube, [0, 5])
    with pytest.raises(ValueError, match="span all of space"):
        construction_from_indices(cube, [0, 1, 2])
    with pytest.raises(ValueError, match="one coefficient"):
        construction_from_indices(cube, [0, 1], coefficients=(HALF,))
    with pytest.raises(ValueError, match="zero coefficient"):
        construction_from_indices(cube, [0, 1], coefficients=(0, HALF))
    with pytest.raises(ValueError, match="lands in the base group"):
        construction_from_indices(cube, [0, 1], coefficients=(1, 1))


def test_build_construction_picks_plane_side(cube):
    c = build_construction(cube)
    assert len(c.v_indices) == 2
    assert c.g.rank == 2
    assert len(c.s_offsets) == len(c.t_offsets) == c.n_value


def test_build_construction_rejects_non_two_flat():
    z = Zonotope((E1, E2, E3, Vec3(1, 1, 1), Vec3(1, 2, 3)))
    with pytest.raises(ValueError, match="two-flat"):
        build_construction(z)


def test_choose_coefficients_avoids_plane_section():
    # e1 = (e1+e3) - e3 lies in the plane of (2e1, e2) without being in their
    # lattice; coefficients must dodge the full section, not just the lattice
    z = Zonotope((E1 * 2, E2, E3, E1 + E3))
    gamma = lattice_from_vectors(list(z.generators))
    v = [z.generators[0], z.generators[1]]
    sect = plane_section(gamma, primitive(v[0].cross(v[1])))
    coeffs = choose_coefficients(sect, v)
    assert len(coeffs) == 2
    for mask in (1, 2, 3):
        s = ZERO
        for i in range(2):
            if mask >> i & 1:
                s = s + v[i] * coeffs[i]
        assert not sect.contains(s)
    # the full path accepts the body and stays collision-free
    c = construction_from_indices(z, [0, 1])
    for u in c.s_offsets + c.t_offsets:
        assert u.is_zero() or not c.gamma.contains(u)


def test_user_coefficients_may_collide_with_gamma_but_certificate_refuses():
    z = Zonotope((E1 * 2, E2, E3, E1 + E3))
    # (1/2, 1/2) passes the base-group check: e1 is not in the (2e1, e2) lattice
    c = construction_from_indices(z, [0, 1], coefficients=(HALF, HALF))
    assert any(not u.is_zero() and c.gamma.contains(u) for u in c.s_offsets + c.t_offsets)
    with pytest.raises(ValueError, match="translation lattice"):
        irregularity_certificate(c, ap_coloring(40), -5, 5)
    # the level is still choice-independent even with the collision
    for choice in (None, {0: "T"}, {2: "T", -1: "T"}):
        rep = verify_level(z, build_weird(c, choice), W5, samples=120, seed=8)
        assert rep.level == c.n_value * c.base_level
        assert rep.density_consistent is True


def test_slab_identity_cube(cube):
    c = cube_construction(cube)
    rep = slab_identity_check(c, samples=200, seed=3)
    assert rep.passed and rep.mismatches == ()
    assert rep.samples == 200


def test_slab_identity_singleton_side(cube):
    c = construction_from_indices(cube, [2])
    assert c.n_value == 1
    rep = slab_identity_check(c, samples=100, seed=4)
    assert rep.passed


def test_build_weird_levels(cube):
    c = cube_construction(cube)
    for choice in (None, {0: "T"}, {1: "T", -3: "T", 7: "T"}):
        lam = build_weird(c, choice)
        assert lam.expected_level == 2
        rep = verify_level(cube, lam, W5, samples=200, seed=11)
        assert rep.level == 2 and rep.density_consistent is True


def test_build_weird_requires_plane(cube):
    c = construction_from_indices(cube, [2])
    with pytest.raises(ValueError, match="rank-2"):
        build_weird(c)


def test_random_two_flat_construction_level():
    z = Zonotope((Vec3(1, 1, 0), Vec3(1, -1, 0), E3, Vec3(1, 0, 1)))
    c = build_construction(z)
    lam = build_weird(c, {0: "T", 5: "T"})
    rep = verify_level(z, lam, W5, samples=150, seed=2)
    assert rep.level == c.n_value * c.base_level
    assert rep.density_consistent is True


def test_ap_coloring_defeats_every_processed_progression():
    col = ap_coloring(80)
    assert col.processed
    for d, a in col.processed:
        colors = {col.color_of(a + k * d) for k in range(-200, 201)}
        assert colors == {RED, BLACK}


def test_ap_coloring_deterministic_and_total():
    a, b = ap_coloring(50), ap_coloring(50)
    assert a.assigned == b.assigned
    assert Coloring({}, ()).color_of(123456) == RED


def test_irregularity_certificate_cube(cube):
    c = cube_construction(cube)
    col = ap_coloring(120)
    rep = irregularity_certificate(c, col, -30, 30)
    assert rep.ok and rep.has_present and rep.has_absent
    for ell, color, mult in rep.entries:
        assert mult == (1 if color == RED else 0)
        assert color == col.color_of(ell)
