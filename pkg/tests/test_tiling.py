"""Coverage counting, level verification, and density."""
import random
from fractions import Fraction

import pytest

from zonotile.lattices import lattice_from_vectors
from zonotile.linalg import Vec3
from zonotile.tiling import (
    LatticeComponent,
    LatticeUnion,
    _batch_counts,
    coverage,
    density,
    translate_multiplicity,
    verify_level,
)
from zonotile.weird import build_construction, build_weird
from zonotile.zonotope import BoundaryHit, Zonotope

from conftest import E1, E2, E3, ZERO, random_zonotope

HALF = Fraction(1, 2)
W6 = (Vec3(-3, -3, -3), Vec3(3, 3, 3))


def z3():
    return lattice_from_vectors([E1, E2, E3])


def test_component_validation():
    with pytest.raises(ValueError):
        LatticeComponent(lattice_from_vectors([E1, E2]), ZERO)
    with pytest.raises(ValueError):
        LatticeComponent(z3(), ZERO, weight=0)


def test_density_examples(cube):
    assert density(LatticeUnion((LatticeComponent(z3(), ZERO),))) == 1
    half_lat = lattice_from_vectors([E1 * HALF, E2 * HALF, E3 * HALF])
    both = LatticeUnion(
        (LatticeComponent(z3(), ZERO), LatticeComponent(half_lat, ZERO))
    )
    assert density(both) == 9
    weird = build_weird(build_construction(cube))
    assert density(weird) == 2


def test_coverage_hand_values(cube, z3_union):
    x = Vec3(HALF, HALF, HALF)
    assert coverage(cube, z3_union, x) == 1
    two = LatticeUnion(
        (
            LatticeComponent(z3(), ZERO),
            LatticeComponent(z3(), Vec3(HALF, HALF, 0)),
        )
    )
    assert coverage(cube, two, Vec3(Fraction(1, 3), Fraction(1, 5), Fraction(1, 7))) == 2
    weighted = LatticeUnion((LatticeComponent(z3(), ZERO, weight=3),))
    assert coverage(cube, weighted, x) == 3


def test_coverage_boundary_raises(cube, z3_union):
    with pytest.raises(BoundaryHit):
        coverage(cube, z3_union, Vec3(0, HALF, HALF))


def test_coverage_translation_equivariance(cube):
    rng = random.Random(3)
    for _ in range(8):
        t = Vec3(
            Fraction(rng.randint(-9, 9), 7),
            Fraction(rng.randint(-9, 9), 5),
            Fraction(rng.randint(-9, 9), 3),
        )
        x = Vec3(Fraction(1, 3), Fraction(1, 5), Fraction(1, 7))
        lam = LatticeUnion((LatticeComponent(z3(), ZERO),))
        lam_t = LatticeUnion((LatticeComponent(z3(), t),))
        assert coverage(cube, lam, x) == coverage(cube, lam_t, x + t)


def test_coverage_splits_over_components(cube):
    rng = random.Random(9)
    comp_a = LatticeComponent(z3(), Vec3(Fraction(1, 3), 0, 0))
    comp_b = LatticeComponent(lattice_from_vectors([E1 * 2, E2, E3]), ZERO, weight=2)
    lam = LatticeUnion((comp_a, comp_b))
    for _ in range(10):
        # odd/22 avoids every face plane in play (integers and thirds)
        x = Vec3(
            Fraction(2 * rng.randint(-15, 15) + 1, 22),
            Fraction(2 * rng.randint(-15, 15) + 1, 22),
            Fraction(2 * rng.randint(-15, 15) + 1, 22),
        )
        a = coverage(cube, LatticeUnion((comp_a,)), x)
        b = coverage(cube, LatticeUnion((comp_b,)), x)
        assert coverage(cube, lam, x) == a + b


def test_translate_multiplicity(cube):
    lam = LatticeUnion((LatticeComponent(z3(), ZERO, weight=2),))
    assert translate_multiplicity(lam, Vec3(1, -2, 3)) == 2
    assert translate_multiplicity(lam, Vec3(HALF, 0, 0)) == 0
    weird = build_weird(build_construction(cube))
    assert translate_multiplicity(weird, ZERO) >= 1


def test_batch_counts_agree_with_single_point_coverage(cube):
    rng = random.Random(21)
    weird = build_weird(build_construction(cube), choice={0: "T", 3: "T"})
    union = LatticeUnion(
        (
            LatticeComponent(z3(), Vec3(Fraction(1, 3), 0, 0)),
            LatticeComponent(lattice_from_vectors([E1 * 2, E2, E3]), ZERO, weight=2),
        )
    )
    for lam in (union, weird):
        xs = []
        while len(xs) < 40:
            x = Vec3(
                Fraction(rng.getrandbits(40), 2**40) * 6 - 3,
                Fraction(rng.getrandbits(40), 2**40) * 6 - 3,
                Fraction(rng.getrandbits(40), 2**40) * 6 - 3,
            )
            xs.append(x)
        got, border = _batch_counts(cube, lam, xs)
        assert not border
        for x, c in zip(xs, got):
            assert c == coverage(cube, lam, x)


def test_batch_counts_flags_boundary_points(cube, z3_union):
    xs = [Vec3(HALF, HALF, HALF), Vec3(0, HALF, HALF), Vec3(1, HALF, HALF)]
    got, border = _batch_counts(cube, z3_union, xs)
    assert got == [1, None, None]
    assert border == [1, 2]


def test_verify_level_unit_tiling(cube, z3_union):
    rep = verify_level(cube, z3_union, W6, samples=400, seed=0)
    assert rep.level == 1
    assert rep.violations == ()
    assert rep.density == 1
    assert rep.density_consistent is True


def test_verify_level_superimposed_two_tiling(cube):
    lam = LatticeUnion(
        (
            LatticeComponent(z3(), ZERO),
            LatticeComponent(z3(), Vec3(Fraction(1, 3), 0, 0)),
        )
    )
    rep = verify_level(cube, lam, W6, samples=300, seed=4)
    assert rep.level == 2 and rep.density_consistent is True


def test_verify_level_gap_detection(cube):
    sparse = LatticeUnion((LatticeComponent(lattice_from_vectors([E1 * 2, E2, E3]), ZERO),))
    rep = verify_level(cube, sparse, W6, samples=200, seed=5)
    assert rep.level is None
    assert rep.violations
    assert rep.density_consistent is None
    # every violation point records its observed multiplicity
    for p, c in rep.violations:
        assert coverage(cube, sparse, p) == c


def test_verify_level_density_mismatch_in_small_window(cube):
    sparse = LatticeUnion((LatticeComponent(lattice_from_vectors([E1 * 2, E2 * 2, E3 * 2]), ZERO),))
    inner = (Vec3(Fraction(1, 10), Fraction(1, 10), Fraction(1, 10)),
             Vec3(Fraction(2, 10), Fraction(2, 10), Fraction(2, 10)))
    rep = verify_level(cube, sparse, inner, samples=50, seed=6)
    # every sample lands inside the one translate, but the density law exposes it
    assert rep.level == 1
    assert rep.density == Fraction(1, 8)
    assert rep.density_consistent is False


def test_verify_level_deterministic(cube, z3_union):
    a = verify_level(cube, z3_union, W6, samples=120, seed=77)
    b = verify_level(cube, z3_union, W6, samples=120, seed=77)
    assert a == b


def test_verify_level_random_bodies_against_their_own_lattice():
    # Z^3-translates of a random zonotope tile at level = volume when the
    # generators are integral: density 1 times integer volume
    rng = random.Random(15)
    for _ in range(3):
        z = random_zonotope(rng, 4)
        lam = LatticeUnion((LatticeComponent(z3(), ZERO),))
        rep = verify_level(z, lam, W6, samples=150, seed=rng.randint(0, 10**6))
        assert rep.level == z.volume()
        assert rep.density_consistent is True
