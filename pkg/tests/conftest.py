"""Shared fixtures, random-object helpers, and the criterion summary hook."""
import random
import re
from fractions import Fraction

import pytest

_criterion_results: dict[str, str] = {}


def pytest_runtest_logreport(report):
    m = re.search(r"test_criterion_(\d+)\w*", report.nodeid)
    if not m:
        return
    key = m.group(1)
    if report.when == "call":
        _criterion_results[key] = "PASS" if report.passed else "FAIL"
    elif report.when == "setup" and report.failed:
        _criterion_results[key] = "FAIL"


def pytest_terminal_summary(terminalreporter):
    if not _criterion_results:
        return
    terminalreporter.write_line("")
    terminalreporter.write_line("acceptance criteria")
    for key in sorted(_criterion_results):
        terminalreporter.write_line(f"  criterion {key}: {_criterion_results[key]}")

from zonotile.lattices import lattice_from_vectors
from zonotile.linalg import Vec3, rank_of
from zonotile.tiling import LatticeComponent, LatticeUnion
from zonotile.zonotope import Zonotope

E1 = Vec3(1, 0, 0)
E2 = Vec3(0, 1, 0)
E3 = Vec3(0, 0, 1)
ZERO = Vec3(0, 0, 0)


@pytest.fixture
def cube() -> Zonotope:
    return Zonotope((E1, E2, E3))


@pytest.fixture
def rd4() -> Zonotope:
    # cube generators plus the long diagonal; 12 rhombic facets
    return Zonotope((E1, E2, E3, Vec3(1, 1, 1)))


@pytest.fixture
def z3_union() -> LatticeUnion:
    lat = lattice_from_vectors([E1, E2, E3])
    return LatticeUnion((LatticeComponent(lat, ZERO),))


def random_int_vec(rng: random.Random, span: int = 2) -> Vec3:
    while True:
        v = Vec3(rng.randint(-span, span), rng.randint(-span, span), rng.randint(-span, span))
        if not v.is_zero():
            return v


def random_rat_vec(rng: random.Random, span: int = 3, den: int = 3) -> Vec3:
    return Vec3(
        Fraction(rng.randint(-span, span), rng.randint(1, den)),
        Fraction(rng.randint(-span, span), rng.randint(1, den)),
        Fraction(rng.randint(-span, span), rng.randint(1, den)),
    )


def random_zonotope(rng: random.Random, count: int, span: int = 2) -> Zonotope:
    """Random integer-generator zonotope of full rank."""
    while True:
        gens = tuple(random_int_vec(rng, span) for _ in range(count))
        if rank_of(gens) == 3:
            return Zonotope(gens)


def random_two_flat_zonotope(rng: random.Random, n1: int, n2: int) -> Zonotope:
    """n1 generators inside one plane, n2 inside another, full rank overall."""
    while True:
        a, b = random_int_vec(rng), random_int_vec(rng)
        if rank_of([a, b]) == 2:
            break
    while True:
        c, d = random_int_vec(rng), random_int_vec(rng)
        if rank_of([c, d]) == 2 and rank_of([a, b, c, d]) == 3:
            break

    def in_plane(p: Vec3, q: Vec3) -> Vec3:
        while True:
            v = p * rng.randint(-2, 2) + q * rng.randint(-2, 2)
            if not v.is_zero():
                return v

    gens = [in_plane(a, b) for _ in range(n1)] + [in_plane(c, d) for _ in range(n2)]
    if rank_of(gens) < 3:
        return random_two_flat_zonotope(rng, n1, n2)
    return Zonotope(tuple(gens))
