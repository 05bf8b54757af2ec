"""Construction of non-quasi-periodic multiple tilings for two-flat bodies.

Starting from generators v_1..v_n spanning one plane of a two-flat zonotope,
form the group G they generate, the full translation lattice Gamma, and the
two offset families given by even- and odd-cardinality subset sums of
perturbed generators c_i v_i. Convolving the body with G and either family
gives the same slab function, so along each coset of G inside Gamma the two
families can be swapped independently; every choice map yields the same
covering level. Choosing the swaps along a line of cosets according to a
coloring in which no arithmetic progression is monochromatic produces a
tiling that no quasi-periodic structure can match.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import islice
from typing import Mapping, Sequence

from .lattices import (
    CosetEnumeration,
    Lattice,
    coset_reps,
    lattice_from_vectors,
    lattice_points_in_box,
    plane_section,
)
from .linalg import VEC_ZERO, Vec3, primitive, rank_of, rat
from .structure import TwoFlatVerdict, two_flat
from .tiling import SlabChoice, translate_multiplicity
from .zonotope import BoundaryHit, Zonotope

__all__ = [
    "WeirdConstruction",
    "choose_coefficients",
    "construction_from_indices",
    "build_construction",
    "SlabIdentityReport",
    "slab_identity_check",
    "build_weird",
    "Coloring",
    "ap_coloring",
    "IrregularityReport",
    "irregularity_certificate",
]

RED = "red"
BLACK = "black"


@dataclass(frozen=True)
class WeirdConstruction:
    """Ingredients shared by every tiling the construction can emit.

    g is the group generated by the chosen in-plane generators (rank 2 for
    the full construction; rank 1 degenerate variants still satisfy the slab
    identity but carry no coset enumeration). n_value is the size of each
    offset family and base_level the covering level of Gamma itself, so the
    emitted tilings cover at level n_value * base_level.
    """

    zonotope: Zonotope
    v_indices: tuple[int, ...]
    w_indices: tuple[int, ...]
    g: Lattice
    gamma: Lattice
    cosets: CosetEnumeration | None
    coefficients: tuple[Fraction, ...]
    s_offsets: tuple[Vec3, ...]
    t_offsets: tuple[Vec3, ...]
    n_value: int
    base_level: int


def _primes():
    n = 2
    while True:
        if all(n % d for d in range(2, int(n**0.5) + 1)):
            yield n
        n += 1


def _subset_sums(vectors: Sequence[Vec3], scale: Sequence) -> list[Vec3]:
    # sums over all index subsets, entry at position mask; mask 0 gives 0
    sums = [VEC_ZERO] * (1 << len(vectors))
    for mask in range(1, len(sums)):
        low = mask & -mask
        i = low.bit_length() - 1
        sums[mask] = sums[mask ^ low] + scale[i] * vectors[i]
    return sums


def choose_coefficients(g: Lattice, v: Sequence[Vec3]) -> tuple[Fraction, ...]:
    """Deterministic coefficients whose nonempty subset sums avoid the group.

    Tries integer weight patterns m_i = t^i for t = 1, 2, ... (t = 1 is the
    all-equal pattern) and scales each by 1/p over increasing primes p. A
    pattern with some vanishing weighted subset sum can never work; otherwise
    only the finitely many primes dividing a subset sum's coordinates fail,
    so the search terminates quickly.
    """
    if not v:
        raise ValueError("no generators to perturb")
    for t in range(1, 65):
        m = [t**i for i in range(len(v))]
        sums = _subset_sums(v, m)[1:]
        coords = [g.coords(s) for s in sums]
        if any(c is None for c in coords):
            raise ValueError("generator outside its own group")
        rows = [[int(x) for x in c] for c in coords]
        if any(all(x == 0 for x in row) for row in rows):
            continue
        for p in islice(_primes(), 300):
            if not any(all(x % p == 0 for x in row) for row in rows):
                return tuple(Fraction(mi, p) for mi in m)
    raise RuntimeError("coefficient search exhausted")


def construction_from_indices(
    z: Zonotope,
    v_indices: Sequence[int],
    coefficients: Sequence[Fraction] | None = None,
) -> WeirdConstruction:
    """Assemble groups, offsets, and levels for a chosen generator subset."""
    vi = tuple(sorted(set(v_indices)))
    if not vi:
        raise ValueError("empty generator selection")
    if vi[0] < 0 or vi[-1] >= len(z.generators):
        raise IndexError("generator index out of range")
    wi = tuple(i for i in range(len(z.generators)) if i not in vi)
    v = [z.generators[i] for i in vi]
    g = lattice_from_vectors(v)
    if g.rank == 3:
        raise ValueError("selected generators span all of space")
    gamma = lattice_from_vectors(list(z.generators))
    if gamma.rank != 3:
        raise ValueError("generators do not span a full-rank lattice")
    k = z.volume() / gamma.covolume()
    if k.denominator != 1:
        raise ArithmeticError("volume is not an integer multiple of the covolume")
    if coefficients is None:
        # avoid the full plane section of gamma, which can exceed g when a
        # cross-plane generator folds back into the plane; subset sums kept
        # out of it make the per-line multiplicity bookkeeping exact
        avoid = g
        if g.rank == 2:
            avoid = plane_section(gamma, primitive(g.basis[0].cross(g.basis[1])))
        c = choose_coefficients(avoid, v)
    else:
        c = tuple(rat(x) for x in coefficients)
        if len(c) != len(v):
            raise ValueError("one coefficient per selected generator required")
        if any(ci == 0 for ci in c):
            raise ValueError("zero coefficient")
    sums = _subset_sums(v, c)
    for mask in range(1, len(sums)):
        if g.contains(sums[mask]):
            raise ValueError("coefficient subset sum lands in the base group")
    s_off = tuple(s for mask, s in enumerate(sums) if bin(mask).count("1") % 2 == 0)
    t_off = tuple(s for mask, s in enumerate(sums) if bin(mask).count("1") % 2 == 1)
    cosets = coset_reps(gamma, g) if g.rank == 2 else None
    return WeirdConstruction(
        z, vi, wi, g, gamma, cosets, c, s_off, t_off, 2 ** (len(v) - 1), int(k)
    )


def build_construction(
    z: Zonotope,
    flats: TwoFlatVerdict | None = None,
    coefficients: Sequence[Fraction] | None = None,
) -> WeirdConstruction:
    """Run the construction on the plane side of a two-flat split."""
    if flats is None:
        flats = two_flat(z)
    if not flats.is_two_flat:
        raise ValueError("not a two-flat zonotope")
    for side in (flats.h1_indices, flats.h2_indices):
        if side and rank_of([z.generators[i] for i in side]) == 2:
            return construction_from_indices(z, side, coefficients)
    raise ValueError("neither side of the split spans a plane")


@dataclass(frozen=True)
class SlabIdentityReport:
    passed: bool
    samples: int
    mismatches: tuple[tuple[Vec3, int, int], ...]
    seed: int


def _group_count(c: WeirdConstruction, x: Vec3, u: Vec3) -> int:
    z = c.zonotope
    lo_p, hi_p = z.bounding_box()
    y = x - u
    pts = lattice_points_in_box(c.g, VEC_ZERO, y - hi_p, y - lo_p)
    return z.count_interior([y - p for p in pts])


def slab_identity_check(
    c: WeirdConstruction,
    window: tuple[Vec3, Vec3] | None = None,
    samples: int = 64,
    seed: int = 0,
) -> SlabIdentityReport:
    """Sample the two group-convolved offset sums and compare exactly.

    Both offset families, convolved with the body indicator and the group,
    must give identical functions; each sample point is counted against both
    and any disagreement is reported. Boundary hits are resampled.
    """
    rng = random.Random(seed)
    if window is None:
        lo, hi = c.zonotope.bounding_box()
        pad = Vec3.of(1, 1, 1)
        window = (lo - pad, hi + pad)
    lo, hi = window
    mismatches = []
    for _ in range(samples):
        while True:
            coords = [
                a + (b - a) * Fraction(rng.getrandbits(62), 2**62)
                for a, b in zip(lo, hi)
            ]
            x = Vec3(*coords)
            try:
                s_count = sum(_group_count(c, x, u) for u in c.s_offsets)
                t_count = sum(_group_count(c, x, u) for u in c.t_offsets)
            except BoundaryHit:
                continue
            break
        if s_count != t_count:
            mismatches.append((x, s_count, t_count))
    return SlabIdentityReport(not mismatches, samples, tuple(mismatches), seed)


def build_weird(
    c: WeirdConstruction, choice: Mapping[int, str] | None = None
) -> SlabChoice:
    """Emit the translate multiset for a per-coset choice of offset family."""
    if c.cosets is None:
        raise ValueError("rank-2 base group required")
    return SlabChoice(
        gamma=c.gamma,
        sub=c.g,
        cosets=c.cosets,
        s_offsets=c.s_offsets,
        t_offsets=c.t_offsets,
        choice=dict(choice or {}),
        expected_level=c.n_value * c.base_level,
    )


@dataclass
class Coloring:
    """Two-coloring of the integers with no monochromatic infinite AP.

    Integers outside the assigned map default to red; color_of is total.
    """

    assigned: dict[int, str]
    processed: tuple[tuple[int, int], ...]

    def color_of(self, i: int) -> str:
        return self.assigned.get(i, RED)


def _fresh_aps():
    s = 1
    while True:
        for d in range(1, s + 1):
            a = s - d
            if 0 <= a < d:
                yield (d, a)
        s += 1


def _ap_members(d: int, a: int):
    yield a
    k = 1
    while True:
        yield a + d * k
        yield a - d * k
        k += 1


def ap_coloring(num_steps: int) -> Coloring:
    """Round-robin defeat of arithmetic progressions.

    Maintains a queue of progressions (d, a): each step pops one, paints its
    first two uncolored members red then black (scanning a, a+d, a-d, ...),
    requeues it, and admits the next fresh progression in (d + a, d) order.
    Every progression is revisited forever, so in the limit each one carries
    both colors; num_steps controls how much of that schedule runs.
    """
    from collections import deque

    queue: deque[tuple[int, int]] = deque()
    gen = _fresh_aps()
    assigned: dict[int, str] = {}
    processed: list[tuple[int, int]] = []
    for _ in range(num_steps):
        if not queue:
            queue.append(next(gen))
        d, a = queue.popleft()
        found: list[int] = []
        for val in _ap_members(d, a):
            if val not in assigned:
                found.append(val)
                if len(found) == 2:
                    break
        assigned[found[0]] = RED
        assigned[found[1]] = BLACK
        processed.append((d, a))
        queue.append((d, a))
        queue.append(next(gen))
    return Coloring(assigned, tuple(processed))


@dataclass(frozen=True)
class IrregularityReport:
    entries: tuple[tuple[int, str, int], ...]  # (line index, color, multiplicity)
    ok: bool
    has_present: bool
    has_absent: bool


def irregularity_certificate(
    c: WeirdConstruction, coloring: Coloring, lo: int, hi: int
) -> IrregularityReport:
    """Check the tiling built from a coloring realizes it along a coset line.

    The torsion-free coset representatives lie on the line gamma1 * Z; using
    the T family exactly on the black cosets of that line must make the
    multiset contain gamma1 * l once when l is red and not at all when l is
    black. Any mismatch is an implementation error and raises.
    """
    if c.cosets is None:
        raise ValueError("rank-2 base group required")
    for u in c.s_offsets + c.t_offsets:
        if not u.is_zero() and c.gamma.contains(u):
            raise ValueError("a nonzero offset lies in the translation lattice")
    ce = c.cosets
    t = ce.torsion_order
    choice = {
        ell * t: "T" for ell, col in coloring.assigned.items() if col == BLACK
    }
    lam = build_weird(c, choice)
    entries = []
    for ell in range(lo, hi + 1):
        pt = ell * ce.gamma1
        if ce.rep(ell * t) != pt:
            raise AssertionError("coset representative drift")
        mult = translate_multiplicity(lam, pt)
        color = coloring.color_of(ell)
        expected = 1 if color == RED else 0
        if mult != expected:
            raise AssertionError("irregularity certificate mismatch")
        entries.append((ell, color, mult))
    mults = {m for _, _, m in entries}
    return IrregularityReport(tuple(entries), True, 1 in mults, 0 in mults)
