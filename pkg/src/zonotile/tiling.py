"""Translate multisets and exact multiplicity verification.

Two descriptions of a translate multiset are supported: a weighted finite
union of shifted full-rank lattices, and a choice system that picks, per coset
of a rank-2 sublattice, one of two finite offset families. Coverage of a point
is counted exactly; points hitting a body boundary raise BoundaryHit so the
caller can resample.
"""

from __future__ import annotations

import random
from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Mapping, Sequence

import numpy as np

from .lattices import CosetEnumeration, Lattice, lattice_points_in_box
from .linalg import Vec3
from .zonotope import _MARGIN, Location, Zonotope

__all__ = [
    "LatticeComponent",
    "LatticeUnion",
    "SlabChoice",
    "CoverageReport",
    "density",
    "coverage",
    "verify_level",
]


@dataclass(frozen=True)
class LatticeComponent:
    lattice: Lattice
    offset: Vec3
    weight: int = 1

    def __post_init__(self):
        if self.lattice.rank != 3:
            raise ValueError("full-rank lattice required")
        if self.weight < 1:
            raise ValueError("weight must be a positive integer")


@dataclass(frozen=True)
class LatticeUnion:
    components: tuple[LatticeComponent, ...]

    def __post_init__(self):
        if not self.components:
            raise ValueError("empty union")


@dataclass
class SlabChoice:
    """Per-coset choice between two offset families over a rank-2 sublattice.

    The translate multiset is the union over coset indices j of
    (sub + rep(j)) + each offset of the selected family; cosets the choice map
    leaves out default to the first family.
    """

    gamma: Lattice
    sub: Lattice
    cosets: CosetEnumeration
    s_offsets: tuple[Vec3, ...]
    t_offsets: tuple[Vec3, ...]
    choice: Mapping[int, str] = field(default_factory=dict)
    expected_level: int | None = None

    def __post_init__(self):
        if len(self.s_offsets) != len(self.t_offsets):
            raise ValueError("offset families must have equal size")
        for v in self.choice.values():
            if v not in ("S", "T"):
                raise ValueError("choice values must be 'S' or 'T'")

    def offsets_for(self, j: int) -> tuple[Vec3, ...]:
        return self.t_offsets if self.choice.get(j, "S") == "T" else self.s_offsets


@dataclass(frozen=True)
class CoverageReport:
    level: int | None
    samples: int
    violations: tuple[tuple[Vec3, int], ...]
    density: Fraction
    density_consistent: bool | None
    window: tuple[Vec3, Vec3]
    seed: int


def density(lam: LatticeUnion | SlabChoice) -> Fraction:
    """Average number of translates per unit volume."""
    if isinstance(lam, LatticeUnion):
        return sum(
            (Fraction(c.weight) / c.lattice.covolume() for c in lam.components),
            Fraction(0),
        )
    # each coset of sub inside gamma carries one offset family
    return Fraction(len(lam.s_offsets)) / lam.gamma.covolume()


def _coverage_union(z: Zonotope, lam: LatticeUnion, x: Vec3) -> int:
    lo_p, hi_p = z.bounding_box()
    lo, hi = x - hi_p, x - lo_p
    total = 0
    for comp in lam.components:
        pts = lattice_points_in_box(comp.lattice, comp.offset, lo, hi)
        total += comp.weight * z.count_interior([x - p for p in pts])
    return total


def _coverage_slab(z: Zonotope, lam: SlabChoice, x: Vec3) -> int:
    lo_p, hi_p = z.bounding_box()
    total = 0
    seen: list[Vec3] = []
    for u in lam.s_offsets + lam.t_offsets:
        if u in seen:
            continue
        seen.append(u)
        pts = lattice_points_in_box(lam.gamma, u, x - hi_p, x - lo_p)
        mask = z.interior_mask([x - p for p in pts])
        for p, inside in zip(pts, mask):
            if not inside:
                continue
            j = lam.cosets.index_of(p - u)
            total += lam.offsets_for(j).count(u)
    return total


def coverage(z: Zonotope, lam: LatticeUnion | SlabChoice, x: Vec3) -> int:
    """Exact multiplicity sum_t [x in interior(z + t)] over the multiset.

    Raises BoundaryHit when x lies on the boundary of a contributing
    translate, since interior counts are ill-defined there.
    """
    if isinstance(lam, LatticeUnion):
        return _coverage_union(z, lam, x)
    return _coverage_slab(z, lam, x)


def translate_multiplicity(lam: LatticeUnion | SlabChoice, point: Vec3) -> int:
    """How many times the point itself occurs in the translate multiset."""
    if isinstance(lam, LatticeUnion):
        return sum(
            c.weight for c in lam.components if c.lattice.contains(point - c.offset)
        )
    total = 0
    seen: list[Vec3] = []
    for u in lam.s_offsets + lam.t_offsets:
        if u in seen:
            continue
        seen.append(u)
        gpt = point - u
        if lam.gamma.contains(gpt):
            j = lam.cosets.index_of(gpt)
            total += lam.offsets_for(j).count(u)
    return total


def _sample_point(rng: random.Random, lo: Vec3, hi: Vec3) -> Vec3:
    coords = []
    for a, b in zip(lo, hi):
        t = Fraction(rng.getrandbits(62), 2**62)
        coords.append(a + (b - a) * t)
    return Vec3(*coords)


def _coeff_grid(lat: Lattice, shift: Vec3, lo_f, hi_f):
    """Integer coefficient grid covering a float box, with float positions.

    Complete superset of the lattice translate inside the box (1e-6 widening
    absorbs float rounding); positions are exact coefficients times a float
    basis, so downstream interior tests stay within the prefilter margin.
    """
    rows_f = np.array([r.as_floats() for r in lat._coord_rows])
    basis_f = np.array([b.as_floats() for b in lat.basis])
    shift_f = np.array(shift.as_floats())
    corners = np.array(
        [[x, y, zc] for x in (lo_f[0], hi_f[0]) for y in (lo_f[1], hi_f[1]) for zc in (lo_f[2], hi_f[2])]
    )
    vals = (corners - shift_f) @ rows_f.T
    lo_c = np.floor(vals.min(axis=0) - 1e-6).astype(int)
    hi_c = np.ceil(vals.max(axis=0) + 1e-6).astype(int)
    axes = [np.arange(lo_c[i], hi_c[i] + 1) for i in range(3)]
    grid = np.stack(np.meshgrid(*axes, indexing="ij"), axis=-1).reshape(-1, 3)
    return grid, grid @ basis_f + shift_f


def _batch_counts(
    z: Zonotope, lam: LatticeUnion | SlabChoice, xs: Sequence[Vec3]
) -> tuple[list[int | None], list[int]]:
    """Exact coverage counts for many samples at once.

    Float prefilter against every candidate translate; only sample/translate
    pairs inside the margin band are resolved with exact arithmetic. Samples
    landing on a translate boundary come back as None along with their index
    so the caller can resample them.
    """
    if not xs:
        return [], []
    arr = np.array([x.as_floats() for x in xs])
    lo_p, hi_p = z.bounding_box()
    lo_f = arr.min(axis=0) - np.array(hi_p.as_floats()) - 1e-9
    hi_f = arr.max(axis=0) - np.array(lo_p.as_floats()) + 1e-9
    normals = z._normals_f
    supports = z._supports_f
    proj = arr @ normals.T - supports  # (S, F)
    counts: list[int | None] = [0] * len(xs)
    boundary: set[int] = set()
    if isinstance(lam, LatticeUnion):
        groups = [(c.lattice, c.offset, None, c.weight) for c in lam.components]
    else:
        groups = []
        seen: list[Vec3] = []
        for u in lam.s_offsets + lam.t_offsets:
            if u not in seen:
                seen.append(u)
                groups.append((lam.gamma, u, u, None))
    for lat, shift, u, weight in groups:
        coeffs, pos_f = _coeff_grid(lat, shift, lo_f, hi_f)
        if u is None:
            mult = np.full(len(coeffs), weight)
        else:
            mult = np.array(
                [
                    lam.offsets_for(lam.cosets.index_of_coords(c)).count(u)
                    for c in coeffs.tolist()
                ]
            )
        tproj = pos_f @ normals.T  # (K, F)
        chunk = max(1, min(len(xs), 4_000_000 // max(1, len(coeffs))))
        for a in range(0, len(xs), chunk):
            b = min(a + chunk, len(xs))
            mx = None
            for f in range(normals.shape[0]):
                exc = np.subtract.outer(proj[a:b, f], tproj[:, f])
                mx = exc if mx is None else np.maximum(mx, exc)
            inside = mx < -_MARGIN
            add = inside @ mult
            for i in range(b - a):
                counts[a + i] += int(add[i])
            for si, ki in zip(*np.nonzero(np.abs(mx) <= _MARGIN)):
                if mult[ki] == 0:
                    continue
                c1, c2, c3 = (int(t) for t in coeffs[ki])
                t_exact = (
                    shift + c1 * lat.basis[0] + c2 * lat.basis[1] + c3 * lat.basis[2]
                )
                loc = z.contains(xs[a + si] - t_exact)
                if loc is Location.BOUNDARY:
                    boundary.add(a + si)
                elif loc is Location.INTERIOR:
                    counts[a + si] += int(mult[ki])
    for i in boundary:
        counts[i] = None
    return counts, sorted(boundary)


def verify_level(
    z: Zonotope,
    lam: LatticeUnion | SlabChoice,
    window: tuple[Vec3, Vec3],
    samples: int = 200,
    seed: int = 0,
) -> CoverageReport:
    """Sample coverage at random window points and report the observed level.

    level is the common count when all samples agree, else None with the
    off-mode samples listed as violations. Boundary hits are resampled.
    density_consistent compares density * volume against the observed level.
    """
    if samples < 1:
        raise ValueError("need at least one sample")
    rng = random.Random(seed)
    lo, hi = window
    points: list[Vec3] = [_sample_point(rng, lo, hi) for _ in range(samples)]
    found: list[int | None] = [None] * samples
    pending = list(range(samples))
    while pending:
        got, border = _batch_counts(z, lam, [points[i] for i in pending])
        for slot, c in zip(pending, got):
            if c is not None:
                found[slot] = c
        retry = [pending[i] for i in border]
        for slot in retry:
            points[slot] = _sample_point(rng, lo, hi)
        pending = retry
    results = [(points[i], found[i]) for i in range(samples)]
    counts = Counter(c for _, c in results)
    dens = density(lam)
    if len(counts) == 1:
        level = next(iter(counts))
        violations: tuple[tuple[Vec3, int], ...] = ()
        consistent = dens * z.volume() == level
    else:
        level = None
        mode = counts.most_common(1)[0][0]
        violations = tuple((x, c) for x, c in results if c != mode)
        consistent = None
    return CoverageReport(level, samples, violations, dens, consistent, window, seed)
