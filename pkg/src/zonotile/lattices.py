"""Rational lattices of rank 1..3 in R^3: duals, membership, cosets, enumeration."""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

from .linalg import (
    Vec3,
    VEC_ZERO,
    det3,
    det_int,
    hermite_row_basis,
    inverse_rows,
    rank_of,
    smith_normal_form,
)


class Lattice:
    """Free abelian group of rational 3-vectors with an explicit basis.

    Rank 1, 2, or 3. The dual coordinate rows are precomputed so membership
    tests and box enumeration are constant-size exact arithmetic.
    """

    def __init__(self, basis: Iterable[Vec3]):
        basis = tuple(basis)
        if not 1 <= len(basis) <= 3:
            raise ValueError("lattice rank must be 1, 2, or 3")
        if rank_of(basis) != len(basis):
            raise ValueError("basis not linearly independent")
        self.basis = basis
        self.rank = len(basis)
        # rows dual to the basis: coordinate i of p is coord_rows[i] . p
        if self.rank == 3:
            self._coord_rows = inverse_rows(*basis)
            self._span_normal = None
        elif self.rank == 2:
            b1, b2 = basis
            g11, g12, g22 = b1.dot(b1), b1.dot(b2), b2.dot(b2)
            det = Fraction(g11 * g22 - g12 * g12)
            self._coord_rows = (
                b1 * (g22 / det) - b2 * (g12 / det),
                b2 * (g11 / det) - b1 * (g12 / det),
            )
            self._span_normal = b1.cross(b2)
        else:
            (b1,) = basis
            self._coord_rows = (b1.geometric_inverse(),)
            self._span_normal = None  # rank 1 handled via cross test

    def __eq__(self, other) -> bool:
        return isinstance(other, Lattice) and self.basis == other.basis

    def __hash__(self) -> int:
        return hash(self.basis)

    def __repr__(self) -> str:
        return f"Lattice({list(self.basis)!r})"

    def in_span(self, p: Vec3) -> bool:
        if self.rank == 3:
            return True
        if self.rank == 2:
            return self._span_normal.dot(p) == 0
        return self.basis[0].cross(p).is_zero()

    def coords(self, p: Vec3) -> tuple[Fraction, ...] | None:
        """Rational coordinates of p in this basis, or None if p is off-span."""
        if not self.in_span(p):
            return None
        return tuple(r.dot(p) for r in self._coord_rows)

    def contains(self, p: Vec3) -> bool:
        c = self.coords(p)
        return c is not None and all(t.denominator == 1 for t in c)

    def covolume(self) -> Fraction:
        if self.rank != 3:
            raise ValueError("full-rank lattice required")
        return abs(det3(*self.basis))

    def point(self, coeffs: Sequence[int]) -> Vec3:
        p = VEC_ZERO
        for k, b in zip(coeffs, self.basis):
            p = p + b * k
        return p


def dual_lattice(lat: Lattice) -> Lattice:
    """Dual of a full-rank lattice: all x with <x, v> integral for v in lat."""
    if lat.rank != 3:
        raise ValueError("full-rank lattice required")
    return Lattice(inverse_rows(*lat.basis))


def subspace_dual(lat: Lattice) -> Lattice:
    """Dual of a rank-2 lattice taken inside its own plane (Gram inverse)."""
    if lat.rank != 2:
        raise ValueError("rank-2 lattice required")
    return Lattice(lat._coord_rows)


def lattice_from_vectors(vectors: Iterable[Vec3]) -> Lattice:
    """Lattice generated by finitely many rational vectors (not nec. a basis)."""
    vecs = [v for v in vectors if not v.is_zero()]
    if not vecs:
        raise ValueError("no nonzero generators")
    den = 1
    for v in vecs:
        for c in v:
            den = den * c.denominator // math.gcd(den, c.denominator)
    rows = [[int(c * den) for c in v] for v in vecs]
    basis_rows = hermite_row_basis(rows)
    return Lattice(Vec3.of(*r) * Fraction(1, den) for r in basis_rows)


def plane_section(lat: Lattice, normal: Vec3) -> Lattice:
    """Rank-2 sublattice of a full-rank lattice lying in the plane normal^perp.

    The kernel of v -> <v, normal> on lattice coordinates is computed by
    integer normal-form reduction, so the result is the whole section, not
    just a finite-index part of it.
    """
    if lat.rank != 3:
        raise ValueError("full-rank lattice required")
    if normal.is_zero():
        raise ValueError("zero normal")
    dots = [b.dot(normal) for b in lat.basis]
    den = 1
    for d in dots:
        den = den * d.denominator // math.gcd(den, d.denominator)
    row = [int(d * den) for d in dots]
    _, s, v = smith_normal_form([row])
    if s[0][0] == 0:
        raise ValueError("normal orthogonal to the whole lattice")
    vecs = []
    for j in (1, 2):
        pt = VEC_ZERO
        for i in range(3):
            pt = pt + v[i][j] * lat.basis[i]
        vecs.append(pt)
    return lattice_from_vectors(vecs)


class CosetEnumeration:
    """Cosets of a rank-2 sublattice g inside a full-rank lattice gamma.

    gamma/g is (free of rank 1) x (finite torsion); cosets are indexed by a
    single integer j via j = q * torsion_order + r with q the free coordinate
    and r in [0, torsion_order). rep(0) = 0, and rep(ell * torsion_order) =
    ell * gamma1, so the whole line gamma1 * Z is a subset of the reps.
    """

    def __init__(self, gamma: Lattice, sub: Lattice):
        if gamma.rank != 3 or sub.rank != 2:
            raise ValueError("rank mismatch: need full-rank gamma and rank-2 g")
        coords = []
        for b in sub.basis:
            c = gamma.coords(b)
            if c is None or any(t.denominator != 1 for t in c):
                raise ValueError("not a sublattice")
            coords.append([int(t) for t in c])
        # columns of m are g's basis in gamma coordinates
        m = [[coords[j][i] for j in range(2)] for i in range(3)]
        u, s, _v = smith_normal_form(m)
        d1, d2 = s[0][0], s[1][1]
        if d1 == 0 or d2 == 0:
            raise ValueError("not a sublattice")  # degenerate image
        self.gamma = gamma
        self.sub = sub
        self.d = (d1, d2)
        self.torsion_order = d1 * d2
        self._u = u
        du = det_int(u)
        if du not in (1, -1):
            raise ValueError("non-unimodular transform (internal error)")
        # adjugate times sign(det) is the exact integer inverse of a unimodular u
        self._u_inv = [
            [
                du
                * (u[(j + 1) % 3][(i + 1) % 3] * u[(j + 2) % 3][(i + 2) % 3]
                   - u[(j + 1) % 3][(i + 2) % 3] * u[(j + 2) % 3][(i + 1) % 3])
                for j in range(3)
            ]
            for i in range(3)
        ]
        self.gamma1 = self.rep(self.torsion_order)

    def _from_snf_coords(self, y: Sequence[int]) -> Vec3:
        x = [sum(self._u_inv[i][k] * y[k] for k in range(3)) for i in range(3)]
        return self.gamma.point(x)

    def rep(self, j: int) -> Vec3:
        d1, d2 = self.d
        q, r = divmod(j, self.torsion_order)
        r1, r2 = divmod(r, d2)
        return self._from_snf_coords((r1, r2, q))

    def index_of_coords(self, x: Sequence[int]) -> int:
        """Coset index from gamma-basis coordinates (integer arithmetic only)."""
        y = [sum(self._u[i][k] * x[k] for k in range(3)) for i in range(3)]
        d1, d2 = self.d
        r1, r2, q = y[0] % d1, y[1] % d2, y[2]
        return q * self.torsion_order + (r1 * d2 + r2)

    def index_of(self, p: Vec3) -> int:
        """Index of the coset of p; p must be a point of gamma."""
        c = self.gamma.coords(p)
        if c is None or any(t.denominator != 1 for t in c):
            raise ValueError("point not in gamma")
        return self.index_of_coords([int(t) for t in c])


def coset_reps(gamma: Lattice, sub: Lattice) -> CosetEnumeration:
    return CosetEnumeration(gamma, sub)


def lattice_points_in_box(
    lat: Lattice, shift: Vec3, lo: Vec3, hi: Vec3
) -> list[Vec3]:
    """Points of shift + lat whose candidate coordinates fit the box [lo, hi].

    The returned list is a superset of (shift + lat) intersected with the box
    (exact for rank 3; for lower rank the plane/line section of the box is
    covered without a final box filter, callers apply their own membership
    predicate). Complete: every lattice point inside the box is produced.
    """
    corners = [
        Vec3(cx, cy, cz)
        for cx in (lo.x, hi.x)
        for cy in (lo.y, hi.y)
        for cz in (lo.z, hi.z)
    ]
    ranges = []
    for row in lat._coord_rows:
        vals = [row.dot(c - shift) for c in corners]
        ranges.append(range(math.ceil(min(vals)), math.floor(max(vals)) + 1))
    points = []
    if lat.rank == 3:
        b1, b2, b3 = lat.basis
        for k1 in ranges[0]:
            p1 = shift + b1 * k1
            for k2 in ranges[1]:
                p2 = p1 + b2 * k2
                for k3 in ranges[2]:
                    points.append(p2 + b3 * k3)
    elif lat.rank == 2:
        b1, b2 = lat.basis
        for k1 in ranges[0]:
            p1 = shift + b1 * k1
            for k2 in ranges[1]:
                points.append(p1 + b2 * k2)
    else:
        (b1,) = lat.basis
        for k1 in ranges[0]:
            points.append(shift + b1 * k1)
    return points
