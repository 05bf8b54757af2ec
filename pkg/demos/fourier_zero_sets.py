"""Frame leg measures and where their Fourier transforms vanish.

Each nondegenerate frame of a zonotope carries a signed measure on four
parallel edges, weighted +,-,-,+.  Its Fourier transform has a closed
form that vanishes on three families of planes, and those zero sets are
what couple a tiling's translate set to the geometry.  Check the closed
form against plain Simpson quadrature, probe the plane families exactly,
then count dual lattice points surviving the support bound.

Run: python3 demos/fourier_zero_sets.py
"""
from fractions import Fraction

import numpy as np

from zonotile import Vec3, Zonotope
from zonotile.lattices import Lattice
from zonotile.spectral import leg_ft, leg_measure, support_bound_check, zero_set_member
from zonotile.tiling import LatticeComponent, LatticeUnion

def s(v: Vec3) -> str:
    return "(" + ", ".join(str(c) for c in v) + ")"


cube = Zonotope((Vec3(1, 0, 0), Vec3(0, 1, 0), Vec3(0, 0, 1)))
fr = cube.frames()[0]
m = leg_measure(fr)
print(f"frame edge {s(fr.e)}, offsets {s(fr.tau1)} and {s(fr.tau2)}")
print("leg weights:", [w for _, _, w in m.legs()])


# -- quadrature cross-check ---------------------------------------------------
def simpson_ft(measure, xi, n=2000):
    xi = np.asarray(xi, dtype=float)
    total = 0j
    for base, edge, weight in measure.legs():
        a = np.array(base.as_floats())
        d = np.array(edge.as_floats())
        t = np.linspace(0.0, 1.0, n + 1)
        vals = np.exp(-2j * np.pi * (a[None, :] + t[:, None] * d[None, :]) @ xi)
        w = np.ones(n + 1)
        w[1:-1:2], w[2:-1:2] = 4.0, 2.0
        total += weight * np.linalg.norm(d) / (3.0 * n) * (w @ vals)
    return total


rng = np.random.default_rng(3)
for _ in range(4):
    xi = tuple(rng.uniform(-3, 3, 3))
    exact = leg_ft(m, xi)
    gap = abs(exact - simpson_ft(m, xi))
    print(f"xi = ({xi[0]:+.3f}, {xi[1]:+.3f}, {xi[2]:+.3f})  "
          f"|ft| = {abs(exact):.6f}  quadrature gap {gap:.2e}")
    assert gap < 1e-8

# points on the zero-set planes really annihilate the transform
on = Vec3(2, Fraction(1, 3), Fraction(1, 5))       # integer pairing with the edge
off = Vec3(Fraction(1, 2), Fraction(1, 3), Fraction(1, 5))
for xi in (on, off):
    member = zero_set_member(fr, xi)
    print(f"zero set contains {s(xi)}: {member}, "
          f"|ft| = {abs(leg_ft(m, xi)):.3e}")

# -- support bound ------------------------------------------------------------
# for the unit lattice tiling every dual lattice point in the ball must be
# killed, either by a zero set or by cancellation across components
lam = LatticeUnion((LatticeComponent(
    Lattice((Vec3(1, 0, 0), Vec3(0, 1, 0), Vec3(0, 0, 1))), Vec3(0, 0, 0)),))
rep = support_bound_check(cube, lam, radius=4)
print(f"support bound at radius 4: {rep.candidates} candidate frequencies, "
      f"{len(rep.cancelled)} cancelled, violations = {rep.violations}")
assert not rep.violations
