"""Half-open pavings, exact volumes, and OFF mesh export.

A zonotope decomposes into half-open parallelepiped cells, one per
independent generator triple, with cell volumes summing exactly to the
body volume.  Spot-check the partition on random interior points, then
write the boundary mesh to an OFF file.

Run: python3 demos/paving_and_mesh.py
"""
from fractions import Fraction
import random

from zonotile import Location, Vec3, Zonotope
from zonotile.io import export_off

rd = Zonotope((Vec3(1, 0, 0), Vec3(0, 1, 0), Vec3(0, 0, 1), Vec3(1, 1, 1)))
paving = rd.pave()
vols = [str(c.volume()) for c in paving.cells]
print(f"{len(paving.cells)} cells with volumes {vols}")
print(f"sum {paving.total_volume()} == zonotope volume {rd.volume()}")
assert paving.total_volume() == rd.volume()

# every interior point lands in exactly one half-open cell
rng = random.Random(5)
lo, hi = rd.bounding_box()
hits = 0
while hits < 300:
    p = Vec3(*(a + (b - a) * Fraction(rng.getrandbits(40), 2**40)
               for a, b in zip(lo, hi)))
    if rd.contains(p) is not Location.INTERIOR:
        continue
    hits += 1
    assert paving.count(p) == 1
print("300 interior points, each covered by exactly one cell")

path = "rhombic_dodecahedron.off"
with open(path, "w") as fh:
    fh.write(export_off(rd))
counts = open(path).read().splitlines()[1]
print(f"wrote {path} (vertices/faces/edges: {counts})")
