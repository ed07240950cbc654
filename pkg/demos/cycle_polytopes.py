"""Dihedral and reflection symmetry of symmetric edge polytopes of cycles.

Compares the computed H* against the closed forms for small cycles.
Run: python3 demos/cycle_polytopes.py
"""
from eqehrhart import reproduce as rep
from eqehrhart.families import ohsugi_h

for d in range(3, 8):
    print(f"C_{d}: h* = {list(ohsugi_h(d).coeffs)}")

for p in (3, 5):
    print(rep.thm33(p))
for d in (4, 5, 6):
    print(rep.thm37(d))
for d in (5, 6):
    print(rep.prop32(d))
