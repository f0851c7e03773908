"""
Flattening to a weak Hopf algebra
=================================

Summing all homs of a Hopf category with finitely many objects gives a weak
Hopf algebra.  Delta(1) is the sum of j_x (x) j_x, so it differs from 1 (x) 1
as soon as there are two objects.
"""

from hopfcat.fixtures import pair, sweedler
from hopfcat.hopf import flatten_weak_hopf, solve_antipode

for name, A in (("pair groupoid", pair(2)), ("Sweedler", sweedler())):
    W = flatten_weak_hopf(A, solve_antipode(A).antipode)
    print(f"{name}: dim={W.data.dim} ok={W.ok} Delta(1) = 1 (x) 1: {W.delta_one_trivial}")
    for axiom, holds in W.report.items():
        print(f"  {axiom:36s} {holds}")
