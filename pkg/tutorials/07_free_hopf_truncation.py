"""
Truncated free Hopf categories
==============================

Words in letters a^(i) (copies of the homs, odd copies reversed) modulo the
semi-Hopf relations and the antipode equations, up to a weight L.  Bucket
dimensions are upper bounds that shrink as L grows at a fixed letter bound.
"""

from hopfcat.fixtures import kz2
from hopfcat.freehopf import free_hopf_truncated
from hopfcat.groupoid import FinGraph, free_category_linearization

loop = FinGraph(("x",), (("a", "x", "x"),))
for I in (1, 2):
    for L in range(1, 5):
        T = free_hopf_truncated(free_category_linearization(loop, L), L, I)
        print(f"I_max={I} L={L}:", [T.bucket_dims[("x", "x", l)] for l in range(L + 1)])

# a Hopf input collapses back to itself once the relations have room
for L in (2, 3):
    print(f"kZ2 at L={L}: dim", free_hopf_truncated(kz2(), L, 1).dim("*", "*"))
