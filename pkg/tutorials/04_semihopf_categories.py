"""
Semi-Hopf categories and their variants
=======================================

A semi-Hopf category is a linear category whose homs are coalgebras and
whose composition and units are coalgebra maps.
"""

from hopfcat.fixtures import hopf_fixtures, pair
from hopfcat.groupoid import FinGraph
from hopfcat.kernel import Q
from hopfcat.vcat import check_semihopf, free_vcategory_truncated, variant

for name, A in hopf_fixtures(Q).items():
    print(f"{name:16s} objects={len(A.objects)} valid={check_semihopf(A) == []}")

# op, cop and opcop are involutions and keep the axioms
A = pair(2)
for which in ("op", "cop", "opcop"):
    B = variant(A, which)
    print(which, "valid:", check_semihopf(B) == [], "involution:", variant(B, which) == A)

# the free linear category on a loop, truncated at path length 3
G = FinGraph(("x",), (("a", "x", "x"),)).to_vgraph()
T = free_vcategory_truncated(G, 3)
print("free category bucket dims:", T.bucket_dims())
