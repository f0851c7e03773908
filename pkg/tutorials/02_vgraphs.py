"""
V-graphs, morphisms and limits
==============================

A V-graph is a set of objects with a vector space for every ordered pair.
Morphisms are monic or epic exactly when they are so objectwise and homwise.
"""

from hopfcat.kernel import ExactMatrix, Q
from hopfcat.vgraph import Diagram, VGraph, VGraphMorphism, classify_morphism, limit_finite_diagram

A = VGraph(("x",), {("x", "x"): 1})
B = VGraph(("u", "v"), {("u", "u"): 2, ("u", "v"): 1})

# x goes to u and its loop to the first basis vector of B_uu
f = VGraphMorphism(A, B, {"x": "u"}, {("x", "x"): ExactMatrix.from_rows(Q, [[1], [0]])})
c = classify_morphism(f)
print("mono:", c.mono, "epi:", c.epi)
for w in c.witnesses:
    print("  witness:", *(tuple(map(str, v)) if isinstance(v, tuple) and v and not isinstance(v[0], str) else v for v in w))

# the product of A with itself
P, legs = limit_finite_diagram(Diagram({"a": A, "b": A}))
print("product objects:", P.objects, "hom dims:", {p: P.dim(*p) for p in P.pairs()})
