"""
Groupoids
=========

Over sets the free Hopf category on a graph is the free groupoid, and the
Hopf core of a category is its maximal subgroupoid.
"""

from hopfcat.groupoid import FinGraph, core_groupoid, free_groupoid_words, monoid_category, oracle_compare

loop = FinGraph(("x",), (("a", "x", "x"),))
W = free_groupoid_words(loop, 2)
print("reduced words on a loop up to length 2:", [str(w) for l in range(3) for w in W[("x", "x", l)]])

theta = FinGraph(("x", "y"), (("a", "x", "y"), ("b", "x", "y"), ("c", "y", "x")))
rep = oracle_compare(theta, 3)
print("free Hopf dims equal reduced-word counts on theta:", rep.equal)

M = monoid_category(["1", "t"], {("1", "1"): "1", ("1", "t"): "t", ("t", "1"): "t", ("t", "t"): "t"}, "1")
print("core of {1, t}:", sorted(core_groupoid(M).arrows))
