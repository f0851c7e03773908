"""
Antipodes
=========

The antipode is solved as a linear system per pair of objects.  It is
unique when it exists; otherwise the solver returns a certificate y with
yA = 0 and yb != 0.
"""

from hopfcat.fixtures import monoid_t, sweedler
from hopfcat.groupoid import linearize, linearized_inverse, pair_groupoid
from hopfcat.hopf import antipode_power, check_antipode_properties, solve_antipode
from hopfcat.kernel import ExactMatrix, Q

# Sweedler's 4-dimensional Hopf algebra: S has order 4
A = sweedler()
res = solve_antipode(A)
S = res.antipode
print("Sweedler S:", S[("*", "*")])
print("S^2 == id:", antipode_power(A, S, "*", "*", 2) == ExactMatrix.identity(Q, 4))
print("S^4 == id:", antipode_power(A, S, "*", "*", 4) == ExactMatrix.identity(Q, 4))
print("axioms hold:", check_antipode_properties(A, S) == [])

# on a linearized groupoid the antipode inverts arrows
C = pair_groupoid(["x", "y"])
print("pair groupoid antipode is inversion:", solve_antipode(linearize(C)).antipode == linearized_inverse(C))

# the monoid {1, t} with t t = t has none
res = solve_antipode(monoid_t())
print("monoid antipode exists:", res.exists, "certificate:", [str(c) for c in res.certificates[("*", "*")]])
