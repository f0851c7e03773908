"""
Coalgebras and the cofree factorization
=======================================

Given a coalgebra C and a linear map gamma: C -> V, the couniversal map to
the cofree coalgebra on V has kernel the largest coideal inside ker gamma.
"""

from hopfcat.coalg import (
    check_coalgebra,
    cofree_factorization,
    cop,
    equalizer_coalg,
    grouplike_coalgebra,
    largest_coideal_in,
    matrix_coalgebra,
)
from hopfcat.kernel import ExactMatrix, Q, Subspace

C = grouplike_coalgebra(Q, 2)
print("grouplike coalgebra valid:", check_coalgebra(C) == [])

# gamma sums the two grouplikes: g - h is a coideal, so the image is one-dimensional
F = cofree_factorization(C, ExactMatrix.from_rows(Q, [[1, 1]]))
print("kernel:", [tuple(map(str, v)) for v in F.kernel.basis], "image dim:", F.image.dim, "stabilized at k =", F.stabilization_index)

# the largest coideal inside the whole space is ker epsilon
print("largest coideal in C:", [tuple(map(str, v)) for v in largest_coideal_in(C, Subspace.whole(Q, 2)).basis])

# the 2x2 matrix coalgebra and its co-opposite
Mc = matrix_coalgebra(Q, 2)
print("cop twice is the identity:", cop(cop(Mc)) == Mc)

# equalizer of the identity and the swap of grouplikes
swap = ExactMatrix.from_rows(Q, [[0, 1], [1, 0]])
E, inc = equalizer_coalg(ExactMatrix.identity(Q, 2), swap, C, C)
print("equalizer dimension:", E.dim)
