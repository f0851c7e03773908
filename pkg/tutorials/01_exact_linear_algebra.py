"""
Exact linear algebra
====================

Every computation runs over Q or a prime field F_p with exact scalars.
"""

from hopfcat.kernel import GF, ExactMatrix, IntMatrix, Q, kernel_basis, kron, rref, snf, solve

# row reduction and kernels over Q
M = ExactMatrix.from_rows(Q, [[1, 2], [2, 4]])
R, pivots, rank = rref(M)
print("rref:", R, "pivots", pivots, "rank", rank)
print("kernel:", [tuple(map(str, v)) for v in kernel_basis(M)])

# solving A X = B returns a particular solution and the kernel
sol = solve(ExactMatrix.from_rows(Q, [[1, 1]]), ExactMatrix.from_rows(Q, [[1]]))
print("particular:", sol.particular, "kernel:", [tuple(map(str, v)) for v in sol.kernel])

# the same integer matrix is singular over F_2 and invertible over F_3
for field in (GF(2), GF(3)):
    A = ExactMatrix.from_rows(field, [[1, 1], [1, 3]])
    print(field, "kernel of [[1,1],[1,3]]:", [tuple(map(str, v)) for v in kernel_basis(A)])

# Kronecker products index V (x) W by i * dim W + j
print("kron:", kron(ExactMatrix.from_rows(Q, [[1, 2]]), ExactMatrix.from_rows(Q, [[3], [4]])))

# Smith normal form over the integers
U, D, V = snf(IntMatrix.from_rows([[2, 4], [6, 8]]))
print("invariant factors of [[2,4],[6,8]]:", D.diagonal())
