"""
Modules, flatness and jointly monic families
============================================

Finitely generated modules over Z and Z/n are handled through presentations
and the Smith normal form.
"""

from hopfcat.kernel import GF, ExactMatrix, IntMatrix
from hopfcat.modflat import (
    ModMap,
    cyclic_module,
    flatness_test_finite_ring,
    free_module,
    is_jointly_monic,
    linear_jointly_monic,
    preserves_jointly_monic,
    tensor_families,
    tensor_fg,
)

print("Z/4 (x) Z/6 =", tensor_fg(cyclic_module(4), cyclic_module(6)))
print("Z/2 (x) Z/3 =", tensor_fg(cyclic_module(2), cyclic_module(3)))

Z = free_module(1)
p2, p3 = ModMap(Z, cyclic_module(2), IntMatrix.from_rows([[1]])), ModMap(Z, cyclic_module(3), IntMatrix.from_rows([[1]]))
print("{Z -> Z/2, Z -> Z/3} jointly monic:", is_jointly_monic([p2, p3]))

print("Z/2 over Z/4 flat:", flatness_test_finite_ring(cyclic_module(2, 4)))
print("Z/2 over Z/6 flat:", flatness_test_finite_ring(cyclic_module(2, 6)))

# multiplication by 2 from Z/2 into Z/4 is monic, but tensoring with Z/2 kills it
times2 = ModMap(cyclic_module(2, 4), free_module(1, 4), IntMatrix.from_rows([[2]]))
print("Z/2 preserves {times 2}:", preserves_jointly_monic(cyclic_module(2, 4), [times2]))

# over a field every family stays jointly monic after tensoring
F = GF(5)
fs = [ExactMatrix.from_rows(F, [[1, 0]]), ExactMatrix.from_rows(F, [[0, 1]])]
gs = [ExactMatrix.identity(F, 2)]
print("tensored family over F5 jointly monic:", linear_jointly_monic(tensor_families(fs, gs)))
