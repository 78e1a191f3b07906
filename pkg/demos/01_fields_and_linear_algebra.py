"""
Exact arithmetic over GF(p^k)
=============================

Field elements, stacked matrices and subspaces.
"""

import numpy as np

from multfree import Matrix, Subspace, make_field
from multfree.field import root_of_unity
from multfree.linalg import kernel, rref

# GF(4) is built on the lowest irreducible quadratic over GF(2)
F = make_field(2, 2)
print(F, "modulus (low to high):", F.modulus)
a = F(2)  # the class of x
print("a =", a, " a^2 =", a * a, " a^3 =", a ** 3, " 1/a =", a.inv(), " order", a.order())

# a primitive cube root of unity in GF(4)
zeta = root_of_unity(F, 3)
print("zeta of order 3:", zeta, [zeta ** i for i in range(4)])

# matrices hold integer codes; here row i+1 is x times row i, so the rank is 1
m = Matrix.from_codes(F, np.array([[1, 2, 3], [2, 3, 1], [3, 1, 2]]))
r, rank = rref(m)
print("rank", rank)
print(r.tolist())
print("kernel basis:", kernel(m).vectors())

# subspaces are kept in reduced row echelon form, so equality is exact
s = Subspace.span(F, [[1, 0, 1], [0, 1, 1]], 3)
t = Subspace.span(F, [[1, 1, 0]], 3)
print("dim(s + t) =", (s + t).dim, " dim(s & t) =", s.intersect(t).dim)
