"""
Gelfand pairs and Hecke algebras
================================

For (S_n, S_{n-1}) the Hecke algebra has one basis vector per double coset,
is commutative, and the permutation module is multiplicity free, even when
the characteristic divides the group order.
"""

from multfree import (
    HeckeAlgebra,
    end_algebra,
    induce,
    irreducible_inventory,
    multiplicity_vector,
    parse_field,
    parse_group,
    parse_subgroup,
)
from multfree.homalg import hecke_iso_certificate
from multfree.reps import trivial_rep

for n in (3, 4, 5):
    for p in (2, 3, 5):
        g = parse_group(f"sym({n})")
        h = parse_subgroup(g, "young(n-1)")
        F = parse_field(f"gf({p})")
        eta = trivial_rep(h, F)
        hecke = HeckeAlgebra(g, eta)
        ind = induce(eta, g)
        inv = irreducible_inventory(g, F)
        print(f"S{n} over GF({p}): Hecke dim {hecke.dim}, commutative {hecke.is_commutative()}, "
              f"multiplicities {multiplicity_vector(ind, inv)}")

# the convolution algebra is isomorphic to End_G of the induced module;
# the certificate checks the map on a basis and on all products
g = parse_group("sym(4)")
h = parse_subgroup(g, "young(2)")
F = parse_field("gf(5)")
eta = trivial_rep(h, F)
hecke = HeckeAlgebra(g, eta)
print("\n(S4, S2): Hecke dim", hecke.dim, "commutative", hecke.is_commutative())
print("End dim", end_algebra(induce(eta, g)).dim, "certificate ok:", hecke_iso_certificate(g, h, eta).ok)
