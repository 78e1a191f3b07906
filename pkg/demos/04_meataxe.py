"""
Composition factors with the Meataxe
====================================

Chop modules into irreducibles, test absolute irreducibility and collect
the irreducible inventory of a group.
"""

import numpy as np

from multfree import SplittingFieldInsufficient, chop, irreducible_inventory, parse_field, parse_group
from multfree.meataxe import ModuleOverAlgebra, is_irreducible
from multfree.reps import regular_rep

g = parse_group("sym(4)")
for spec in ("gf(2)", "gf(3)", "gf(5)"):
    F = parse_field(spec)
    report = chop(ModuleOverAlgebra.from_representation(regular_rep(g, F)))
    print(f"F[S4] over {spec}: factor dims {report.dims()} multiplicities {report.multiplicities}")

# the inventory lists each irreducible once; at a non-modular prime the
# squares of the dimensions add up to |G|
inv = irreducible_inventory(g, parse_field("gf(5)"))
print("inventory over GF(5):", inv.dims(), "sum of squares", sum(d * d for d in inv.dims()))

# a splitting field matters: GF(2) does not contain cube roots of unity
try:
    irreducible_inventory(parse_group("cyclic(3)"), parse_field("gf(2)"))
except SplittingFieldInsufficient as e:
    print("C3 over GF(2):", e, "| suggested degree", e.suggested_k)
print("C3 over GF(4):", irreducible_inventory(parse_group("cyclic(3)"), parse_field("gf(2,2)")).dims())

# irreducibility comes with a certificate (a proper invariant subspace when it fails)
F = parse_field("gf(2)")
m = ModuleOverAlgebra.from_representation(regular_rep(parse_group("cyclic(2)"), F))
res = is_irreducible(m, np.random.default_rng(0))
print("F2[C2] irreducible?", res.irreducible, "witness", res.witness.vectors())
