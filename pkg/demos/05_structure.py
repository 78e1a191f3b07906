"""
Submodule lattices, radical and socle
=====================================

Relative projectivity and injectivity are decided over the whole submodule
lattice. The regular module of Q_8 over GF(2) has a noncommutative
endomorphism ring and is still multiplicity free.
"""

from multfree import parse_field, parse_group, parse_subgroup, submodule_lattice
from multfree.homalg import end_algebra
from multfree.reps import permutation_rep, regular_rep
from multfree.structure import (
    radical_and_socle,
    structure_report,
    verify_lemma_rad_end_characterization,
    verify_rad_end_theorem,
)

g = parse_group("sym(3)")
perm = permutation_rep(g, parse_subgroup(g, "young(2)"), parse_field("gf(2)"))
lat = submodule_lattice(perm)
print("perm module of S3 over GF(2):", len(lat), "submodules of dims", [s.dim for s in lat.nodes])
print("hasse edges:", lat.hasse_edges)

q8 = regular_rep(parse_group("quaternion8"), parse_field("gf(2)"))
rs = radical_and_socle(q8)
print("\nF2[Q8]: radical dim", rs.radical.dim, "socle dim", rs.socle.dim)
end = end_algebra(q8)
print("End dim", end.dim, "commutative", end.is_commutative())
print("flags", structure_report(q8).flags())

# the radical of End is measured against maps that factor through the radical
# (projective flavour) or kill the socle (injective flavour)
c4 = regular_rep(parse_group("cyclic(4)"), parse_field("gf(2)"))
for flavor in ("projective", "injective"):
    print(flavor, verify_rad_end_theorem(c4, flavor).as_dict())
    lemma = verify_lemma_rad_end_characterization(c4, flavor)
    print("  element-wise check:", lemma.mode, lemma.checked, "elements, holds", lemma.holds)
