"""
Gelfand-Graev modules of GL_2
=============================

Induce a nondegenerate character of the unitriangular group U to GL_2(q).
Over GF(4) the characteristic divides |GL_2(3)| = 48, and the module is
still multiplicity free.
"""

from multfree import HeckeAlgebra, parse_field, parse_group, parse_subgroup
from multfree.reps import gelfand_graev_character
from multfree.verdicts import Scenario, run_scenario

g = parse_group("gl(2,3)")
u = parse_subgroup(g, "unitriangular")
for spec in ("gf(2,2)", "gf(7)", "gf(7,2)"):
    F = parse_field(spec)
    psi = gelfand_graev_character(u, F.root_of_unity(3), F)
    hecke = HeckeAlgebra(g, psi)
    print(f"{spec}: Hecke dim {hecke.dim}, commutative {hecke.is_commutative()}")

# the full pipeline also decomposes the induced module; GF(7) lacks the
# eighth roots of unity the cuspidal modules need, so it stops there
for spec in ("gf(2,2)", "gf(7)", "gf(7,2)"):
    sc = Scenario.from_dict(dict(id=f"gg-{spec}", pipeline="mult_free_triple", field=spec, group="gl(2,3)",
                                 subgroup="unitriangular", character="gg(3)"))
    r = run_scenario(sc)
    print(r.summary())
