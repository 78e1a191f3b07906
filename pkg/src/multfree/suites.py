"""Built-in scenario suites."""

from __future__ import annotations

from .verdicts import Scenario


def _gelfand_pairs() -> list[dict]:
    out = []
    for n in (3, 4, 5):
        for p in (2, 3, 5):
            out.append(dict(id=f"gp-sym{n}-gf{p}", pipeline="gelfand_pair", field=f"gf({p})", group=f"sym({n})",
                            subgroup="young(n-1)", expect={"hecke_dim": 2, "hecke_commutative": True}))
    out.append(dict(id="gp-sym4-whole", pipeline="gelfand_pair", field="gf(3)", group="sym(4)", subgroup="whole",
                    expect={"hecke_dim": 1}))
    for e in (1, 2):
        out.append(dict(id=f"gp-gl2-3-cartan-chi{e}", pipeline="mult_free_triple", field="gf(5,2)", group="gl(2,3)",
                        subgroup="cartan", character=f"multchar({e})", expect={"hecke_commutative": True}))
    return out


def _gelfand_graev() -> list[dict]:
    return [
        dict(id="gg-gl2-2-gf3", pipeline="mult_free_triple", field="gf(3)", group="gl(2,2)",
             subgroup="unitriangular", character="gg(2)", expect={"hecke_dim": 2, "multiplicity_free": True}),
        dict(id="gg-gl2-3-gf4", pipeline="mult_free_triple", field="gf(2,2)", group="gl(2,3)",
             subgroup="unitriangular", character="gg(3)", expect={"hecke_dim": 6, "multiplicity_free": True}),
        dict(id="gg-gl2-3-gf7-hecke", pipeline="hecke_comm", field="gf(7)", group="gl(2,3)",
             subgroup="unitriangular", character="gg(3)", expect={"hecke_dim": 6, "hecke_commutative": True}),
        dict(id="gg-gl2-3-gf49", pipeline="mult_free_triple", field="gf(7,2)", group="gl(2,3)",
             subgroup="unitriangular", character="gg(3)", expect={"hecke_dim": 6, "multiplicity_free": True}),
        dict(id="gg-gl2-3-gf4-trick", pipeline="gelfand_trick", field="gf(2,2)", group="gl(2,3)",
             subgroup="unitriangular", character="gg(3)", iota="transpose"),
    ]


# modules of dim <= 12 over GF(2), GF(3), GF(4), GF(5)
ZOO = [
    ("sym(3)", "gf(2)", "young(2)", None, "perm"),
    ("sym(3)", "gf(2)", None, None, "regular"),
    ("sym(3)", "gf(3)", None, None, "regular"),
    ("sym(3)", "gf(5)", None, None, "regular"),
    ("sym(3)", "gf(3)", "young(2)", None, "perm"),
    ("sym(3)", "gf(2)", None, None, "sum(trivial,trivial)"),
    ("sym(3)", "gf(3)", None, None, "sum(trivial,sign)"),
    ("cyclic(2)", "gf(2)", None, None, "regular"),
    ("cyclic(3)", "gf(2)", None, None, "regular"),
    ("cyclic(3)", "gf(3)", None, None, "regular"),
    ("cyclic(3)", "gf(2,2)", None, None, "regular"),
    ("cyclic(4)", "gf(2)", None, None, "regular"),
    ("cyclic(5)", "gf(5)", None, None, "regular"),
    ("prod(cyclic(2),cyclic(2))", "gf(2)", None, None, "regular"),
    ("quaternion8", "gf(2)", None, None, "regular"),
    ("dihedral(4)", "gf(2)", None, None, "regular"),
    ("dihedral(5)", "gf(2)", None, None, "regular"),
    ("quaternion8", "gf(3)", None, None, "irr(4)"),
    ("alt(4)", "gf(2,2)", "gens[(1 2 3)]", None, "perm"),
    ("alt(4)", "gf(2)", "stab(4)", None, "perm"),
    ("alt(4)", "gf(2,2)", "gens[(1 2 3)]", None, "nonsplit_pair"),
    ("sym(4)", "gf(2)", "young(3)", None, "perm"),
    ("sym(4)", "gf(3)", "young(3)", None, "perm"),
    ("sym(4)", "gf(2)", "young(2)", None, "perm"),
    ("sym(4)", "gf(2)", None, None, "irr(1)"),
    ("gl(2,2)", "gf(2)", None, None, "natural"),
    ("gl(2,2)", "gf(2)", None, None, "dual(natural)"),
    ("gl(2,3)", "gf(3)", None, None, "natural"),
    ("gl(2,2)", "gf(3)", "unitriangular", "gg(2)", "induced"),
]


def _zoo_id(group: str, field: str, sub, module: str) -> str:
    raw = f"{group}-{field}-{module}" + (f"-{sub}" if sub else "")
    keep = "".join(c if c.isalnum() else "-" for c in raw)
    while "--" in keep:
        keep = keep.replace("--", "-")
    return "sa-" + keep.strip("-")


def _structure_audit() -> list[dict]:
    out = []
    for group, field, sub, char, module in ZOO:
        d = dict(id=_zoo_id(group, field, sub, module), pipeline="structure_audit", field=field, group=group,
                 module=module)
        if sub:
            d["subgroup"] = sub
        if char:
            d["character"] = char
        out.append(d)
    return out


def _non_examples() -> list[dict]:
    return [
        dict(id="ne1-quaternion8-gf2", pipeline="non_example", field="gf(2)", group="quaternion8", module="regular",
             expect={"end_dim": 8, "end_commutative": False, "inventory_dims": [1], "socle_dim": 1}),
        dict(id="ne1-dihedral4-gf2", pipeline="non_example", field="gf(2)", group="dihedral(4)", module="regular",
             expect={"end_dim": 8, "end_commutative": False, "inventory_dims": [1], "socle_dim": 1}),
        dict(id="ne2-alt4-gf4", pipeline="non_example", field="gf(2,2)", group="alt(4)", subgroup="gens[(1 2 3)]",
             module="nonsplit_pair", expect={"end_commutative": True, "multiplicity_free": False}),
        dict(id="thm-gg-gl2-2-gf3", pipeline="thm_multfree", field="gf(3)", group="gl(2,2)",
             subgroup="unitriangular", character="gg(2)", module="induced",
             expect={"end_commutative": True, "self_injective": "TRUE", "multiplicity_free": True}),
        dict(id="thm-sym3-perm-gf2", pipeline="thm_multfree", field="gf(2)", group="sym(3)", subgroup="young(2)",
             module="perm"),
    ]


def _properties() -> list[dict]:
    out = [
        dict(id="st-gl2-2", pipeline="steinberg_untwisted", field="gf(2)", group="gl(2,2)"),
        dict(id="st-gl2-3", pipeline="steinberg_untwisted", field="gf(3)", group="gl(2,3)"),
        dict(id="cusp-gl2-2-gf5", pipeline="cuspidal_count", field="gf(5)", group="gl(2,2)",
             expect={"count": 1, "cuspidal_dims": [1]}),
        dict(id="cusp-gl2-3-gf25", pipeline="cuspidal_count", field="gf(5,2)", group="gl(2,3)",
             expect={"count": 3, "cuspidal_dims": [2, 2, 2]}),
        dict(id="tp-cyclic3-gf4", pipeline="triple_product", field="gf(2,2)", group="cyclic(3)"),
        dict(id="tp-cyclic3-gf7", pipeline="triple_product", field="gf(7)", group="cyclic(3)"),
        dict(id="tp-sym3-gf7", pipeline="triple_product", field="gf(7)", group="sym(3)"),
        dict(id="tp-quaternion8-gf3", pipeline="triple_product", field="gf(3)", group="quaternion8"),
        dict(id="res-sym3-irr2-gf5", pipeline="restriction_multfree", field="gf(5)", group="sym(3)",
             subgroup="young(2)", module="irr(2)", expect={"end_dim": 2, "multiplicity_vector": [1, 1]}),
        dict(id="res-sym3-triv-gf2", pipeline="restriction_multfree", field="gf(2)", group="sym(3)",
             subgroup="young(2)", module="trivial"),
        dict(id="res-gl2-2-natural-u", pipeline="restriction_multfree", field="gf(2)", group="gl(2,2)",
             subgroup="unitriangular", module="natural"),
        dict(id="trick-sym4-inversion", pipeline="gelfand_trick", field="gf(2)", group="sym(4)",
             subgroup="young(3)", iota="inversion"),
        dict(id="trick-gl2-3-torus-transpose", pipeline="gelfand_trick", field="gf(5)", group="gl(2,3)",
             subgroup="torus", iota="transpose"),
    ]
    infra = [
        ("sym(3)", "gf(3)", "young(2)", "trivial", "perm"),
        ("sym(3)", "gf(5)", "young(2)", "sign", None),
        ("sym(4)", "gf(2)", "young(3)", "trivial", "perm"),
        ("sym(4)", "gf(5)", "young(2)", "trivial", None),
        ("gl(2,2)", "gf(3)", "unitriangular", "gg(2)", "regular"),
        ("gl(2,3)", "gf(2,2)", "unitriangular", "gg(3)", None),
        ("gl(2,3)", "gf(5,2)", "cartan", "multchar(1)", None),
        ("quaternion8", "gf(3)", "gens[[[0,2],[1,0]]]", "trivial", None),
    ]
    for group, field, sub, char, module in infra:
        d = dict(id=f"infra-{_zoo_id(group, field, sub, char)[3:]}", pipeline="infrastructure", field=field,
                 group=group, subgroup=sub, character=char)
        if module:
            d["module"] = module
        out.append(d)
    return out


SUITES = {
    "gelfand-pairs": _gelfand_pairs,
    "gelfand-graev": _gelfand_graev,
    "structure-audit": _structure_audit,
    "non-examples": _non_examples,
    "properties": _properties,
}


def suite_scenarios(name: str) -> list[Scenario]:
    if name not in SUITES:
        raise KeyError(f"unknown suite {name!r}; choose from {', '.join(SUITES)}")
    return [Scenario.from_dict(d, f"{name}:{d['id']}") for d in SUITES[name]()]
