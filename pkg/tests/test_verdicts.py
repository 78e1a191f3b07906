import json

import pytest

from multfree.errors import SpecParseError
from multfree.specs import parse_field, parse_group, parse_subgroup
from multfree.verdicts import (
    Context,
    Scenario,
    VerdictReport,
    build_module,
    exit_code,
    load_scenarios,
    machine_report,
    run_gelfand_pair,
    run_scenario,
    run_scenarios,
    run_steinberg_untwisted,
    run_thm_multfree,
    theorem_gate,
)


def sc(**kw):
    base = dict(id="t", pipeline="gelfand_pair", field="gf(2)", group="sym(3)", subgroup="young(2)")
    base.update(kw)
    return Scenario.from_dict(base, "t")


@pytest.mark.parametrize("kw,loc", [
    (dict(colour="red"), "t"),
    (dict(pipeline="gelfand"), "t.pipeline"),
    (dict(field="gf(4)"), "t.field"),
    (dict(group="sym(x)"), "t.group"),
    (dict(subgroup="borel"), "t.subgroup"),
    (dict(character="zeta"), "t.character"),
    (dict(module="tensor(a,b)"), "t.module"),
    (dict(iota="conjugation", pipeline="gelfand_trick"), "t.iota"),
    (dict(caps={"memory": 3}), "t.caps"),
    (dict(subgroup=None), "t"),
    (dict(group="sym(5)", subgroup="trivial", caps={"induced_dim": 100}), "t"),
])
def test_scenario_validation(kw, loc):
    d = dict(id="t", pipeline="gelfand_pair", field="gf(2)", group="sym(3)", subgroup="young(2)")
    d.update(kw)
    d = {k: v for k, v in d.items() if v is not None}
    with pytest.raises(SpecParseError) as e:
        Scenario.from_dict(d, "t")
    assert e.value.location == loc


def test_missing_required_key():
    with pytest.raises(SpecParseError, match="missing required key 'field'"):
        Scenario.from_dict({"id": "x", "pipeline": "gelfand_pair", "group": "sym(3)"}, "x")


def test_gelfand_pair_s4():
    g = parse_group("sym(4)")
    r = run_gelfand_pair(g, parse_subgroup(g, "young(3)"), parse_field("gf(2)"))
    q = r.quantities
    assert r.verdict == "PASS"
    assert q["hecke_dim"] == 2 and q["hecke_commutative"] and q["iso_certified"]
    assert q["end_dim_equals_double_cosets"] and max(q["multiplicity_vector"]) <= 1


def test_whole_group_pair():
    r = run_scenario(sc(subgroup="whole", group="sym(4)", field="gf(3)"))
    assert r.verdict == "PASS" and r.quantities["hecke_dim"] == 1


def test_gelfand_graev_gl2_2():
    r = run_scenario(sc(pipeline="mult_free_triple", field="gf(3)", group="gl(2,2)", subgroup="unitriangular",
                        character="gg(2)"))
    assert r.verdict == "PASS"
    assert r.quantities["hecke_commutative"] and r.quantities["multiplicity_free"]
    assert r.quantities["antecedent"] and r.quantities["consequent"]


def test_gelfand_trick_identity_on_abelian():
    r = run_scenario(sc(pipeline="gelfand_trick", group="cyclic(6)", subgroup="trivial", iota="identity", field="gf(7)"))
    assert r.verdict == "PASS"
    assert r.quantities["trick_applies"] and r.quantities["hecke_commutative"]
    assert r.quantities["hecke_dim"] == 6


def test_gelfand_trick_not_applicable_is_noted():
    r = run_scenario(sc(pipeline="gelfand_trick", group="gl(2,3)", subgroup="torus", iota="transpose", field="gf(5)"))
    assert r.verdict == "PASS"
    assert r.quantities["trick_applies"] is False
    assert r.notes == ["trick does not apply; commutativity decided directly"]


def test_thm_multfree_converse_fails_on_q8():
    ctx = Context()
    g, F = parse_group("quaternion8"), parse_field("gf(2)")
    r = run_thm_multfree(build_module("regular", g, F, ctx), ctx)
    assert r.verdict == "PASS"
    assert r.quantities["end_commutative"] is False and r.quantities["multiplicity_free"]
    assert "converse fails" in r.notes


def test_steinberg_q2():
    r = run_steinberg_untwisted(parse_group("gl(2,2)"), parse_field("gf(2)"))
    assert r.verdict == "PASS"


def test_restriction_pipeline():
    r = run_scenario(sc(pipeline="restriction_multfree", field="gf(5)", module="irr(2)"))
    assert r.verdict == "PASS"
    assert r.quantities["end_dim"] == 2 and r.quantities["multiplicity_vector"] == [1, 1]


def test_precondition_is_inconclusive():
    r = run_scenario(sc(pipeline="structure_audit", subgroup=None, module="perm"))
    assert r.verdict == "INCONCLUSIVE"
    assert r.witnesses[0].startswith("PreconditionFailed")


def test_splitting_failure_is_inconclusive():
    r = run_scenario(sc(group="cyclic(3)", subgroup="trivial"))
    assert r.verdict == "INCONCLUSIVE"
    assert r.quantities["suggested_k"] == 2
    assert r.witnesses[0].startswith("SplittingFieldInsufficient")


def test_expectation_mismatch_fails():
    r = run_scenario(sc(expect={"hecke_dim": 3}))
    assert r.verdict == "FAIL"
    assert r.witnesses == ["expected hecke_dim=3, got 2"]
    assert run_scenario(sc(expect={"hecke_dim": 2, "verdict": "PASS"})).verdict == "PASS"


def _rep(v, violation=False, name="x"):
    return VerdictReport(name, "p", v, theorem_violation=violation)


def test_exit_codes_and_gate():
    assert exit_code([_rep("PASS")]) == 0
    assert exit_code([_rep("PASS"), _rep("INCONCLUSIVE")]) == 2
    assert exit_code([_rep("INCONCLUSIVE"), _rep("FAIL")]) == 1
    assert exit_code([]) == 0
    assert theorem_gate([_rep("PASS"), _rep("FAIL", True, "bad")]) == ["bad"]


def test_machine_report_is_sorted_and_untimed():
    a, b = _rep("PASS", name="b"), _rep("FAIL", name="a")
    a.wall_time, b.wall_time = 1.5, 2.5
    text = machine_report([a, b])
    data = json.loads(text)
    assert [r["scenario"] for r in data["reports"]] == ["a", "b"]
    assert "wall_time" not in data["reports"][0]
    assert "wall_time" in json.loads(machine_report([a], timing=True))["reports"][0]
    assert text == machine_report([b, a])


TOML_ONE = """
id = "one"
pipeline = "gelfand_pair"
field = "gf(3)"
group = "sym(3)"
subgroup = "young(2)"
[caps]
lattice = 100
[expect]
hecke_dim = 2
"""

TOML_MANY = """
[[scenario]]
id = "b"
pipeline = "hecke_comm"
field = "gf(5)"
group = "sym(3)"
subgroup = "young(2)"

[[scenario]]
id = "a"
pipeline = "gelfand_pair"
field = "gf(2)"
group = "sym(4)"
subgroup = "young(n-1)"
"""


def test_load_scenarios(tmp_path):
    p = tmp_path / "one.toml"
    p.write_text(TOML_ONE)
    (s,) = load_scenarios(str(p))
    assert s.id == "one" and s.caps == {"lattice": 100} and s.expect == {"hecke_dim": 2}
    p = tmp_path / "many.toml"
    p.write_text(TOML_MANY)
    assert [s.id for s in load_scenarios(str(p))] == ["b", "a"]


@pytest.mark.parametrize("text,loc", [
    ("id = [", "f.toml"),
    ("scenario = 3", "f.toml"),
    ('[[scenario]]\nid="a"\npipeline="gelfand_pair"\nfield="gf(2)"\ngroup="sym(3)"\nsubgroup="young(9)"',
     "f.toml:scenario[0].subgroup"),
])
def test_load_errors(tmp_path, text, loc):
    p = tmp_path / "f.toml"
    p.write_text(text)
    with pytest.raises(SpecParseError) as e:
        load_scenarios(str(p))
    assert e.value.location.endswith(loc)


def test_missing_file():
    with pytest.raises(SpecParseError, match="no such file"):
        load_scenarios("/nonexistent/missing.toml")


def test_run_scenarios_deterministic_across_workers(tmp_path):
    p = tmp_path / "many.toml"
    p.write_text(TOML_MANY)
    scs = load_scenarios(str(p))
    one = run_scenarios(scs, seed=42, workers=1)
    two = run_scenarios(scs, seed=42, workers=2)
    assert [r.scenario for r in one] == ["a", "b"]
    assert machine_report(one) == machine_report(two)
    assert all(r.verdict == "PASS" for r in one)


def test_duplicate_ids_rejected():
    s = sc()
    with pytest.raises(SpecParseError, match="duplicate"):
        run_scenarios([s, s])
