"""Scenario engine: theorem pipelines, named examples and machine reports.

Every pipeline computes hypotheses and conclusions independently and then
reports the truth table of the implication it is testing.  A scenario whose
hypotheses hold while its conclusion fails is a THEOREM-VIOLATION.
"""

from __future__ import annotations

import itertools
import json
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field as dc_field
from typing import Callable, Sequence

import numpy as np

from .errors import (
    MultfreeError,
    PreconditionFailed,
    SizeCapExceeded,
    SpecParseError,
    SplittingFieldInsufficient,
)
from .field import FiniteField
from .groups import (
    FiniteGroup,
    Subgroup,
    check_anti_involution_preserves_double_cosets,
    diagonal_subgroup,
    identity_map,
    inversion,
    product_group,
    transpose_map,
    unitriangular_subgroup,
    borel_subgroup,
)
from .homalg import (
    HeckeAlgebra,
    check_gelfand_trick,
    end_algebra,
    hecke_iso_certificate,
    hom_dim,
    multiplicity_vector,
)
from .meataxe import (
    DEFAULT_SEED,
    Inventory,
    chop,
    constituent_inventory,
    irreducible_inventory,
    is_irreducible,
    iso_test,
)
from .reps import (
    MAX_INDUCED_DIM,
    REGULAR_CAP,
    Representation,
    direct_sum,
    dual,
    gelfand_graev_character,
    induce,
    mackey_dimension,
    multiplicative_character,
    natural_rep,
    permutation_rep,
    regular_rep,
    restrict,
    sign_rep,
    tensor,
    trivial_rep,
)
from .specs import parse_character, parse_field, parse_group, parse_module, parse_subgroup
from .structure import (
    LATTICE_CAP,
    Verdict,
    as_module,
    direct_sum_modules,
    dual_module,
    end_algebra_of,
    find_complement,
    is_relatively_injective,
    is_relatively_projective,
    radical_and_socle,
    structure_report,
    submodule_lattice,
    verify_lemma_rad_end_characterization,
    verify_rad_end_theorem,
)

PIPELINES = (
    "gelfand_pair",
    "mult_free_triple",
    "hecke_comm",
    "gelfand_trick",
    "thm_multfree",
    "restriction_multfree",
    "structure_audit",
    "non_example",
    "steinberg_untwisted",
    "triple_product",
    "cuspidal_count",
    "infrastructure",
)

PASS, FAIL, INCONCLUSIVE = "PASS", "FAIL", "INCONCLUSIVE"
VIOLATION = "THEOREM-VIOLATION"
DIRECT_SUM_SWEEP = 2**10  # M + M closure check only for small modules
IOTAS = {"inversion": inversion, "transpose": transpose_map, "identity": identity_map}


# ---------------------------------------------------------------------------
# scenarios and reports
# ---------------------------------------------------------------------------

@dataclass
class Scenario:
    id: str
    pipeline: str
    field: str
    group: str
    subgroup: str | None = None
    character: str | None = None
    module: str | None = None
    iota: str | None = None
    caps: dict = dc_field(default_factory=dict)
    expect: dict = dc_field(default_factory=dict)

    _KEYS = ("id", "pipeline", "field", "group", "subgroup", "character", "module", "iota", "caps", "expect")

    @classmethod
    def from_dict(cls, d: dict, where: str = "scenario") -> "Scenario":
        unknown = set(d) - set(cls._KEYS)
        if unknown:
            raise SpecParseError(f"unknown keys {sorted(unknown)}", where)
        for key in ("id", "pipeline", "field", "group"):
            if key not in d:
                raise SpecParseError(f"missing required key {key!r}", where)
        if d["pipeline"] not in PIPELINES:
            raise SpecParseError(f"unknown pipeline {d['pipeline']!r}", f"{where}.pipeline")
        caps = dict(d.get("caps", {}))
        bad = set(caps) - {"lattice", "induced_dim"}
        if bad:
            raise SpecParseError(f"unknown caps {sorted(bad)}", f"{where}.caps")
        sc = cls(**{k: d[k] for k in cls._KEYS if k in d})
        sc.caps = caps
        sc.validate(where)
        return sc

    def validate(self, where: str = "scenario") -> None:
        """Parse every spec and size the induced module up front."""
        F = parse_field(self.field, f"{where}.field")
        g = parse_group(self.group, f"{where}.group")
        h = parse_subgroup(g, self.subgroup, f"{where}.subgroup") if self.subgroup else None
        if self.character:
            parse_character(self.character, f"{where}.character")
        if self.module:
            _check_module_spec(self.module, f"{where}.module")
        if self.iota and self.iota not in IOTAS:
            raise SpecParseError(f"unknown anti-involution {self.iota!r}", f"{where}.iota")
        if self.pipeline in ("gelfand_pair", "mult_free_triple", "hecke_comm", "gelfand_trick") and h is None:
            raise SpecParseError("this pipeline needs a subgroup", where)
        if h is not None and self.pipeline in ("gelfand_pair", "mult_free_triple", "hecke_comm", "gelfand_trick"):
            cap = self.caps.get("induced_dim", MAX_INDUCED_DIM)
            if g.order // h.order > cap:
                raise SpecParseError(f"induced module of dim {g.order // h.order} exceeds cap {cap}", where)
        del F


def _check_module_spec(text: str, where: str) -> None:
    name, args = parse_module(text, where)
    for a in args:
        if name in ("sum", "dual"):
            _check_module_spec(a, where)


@dataclass
class VerdictReport:
    scenario: str
    pipeline: str
    verdict: str
    quantities: dict = dc_field(default_factory=dict)
    witnesses: list = dc_field(default_factory=list)
    notes: list = dc_field(default_factory=list)
    seed: int = DEFAULT_SEED
    wall_time: float = 0.0
    theorem_violation: bool = False

    def record(self, timing: bool = False) -> dict:
        out = asdict(self)
        if not timing:
            del out["wall_time"]
        return out

    def summary(self) -> str:
        keys = ("hecke_dim", "hecke_commutative", "multiplicity_vector", "end_dim", "count")
        bits = [f"{k}={_fmt(self.quantities[k])}" for k in keys if k in self.quantities]
        tail = f"  [{'; '.join(self.notes)}]" if self.notes else ""
        wit = f"  witness: {self.witnesses[0]}" if self.witnesses and self.verdict != PASS else ""
        return f"{self.verdict:<12} {self.scenario}  {' '.join(bits)}{tail}{wit}"


def _fmt(v) -> str:
    if isinstance(v, bool):
        return str(v).lower()
    return str(v)


def machine_report(reports: Sequence[VerdictReport], timing: bool = False) -> str:
    """Deterministic JSON: records sorted by scenario id, keys sorted."""
    recs = [r.record(timing) for r in sorted(reports, key=lambda r: r.scenario)]
    return json.dumps({"reports": recs}, sort_keys=True, indent=2) + "\n"


def theorem_gate(reports: Sequence[VerdictReport]) -> list[str]:
    return [r.scenario for r in reports if r.theorem_violation]


def exit_code(reports: Sequence[VerdictReport]) -> int:
    if any(r.verdict == FAIL for r in reports):
        return 1
    if any(r.verdict != PASS for r in reports):
        return 2
    return 0


# ---------------------------------------------------------------------------
# context and builders
# ---------------------------------------------------------------------------

@dataclass
class Context:
    seed: int = DEFAULT_SEED
    lattice_cap: int = LATTICE_CAP
    max_induced_dim: int = MAX_INDUCED_DIM
    _inventories: dict = dc_field(default_factory=dict)

    def inventory(self, g: FiniteGroup, F: FiniteField) -> Inventory:
        key = (id(g), F)
        if key not in self._inventories:
            self._inventories[key] = (g, irreducible_inventory(g, F, seed=self.seed))
        return self._inventories[key][1]

    def inventory_for(self, rho: Representation) -> Inventory:
        """The full inventory within the regular-module cap, else rho's constituents."""
        if rho.group.order <= REGULAR_CAP:
            return self.inventory(rho.group, rho.field)
        return constituent_inventory(rho, seed=self.seed)

    def with_caps(self, caps: dict) -> "Context":
        return Context(self.seed, caps.get("lattice", self.lattice_cap), caps.get("induced_dim", self.max_induced_dim),
                       self._inventories)


def build_character(text: str, h: FiniteGroup, F: FiniteField) -> Representation:
    kind, param = parse_character(text)
    if kind == "trivial":
        return trivial_rep(h, F)
    if kind == "sign":
        return sign_rep(h, F)
    if kind == "additive_gg":
        return gelfand_graev_character(h, F.root_of_unity(param), F)
    return multiplicative_character(h, F, param)


def build_module(text: str, g: FiniteGroup, F: FiniteField, ctx: Context, h: Subgroup | None = None,
                 eta: Representation | None = None) -> Representation:
    name, args = parse_module(text)
    if name == "regular":
        return regular_rep(g, F)
    if name == "trivial":
        return trivial_rep(g, F)
    if name == "sign":
        return sign_rep(g, F)
    if name == "natural":
        return natural_rep(g, F)
    if name == "perm":
        if h is None:
            raise PreconditionFailed("perm module needs a subgroup")
        return permutation_rep(g, h, F)
    if name == "induced":
        if eta is None:
            raise PreconditionFailed("induced module needs a subgroup and a character")
        return induce(eta, g, ctx.max_induced_dim)
    if name == "irr":
        inv = ctx.inventory(g, F)
        i = int(args[0])
        if not 0 <= i < len(inv):
            raise PreconditionFailed(f"irr({i}) out of range: the inventory has {len(inv)} members")
        return inv[i]
    if name == "sum":
        return direct_sum(build_module(args[0], g, F, ctx, h, eta), build_module(args[1], g, F, ctx, h, eta))
    if name == "dual":
        return dual(build_module(args[0], g, F, ctx, h, eta))
    pair = find_nonsplit_pair(g, F, ctx, h)
    if pair is None:
        raise PreconditionFailed("no pair of non-split non-isomorphic extensions found")
    s1, s2 = pair
    out = direct_sum(s1, s2)
    out.provenance["nonsplit_pair"] = (s1.dim, s2.dim)
    return out


def find_nonsplit_pair(g: FiniteGroup, F: FiniteField, ctx: Context, h: Subgroup | None = None):
    """Search a lattice for non-isomorphic, non-split sigma_1, sigma_2 with the same simple socle pi.

    The ambient module is the permutation module on the cosets of h (the
    regular module when h is None).  The first pair in lattice order whose sum
    has a commutative endomorphism ring is returned.
    """
    amb = permutation_rep(g, h, F) if h is not None else regular_rep(g, F)
    lat = submodule_lattice(amb, ctx.lattice_cap)
    if not lat.complete:
        return None
    inv = ctx.inventory(g, F)
    cands = []  # (socle class, node, rep)
    for node in lat.nodes:
        if node.dim < 2 or node.dim == amb.dim:
            continue
        sub = amb.subrepresentation(node)
        mult = multiplicity_vector(sub, inv)
        if sum(mult) != 1:
            continue
        rep = radical_and_socle(sub, inventory=[as_module(s) for s in inv], seed=ctx.seed)
        if rep.socle.dim == sub.dim:
            continue  # semisimple, so split
        cands.append((mult.index(1), sub))
    for (c1, s1), (c2, s2) in itertools.combinations(cands, 2):
        if c1 != c2 or iso_test(as_module(s1), as_module(s2)):
            continue
        if end_algebra(direct_sum(s1, s2)).is_commutative():
            return s1, s2
    return None


def _setup(sc: Scenario, ctx: Context):
    F = parse_field(sc.field)
    g = parse_group(sc.group)
    h = parse_subgroup(g, sc.subgroup) if sc.subgroup else None
    eta = build_character(sc.character or "trivial", h, F) if h is not None else None
    return F, g, h, eta


# ---------------------------------------------------------------------------
# pipelines
# ---------------------------------------------------------------------------

def _certify_eta(eta: Representation, ctx: Context) -> None:
    if eta.dim > 1:
        res = is_irreducible(as_module(eta), np.random.default_rng(ctx.seed))
        if not res.irreducible:
            raise PreconditionFailed("eta is not irreducible")
        if chop(as_module(eta), seed=ctx.seed).absolutely_irreducible != [True]:
            raise PreconditionFailed("eta is not absolutely irreducible")


def _hecke_block(g, h, eta, ctx, rep: VerdictReport):
    ind = induce(eta, g, ctx.max_induced_dim)
    hecke = HeckeAlgebra(g, eta)
    end = end_algebra(ind)
    cert = hecke_iso_certificate(g, h, eta, hecke, ind, end)
    q = rep.quantities
    q["induced_dim"] = ind.dim
    q["double_cosets"] = len(hecke.double_cosets)
    q["hecke_dim"] = hecke.dim
    q["end_dim"] = end.dim
    q["hecke_commutative"] = hecke.is_commutative()
    q["end_commutative"] = end.is_commutative()
    q["iso_certified"] = cert.ok
    if not cert.ok:
        rep.witnesses.append(f"Hecke/End isomorphism certificate failed: {cert}")
    return ind, hecke, end, cert


def run_mult_free_triple(g: FiniteGroup, h: Subgroup, eta: Representation, F: FiniteField,
                         ctx: Context | None = None, rep: VerdictReport | None = None) -> VerdictReport:
    ctx = ctx or Context()
    rep = rep or VerdictReport("adhoc", "mult_free_triple", PASS, seed=ctx.seed)
    _certify_eta(eta, ctx)
    ind, hecke, end, cert = _hecke_block(g, h, eta, ctx, rep)
    inv = ctx.inventory_for(ind)
    mult = multiplicity_vector(ind, inv)
    q = rep.quantities
    q["inventory_dims"] = inv.dims()
    q["inventory_complete"] = inv.complete
    q["multiplicity_vector"] = mult
    q["multiplicity_free"] = max(mult, default=0) <= 1
    q["antecedent"] = q["hecke_commutative"]
    q["consequent"] = q["multiplicity_free"]
    if q["antecedent"] and not q["consequent"]:
        rep.verdict, rep.theorem_violation = FAIL, True
        i = next(i for i, m in enumerate(mult) if m > 1)
        rep.witnesses.append(f"{VIOLATION}: commutative Hecke algebra but irr{i} (dim {inv[i].dim}) has multiplicity {mult[i]}")
    elif not cert.ok:
        rep.verdict = FAIL
    return rep


def run_gelfand_pair(g: FiniteGroup, h: Subgroup, F: FiniteField, ctx: Context | None = None,
                     rep: VerdictReport | None = None) -> VerdictReport:
    rep = run_mult_free_triple(g, h, trivial_rep(h, F), F, ctx, rep)
    q = rep.quantities
    q["end_dim_equals_double_cosets"] = q["end_dim"] == q["double_cosets"]
    return rep


def run_hecke_comm(g, h, eta, F, ctx=None, rep=None) -> VerdictReport:
    ctx = ctx or Context()
    rep = rep or VerdictReport("adhoc", "hecke_comm", PASS, seed=ctx.seed)
    _, _, _, cert = _hecke_block(g, h, eta, ctx, rep)
    if not cert.ok:
        rep.verdict = FAIL
    return rep


def run_gelfand_trick(g, h, eta, F, iota_name: str = "inversion", ctx=None, rep=None) -> VerdictReport:
    ctx = ctx or Context()
    rep = rep or VerdictReport("adhoc", "gelfand_trick", PASS, seed=ctx.seed)
    iota = IOTAS[iota_name](g)
    hecke = HeckeAlgebra(g, eta)
    q = rep.quantities
    q["hecke_dim"] = hecke.dim
    q["hecke_commutative"] = hecke.is_commutative()
    q["iota_preserves_double_cosets"] = check_anti_involution_preserves_double_cosets(iota, hecke.double_cosets)
    try:
        q["trick_applies"] = check_gelfand_trick(hecke, iota)
    except AssertionError as e:
        rep.verdict, rep.theorem_violation = FAIL, True
        rep.witnesses.append(f"{VIOLATION}: {e}")
        return rep
    if not q["trick_applies"]:
        rep.notes.append("trick does not apply; commutativity decided directly")
    return rep


def _mult_free_against(rho: Representation, ctx: Context) -> tuple[list[int], Inventory]:
    inv = ctx.inventory_for(rho)
    return multiplicity_vector(rho, inv), inv


def run_thm_multfree(rho: Representation, ctx: Context | None = None, rep: VerdictReport | None = None) -> VerdictReport:
    """(End commutative) and (self-injective) imply multiplicity-free."""
    ctx = ctx or Context()
    rep = rep or VerdictReport("adhoc", "thm_multfree", PASS, seed=ctx.seed)
    q = rep.quantities
    end = end_algebra(rho)
    hyp_i = end.is_commutative()
    mult, inv = _mult_free_against(rho, ctx)
    concl = max(mult, default=0) <= 1
    lat = submodule_lattice(rho, ctx.lattice_cap)
    hyp_ii = is_relatively_injective(rho, rho, lat)
    q.update(module_dim=rho.dim, end_dim=end.dim, lattice_nodes=len(lat), lattice_complete=lat.complete,
             multiplicity_vector=mult, inventory_dims=inv.dims(), end_commutative=hyp_i,
             self_injective=str(hyp_ii), multiplicity_free=concl)
    _implication(rep, [("End commutative", Verdict.true() if hyp_i else Verdict.false()), ("self-injective", hyp_ii)],
                 concl, f"socle multiplicities {mult}")
    return rep


def _implication(rep: VerdictReport, hyps: list[tuple[str, Verdict]], concl: bool, concl_text: str) -> None:
    """Fill verdict and notes from the truth table of (and hyps) => concl."""
    failed = [name for name, v in hyps if v.status == "FALSE"]
    unknown = [name for name, v in hyps if v.status == "INCONCLUSIVE"]
    if concl:
        if failed or unknown:
            rep.notes.append("converse fails" if failed else "conclusion holds; some hypotheses undecided")
        return
    if failed:
        rep.notes.append(f"conclusion fails; failing hypothesis: {', '.join(failed)}")
        return
    if unknown:
        rep.verdict = INCONCLUSIVE
        rep.witnesses.append(f"undecided hypotheses {unknown} while the conclusion fails ({concl_text})")
        return
    rep.verdict, rep.theorem_violation = FAIL, True
    rep.witnesses.append(f"{VIOLATION}: all hypotheses hold but {concl_text}")


def run_restriction_multfree(g: FiniteGroup, h: Subgroup, rho: Representation, ctx: Context | None = None,
                             rep: VerdictReport | None = None) -> VerdictReport:
    """rho ind(res rho)-injective and End_H(res rho) commutative imply res rho multiplicity-free."""
    ctx = ctx or Context()
    rep = rep or VerdictReport("adhoc", "restriction_multfree", PASS, seed=ctx.seed)
    res = restrict(rho, h)
    ind = induce(res, g, ctx.max_induced_dim)
    end_h = end_algebra(res)
    lat = submodule_lattice(ind, ctx.lattice_cap)
    inj = is_relatively_injective(rho, ind, lat)
    mult, inv = _mult_free_against(res, ctx)
    concl = max(mult, default=0) <= 1
    rep.quantities.update(
        module_dim=rho.dim, induced_dim=ind.dim, lattice_nodes=len(lat), lattice_complete=lat.complete,
        end_dim=end_h.dim, end_commutative=end_h.is_commutative(), relatively_injective=str(inj),
        multiplicity_vector=mult, inventory_dims=inv.dims(), multiplicity_free=concl,
    )
    _implication(rep, [("ind(res rho)-injective", inj),
                       ("End_H(res rho) commutative", Verdict.true() if end_h.is_commutative() else Verdict.false())],
                 concl, f"restriction multiplicities {mult}")
    return rep


def run_non_example(rho: Representation, ctx: Context | None = None, rep: VerdictReport | None = None) -> VerdictReport:
    """Regression for the two ways the converse and the hypotheses can fail."""
    ctx = ctx or Context()
    rep = rep or VerdictReport("adhoc", "non_example", PASS, seed=ctx.seed)
    run_thm_multfree(rho, ctx, rep)
    q = rep.quantities
    soc = radical_and_socle(rho, inventory=[as_module(s) for s in ctx.inventory_for(rho)], seed=ctx.seed)
    q["socle_dim"] = soc.socle.dim
    q["radical_dim"] = soc.radical.dim
    if rep.verdict != PASS:
        return rep
    if "nonsplit_pair" in rho.provenance:
        q["pair_dims"] = list(rho.provenance["nonsplit_pair"])
        ok = q["end_commutative"] and not q["multiplicity_free"] and q["self_injective"].startswith("FALSE")
        if ok:
            rep.notes.append("self-injectivity is necessary")
        else:
            rep.verdict = FAIL
            rep.witnesses.append("non-split pair does not show commutative End with multiplicity >= 2")
    else:
        if not (not q["end_commutative"] and q["multiplicity_free"]):
            rep.verdict = FAIL
            rep.witnesses.append("expected noncommutative End with a multiplicity-free socle")
    return rep


def run_steinberg_untwisted(g: FiniteGroup, F: FiniteField, ctx: Context | None = None,
                            rep: VerdictReport | None = None) -> VerdictReport:
    """Every irreducible of GL_2(q) over GF(q) has a one-dimensional U-fixed space."""
    ctx = ctx or Context()
    rep = rep or VerdictReport("adhoc", "steinberg_untwisted", PASS, seed=ctx.seed)
    u = unitriangular_subgroup(g)
    inv = ctx.inventory(g, F)
    fixed = [hom_dim(trivial_rep(u, F), restrict(pi, u)) for pi in inv]
    rep.quantities.update(inventory_dims=inv.dims(), fixed_dims=fixed)
    bad = [i for i, f in enumerate(fixed) if f != 1]
    if bad:
        rep.verdict = FAIL
        rep.witnesses.append(f"irr{bad[0]} has U-fixed space of dim {fixed[bad[0]]}")
    return rep


def run_triple_product(g: FiniteGroup, F: FiniteField, ctx: Context | None = None,
                       rep: VerdictReport | None = None) -> VerdictReport:
    """(G^3, diagonal G): Hecke commutativity and trivial multiplicities in triple tensors, reported independently."""
    ctx = ctx or Context()
    rep = rep or VerdictReport("adhoc", "triple_product", PASS, seed=ctx.seed)
    p = product_group(g, g, g)
    d = diagonal_subgroup(p)
    hecke = HeckeAlgebra(p, trivial_rep(d, F))
    inv = ctx.inventory(g, F)
    triv = trivial_rep(g, F)
    mults = []
    for a, b, c in itertools.product(range(len(inv)), repeat=3):
        mults.append(hom_dim(triv, tensor(tensor(inv[a], inv[b]), inv[c])))
    q = rep.quantities
    q.update(hecke_dim=hecke.dim, double_cosets=len(hecke.double_cosets), hecke_commutative=hecke.is_commutative(),
             inventory_dims=inv.dims(), triples=len(mults), max_triple_multiplicity=max(mults),
             triple_multiplicity_free=max(mults) <= 1)
    _implication(rep, [("Hecke commutative", Verdict.true() if q["hecke_commutative"] else Verdict.false())],
                 q["triple_multiplicity_free"], f"max triple multiplicity {max(mults)}")
    return rep


def run_cuspidal_count(g: FiniteGroup, F: FiniteField, ctx: Context | None = None,
                       rep: VerdictReport | None = None) -> VerdictReport:
    """Irreducibles of GL_2(q) missing from every ind_B^G(chi): expect q(q-1)/2 of them, each of dim q-1."""
    ctx = ctx or Context()
    rep = rep or VerdictReport("adhoc", "cuspidal_count", PASS, seed=ctx.seed)
    qq = g.matrix_field.q
    if g.order % F.p == 0:
        rep.verdict = INCONCLUSIVE
        rep.witnesses.append(f"characteristic {F.p} divides |G| = {g.order}")
        return rep
    b = borel_subgroup(g)
    u = unitriangular_subgroup(g)
    in_u = b.local(u.members)
    # principal series: characters of B trivial on U
    chars = [chi for chi in ctx.inventory(b, F) if chi.dim == 1 and np.array_equal(chi.images[:, in_u, 0, 0],
                                                                                  trivial_rep(u, F).images[:, :, 0, 0])]
    inds = [induce(chi, g, ctx.max_induced_dim) for chi in chars]
    inv = ctx.inventory(g, F)
    cusp = [pi for pi in inv if all(hom_dim(pi, x) == 0 for x in inds)]
    q = rep.quantities
    q.update(inventory_dims=inv.dims(), borel_characters=len(chars), count=len(cusp),
             cuspidal_dims=[pi.dim for pi in cusp], expected_count=qq * (qq - 1) // 2, expected_dim=qq - 1)
    if len(cusp) != qq * (qq - 1) // 2 or any(pi.dim != qq - 1 for pi in cusp):
        rep.verdict = FAIL
        rep.witnesses.append(f"found {len(cusp)} cuspidals of dims {q['cuspidal_dims']}")
    return rep


# ---------------------------------------------------------------------------
# property audits
# ---------------------------------------------------------------------------

def _verdict_str(v: Verdict) -> str:
    return v.status


def audit_module(rho, ctx: Context | None = None) -> tuple[dict, list[str]]:
    """Structure flags of a module plus every property check that applies.  Returns (quantities, counterexamples)."""
    ctx = ctx or Context()
    m = as_module(rho)
    F = m.field
    lat = submodule_lattice(m, ctx.lattice_cap)
    sr = structure_report(m, lat, seed=ctx.seed)
    q: dict = {
        "module_dim": m.dim,
        "lattice_nodes": len(lat),
        "lattice_complete": lat.complete,
        "radical_dim": sr.radical.dim,
        "socle_dim": sr.socle.dim,
        "cosocle_dim": sr.cosocle_dim,
        "socle_mult_vector": sr.socle_mult_vector,
        "flags": sr.flags(),
    }
    bad: list[str] = []
    if not lat.complete:
        return q, bad
    # radical and socle against the lattice
    maximal, minimal = lat.maximal(), lat.minimal()
    rad = lat.top
    for s in maximal:
        rad = rad.intersect(s)
    soc = lat.zero
    for s in minimal:
        soc = soc + s
    if rad.key() != sr.radical.key():
        bad.append("radical differs from the intersection of maximal submodules")
    if soc.key() != sr.socle.key():
        bad.append("socle differs from the sum of minimal submodules")
    # duality transfer
    dm = dual_module(m)
    dlat = submodule_lattice(dm, ctx.lattice_cap)
    dproj = is_relatively_projective(dm, dm, dlat)
    q["dual_self_projective"] = _verdict_str(dproj)
    if dproj.conclusive and sr.self_injective.conclusive and dproj.status != sr.self_injective.status:
        bad.append(f"self-injective {sr.self_injective.status} but dual self-projective {dproj.status}")
    # rad End theorem and lemma
    end = end_algebra_of(m)
    q["end_dim"] = end.dim
    q["end_commutative"] = end.is_commutative()
    for flavor in ("projective", "injective"):
        try:
            r = verify_rad_end_theorem(m, flavor, lat, ctx.seed)
        except PreconditionFailed:
            q[f"rad_end_{flavor}"] = "n/a"
            continue
        q[f"rad_end_{flavor}"] = [r.end_dim, r.rad_end_dim, r.comparison_dim]
        if not r.holds:
            bad.append(f"rad End identity fails ({flavor}): {r.as_dict()}")
        lem = verify_lemma_rad_end_characterization(m, flavor, lat, ctx.seed)
        q[f"lemma_{flavor}"] = [lem.mode, lem.checked]
        if not lem.holds:
            bad.append(f"rad End characterization fails ({flavor}) at {lem.counterexamples[0]}")
    # closure under quotients of the target
    if sr.self_projective.status == "TRUE":
        for node in lat.nodes:
            quo = m.quotient(node)
            v = is_relatively_projective(m, quo, submodule_lattice(quo, ctx.lattice_cap))
            if v.status == "FALSE":
                bad.append(f"M is M-projective but not M/L-projective for L of dim {node.dim}")
        if F.q ** (2 * m.dim) <= DIRECT_SUM_SWEEP:
            mm = direct_sum_modules(m, m)
            v = is_relatively_projective(m, mm, submodule_lattice(mm, ctx.lattice_cap))
            q["closure_direct_sum"] = _verdict_str(v)
            if v.status == "FALSE":
                bad.append("M is M-projective but not (M+M)-projective")
    # closure under submodules of the target, and split embeddings
    if sr.self_injective.status == "TRUE":
        for node in lat.nodes:
            sub = m.submodule(node)
            v = is_relatively_injective(m, sub, submodule_lattice(sub, ctx.lattice_cap))
            if v.status == "FALSE":
                bad.append(f"M is M-injective but not N-injective for a submodule N of dim {node.dim}")
    if len(lat) <= 64:
        for node in lat.nodes:
            if node.dim in (0, m.dim):
                continue
            sub = m.submodule(node)
            if is_relatively_injective(sub, m, lat).status == "TRUE" and find_complement(node, lat) is None:
                bad.append(f"N of dim {node.dim} is M-injective and embedded, yet has no complement")
            if is_relatively_projective(m.quotient(node), m, lat).status == "TRUE" and find_complement(node, lat) is None:
                bad.append(f"M/N of dim {m.dim - node.dim} is M-projective, yet N has no complement")
    return q, bad


def run_structure_audit(rho: Representation, ctx: Context | None = None, rep: VerdictReport | None = None) -> VerdictReport:
    ctx = ctx or Context()
    rep = rep or VerdictReport("adhoc", "structure_audit", PASS, seed=ctx.seed)
    q, bad = audit_module(rho, ctx)
    rep.quantities.update(q)
    if bad:
        rep.verdict = FAIL
        rep.witnesses.extend(bad)
    elif not q["lattice_complete"]:
        rep.verdict = INCONCLUSIVE
        rep.witnesses.append("lattice incomplete")
    return rep


def frobenius_mackey_checks(g: FiniteGroup, h: Subgroup, eta: Representation, ctx: Context) -> tuple[dict, list[str]]:
    """Frobenius reciprocity (both sides), Mackey dimension and chop accounting for one (G, H, eta)."""
    bad: list[str] = []
    ind = induce(eta, g, ctx.max_induced_dim)
    inv = ctx.inventory_for(ind)
    left = [hom_dim(ind, pi) for pi in inv]
    right = [hom_dim(eta, restrict(pi, h)) for pi in inv]
    left2 = [hom_dim(pi, ind) for pi in inv]
    right2 = [hom_dim(restrict(pi, h), eta) for pi in inv]
    if left != right:
        bad.append(f"Frobenius reciprocity fails: {left} vs {right}")
    if left2 != right2:
        bad.append(f"coinduction reciprocity fails: {left2} vs {right2}")
    end_dim = end_algebra(ind).dim
    mackey = mackey_dimension(eta, g)
    q = {"frobenius": left, "coinduction": left2, "end_dim": end_dim}
    # Mackey gives dim Hom_H(eta, res ind eta) which equals dim End_G(ind eta)
    q["mackey_hom_dim"] = hom_dim(eta, restrict(ind, h))
    q["mackey_restriction_dim"] = mackey
    if mackey != ind.dim:
        bad.append(f"Mackey dimension {mackey} differs from dim ind = {ind.dim}")
    if q["mackey_hom_dim"] != end_dim:
        bad.append(f"dim Hom_H(eta, res ind eta) = {q['mackey_hom_dim']} but dim End = {end_dim}")
    report = chop(as_module(ind), seed=ctx.seed)
    q["chop_dims"] = [f.dim for f in report.factors]
    q["chop_multiplicities"] = report.multiplicities
    if report.total_dim != ind.dim:
        bad.append("chop dimension accounting fails")
    return q, bad


def run_infrastructure(g, h, eta, F, ctx: Context | None = None, rep: VerdictReport | None = None,
                       module: Representation | None = None) -> VerdictReport:
    ctx = ctx or Context()
    rep = rep or VerdictReport("adhoc", "infrastructure", PASS, seed=ctx.seed)
    bad: list[str] = []
    if h is not None:
        q, b = frobenius_mackey_checks(g, h, eta, ctx)
        rep.quantities.update(q)
        bad += b
        _, _, _, cert = _hecke_block(g, h, eta, ctx, rep)
        if not cert.ok:
            bad.append("Hecke/End isomorphism certificate failed")
    if g.order <= REGULAR_CAP and g.order % F.p:
        inv = ctx.inventory(g, F)
        rep.quantities["wedderburn_sum_of_squares"] = sum(d * d for d in inv.dims())
        if sum(d * d for d in inv.dims()) != g.order:
            bad.append(f"sum of squares {sum(d * d for d in inv.dims())} != |G| = {g.order}")
    if module is not None and h is not None:
        v = transfer_check(eta, module, h, ctx)
        rep.quantities["transfer"] = v
        if v.startswith("COUNTEREXAMPLE"):
            bad.append(v)
    if bad:
        rep.verdict = FAIL
        rep.witnesses.extend(bad)
    return rep


def transfer_check(m_h: Representation, n: Representation, h: Subgroup, ctx: Context) -> str:
    """If m is res(n)-projective then ind(m) is n-projective; both sides computed."""
    g = n.group
    res = restrict(n, h)
    lhs = is_relatively_projective(as_module(m_h), as_module(res), submodule_lattice(res, ctx.lattice_cap))
    ind = induce(m_h, g, ctx.max_induced_dim)
    rhs = is_relatively_projective(as_module(ind), as_module(n), submodule_lattice(n, ctx.lattice_cap))
    if lhs.status == "TRUE" and rhs.status == "FALSE":
        return f"COUNTEREXAMPLE res-projective but induced not projective: {rhs}"
    return f"{lhs.status}->{rhs.status}"


# ---------------------------------------------------------------------------
# dispatch
# ---------------------------------------------------------------------------

def _expectations(rep: VerdictReport, expect: dict) -> None:
    for key in sorted(expect):
        want = expect[key]
        if key == "verdict":
            got = rep.verdict
        elif key == "notes":
            got = [n for n in rep.notes if n in want] if isinstance(want, list) else rep.notes
        else:
            got = rep.quantities.get(key, "<missing>")
        if got != want:
            rep.witnesses.append(f"expected {key}={want!r}, got {got!r}")
            if rep.verdict == PASS:
                rep.verdict = FAIL


def run_scenario(sc: Scenario, ctx: Context | None = None) -> VerdictReport:
    ctx = (ctx or Context()).with_caps(sc.caps)
    rep = VerdictReport(sc.id, sc.pipeline, PASS, seed=ctx.seed)
    t0 = time.perf_counter()
    try:
        F, g, h, eta = _setup(sc, ctx)
        p = sc.pipeline
        if p == "gelfand_pair":
            run_gelfand_pair(g, h, F, ctx, rep)
        elif p == "mult_free_triple":
            run_mult_free_triple(g, h, eta, F, ctx, rep)
        elif p == "hecke_comm":
            run_hecke_comm(g, h, eta, F, ctx, rep)
        elif p == "gelfand_trick":
            run_gelfand_trick(g, h, eta, F, sc.iota or "inversion", ctx, rep)
        elif p in ("thm_multfree", "non_example", "structure_audit"):
            rho = build_module(sc.module or "regular", g, F, ctx, h, eta)
            {"thm_multfree": run_thm_multfree, "non_example": run_non_example,
             "structure_audit": run_structure_audit}[p](rho, ctx, rep)
        elif p == "restriction_multfree":
            rho = build_module(sc.module or "trivial", g, F, ctx)
            run_restriction_multfree(g, h, rho, ctx, rep)
        elif p == "steinberg_untwisted":
            run_steinberg_untwisted(g, F, ctx, rep)
        elif p == "triple_product":
            run_triple_product(g, F, ctx, rep)
        elif p == "cuspidal_count":
            run_cuspidal_count(g, F, ctx, rep)
        elif p == "infrastructure":
            module = build_module(sc.module, g, F, ctx, h, eta) if sc.module else None
            run_infrastructure(g, h, eta, F, ctx, rep, module)
        _expectations(rep, sc.expect)
    except SplittingFieldInsufficient as e:
        rep.verdict = INCONCLUSIVE
        rep.witnesses.append(f"SplittingFieldInsufficient: {e}")
        rep.quantities["suggested_k"] = e.suggested_k
    except (SizeCapExceeded, PreconditionFailed) as e:
        rep.verdict = INCONCLUSIVE
        rep.witnesses.append(f"{type(e).__name__}: {e}")
    except MultfreeError as e:
        rep.verdict = INCONCLUSIVE
        rep.witnesses.append(f"{type(e).__name__}: {e}")
    rep.wall_time = time.perf_counter() - t0
    return rep


def _run_one(args) -> VerdictReport:
    sc, seed, lattice_cap, max_dim = args
    return run_scenario(sc, Context(seed, lattice_cap, max_dim))


def run_scenarios(scenarios: Sequence[Scenario], seed: int = DEFAULT_SEED, workers: int = 1,
                  lattice_cap: int = LATTICE_CAP, max_induced_dim: int = MAX_INDUCED_DIM,
                  progress: Callable[[VerdictReport], None] | None = None) -> list[VerdictReport]:
    """Run scenarios (in parallel when workers > 1); results come back sorted by id."""
    ids = [s.id for s in scenarios]
    if len(set(ids)) != len(ids):
        raise SpecParseError("duplicate scenario ids", "suite")
    out: list[VerdictReport] = []
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            for r in pool.map(_run_one, [(s, seed, lattice_cap, max_induced_dim) for s in scenarios]):
                out.append(r)
                if progress:
                    progress(r)
    else:
        ctx = Context(seed, lattice_cap, max_induced_dim)
        for s in scenarios:
            r = run_scenario(s, ctx)
            out.append(r)
            if progress:
                progress(r)
    return sorted(out, key=lambda r: r.scenario)


def load_scenarios(path: str) -> list[Scenario]:
    """A scenario file holds one scenario at top level or a [[scenario]] array."""
    try:
        import tomllib  # type: ignore[import-not-found]
    except ModuleNotFoundError:
        import tomli as tomllib
    try:
        with open(path, "rb") as fh:
            data = tomllib.load(fh)
    except FileNotFoundError:
        raise SpecParseError("no such file", path) from None
    except tomllib.TOMLDecodeError as e:
        raise SpecParseError(str(e), path) from None
    if "scenario" in data:
        items = data["scenario"]
        if not isinstance(items, list):
            raise SpecParseError("'scenario' must be an array of tables", path)
        return [Scenario.from_dict(d, f"{path}:scenario[{i}]") for i, d in enumerate(items)]
    return [Scenario.from_dict(data, path)]
