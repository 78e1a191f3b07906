"""Command line entry point.

Exit codes: 0 when every scenario passes, 1 on any FAIL, 2 on any
INCONCLUSIVE outcome or error (including spec parse errors).
"""

from __future__ import annotations

import argparse
import sys
from collections import Counter

from .errors import MultfreeError, SpecParseError
from .meataxe import DEFAULT_SEED, chop
from .reps import MAX_INDUCED_DIM
from .structure import LATTICE_CAP, as_module, submodule_lattice
from .suites import SUITES, suite_scenarios
from .verdicts import (
    Context,
    _setup,
    build_module,
    exit_code,
    load_scenarios,
    machine_report,
    run_hecke_comm,
    run_scenarios,
    theorem_gate,
    Scenario,
)


def _common(p: argparse.ArgumentParser) -> None:
    p.add_argument("--seed", type=int, default=DEFAULT_SEED)
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--lattice-cap", type=int, default=LATTICE_CAP)
    p.add_argument("--max-induced-dim", type=int, default=MAX_INDUCED_DIM)
    p.add_argument("--report", metavar="PATH", help="write the machine report (JSON) here")
    p.add_argument("--timing", action="store_true", help="include wall time in the machine report")


def _construction(p: argparse.ArgumentParser, module: bool = True) -> None:
    p.add_argument("--group", required=True)
    p.add_argument("--field", required=True)
    p.add_argument("--sub")
    p.add_argument("--char", default="trivial")
    if module:
        p.add_argument("--module", default="regular")


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="multfree", description="Multiplicity-freeness verdicts for finite groups over finite fields.")
    sub = ap.add_subparsers(dest="command", required=True)
    p = sub.add_parser("run", help="run the scenarios in a TOML file")
    p.add_argument("scenario_file")
    _common(p)
    p = sub.add_parser("suite", help="run a built-in suite")
    p.add_argument("name", choices=sorted(SUITES))
    _common(p)
    p = sub.add_parser("hecke", help="Hecke algebra dimension and commutativity")
    _construction(p, module=False)
    _common(p)
    p = sub.add_parser("chop", help="composition factors of a module")
    _construction(p)
    _common(p)
    p = sub.add_parser("lattice", help="submodule lattice of a module")
    _construction(p)
    _common(p)
    p = sub.add_parser("inventory", help="irreducible inventory of a group")
    p.add_argument("--group", required=True)
    p.add_argument("--field", required=True)
    p.add_argument("--save", metavar="PATH", help="write the inventory to a binary cache")
    p.add_argument("--load", metavar="PATH", help="read the inventory from a binary cache")
    _common(p)
    return ap


def _scenario(args, pipeline: str) -> Scenario:
    d = {"id": f"cli-{args.command}", "pipeline": pipeline, "field": args.field, "group": args.group}
    if args.sub:
        d["subgroup"] = args.sub
    if getattr(args, "char", None):
        d["character"] = args.char
    if getattr(args, "module", None):
        d["module"] = args.module
    return Scenario.from_dict(d, "cli")


def _write_report(args, reports) -> None:
    if args.report:
        with open(args.report, "w") as fh:
            fh.write(machine_report(reports, timing=args.timing))


def _run(args, scenarios) -> int:
    reports = run_scenarios(scenarios, seed=args.seed, workers=args.workers, lattice_cap=args.lattice_cap,
                            max_induced_dim=args.max_induced_dim)
    for r in reports:
        print(r.summary())
    counts = Counter(r.verdict for r in reports)
    print(f"{len(reports)} scenarios: " + ", ".join(f"{counts[v]} {v}" for v in ("PASS", "FAIL", "INCONCLUSIVE")))
    violations = theorem_gate(reports)
    if violations:
        print(f"THEOREM-VIOLATION in {', '.join(violations)}")
    _write_report(args, reports)
    return exit_code(reports)


def _ctx(args) -> Context:
    return Context(args.seed, args.lattice_cap, args.max_induced_dim)


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        if args.command == "run":
            return _run(args, load_scenarios(args.scenario_file))
        if args.command == "suite":
            return _run(args, suite_scenarios(args.name))
        ctx = _ctx(args)
        if args.command == "hecke":
            sc = _scenario(args, "hecke_comm")
            F, g, h, eta = _setup(sc, ctx)
            rep = run_hecke_comm(g, h, eta, F, ctx)
            q = rep.quantities
            print(f"dim={q['hecke_dim']} commutative={str(q['hecke_commutative']).lower()}")
            if rep.verdict != "PASS":
                print("; ".join(rep.witnesses), file=sys.stderr)
            return exit_code([rep])
        if args.command in ("chop", "lattice"):
            sc = _scenario(args, "structure_audit")
            F, g, h, eta = _setup(sc, ctx)
            rho = build_module(sc.module, g, F, ctx, h, eta)
            if args.command == "chop":
                report = chop(as_module(rho), seed=args.seed)
                print(f"dim={rho.dim} factors={len(report.factors)}")
                for f, c, a in zip(report.factors, report.multiplicities, report.absolutely_irreducible):
                    print(f"  dim {f.dim} x{c} {'absolutely irreducible' if a else 'not absolutely irreducible'}")
                return 0
            lat = submodule_lattice(rho, args.lattice_cap)
            dims = Counter(s.dim for s in lat.nodes)
            print(f"nodes={len(lat)} complete={str(lat.complete).lower()}" + (f" ({lat.reason})" if lat.reason else ""))
            print("  by dimension: " + ", ".join(f"{d}:{dims[d]}" for d in sorted(dims)))
            return 0 if lat.complete else 2
        if args.command == "inventory":
            from .cache import load_inventory, save_inventory
            from .specs import parse_field, parse_group

            F, g = parse_field(args.field), parse_group(args.group)
            if args.load:
                inv = load_inventory(args.load, g, g.spec, seed=args.seed)
            else:
                inv = ctx.inventory(g, F)
            print(f"{len(inv)} irreducibles over {F.spec}: dims {inv.dims()}")
            if args.save:
                save_inventory(args.save, inv, g.spec)
            return 0
    except SpecParseError as e:
        print(f"error: {e}", file=sys.stderr)
        return 2
    except (MultfreeError, OSError) as e:
        print(f"error: {type(e).__name__}: {e}", file=sys.stderr)
        return 2
    return 2


if __name__ == "__main__":
    sys.exit(main())
