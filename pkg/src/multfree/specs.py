"""Spec strings for fields, groups, subgroups, characters and modules.

Grammar (whitespace is ignored)::

    field     gf(p) | gf(p,k)
    group     sym(n) | alt(n) | gl(n,p,k) | gl(n,p) | cyclic(n) | dihedral(n)
              | quaternion8 | prod(group, group, ...)
    subgroup  young(m) | young(n-1) | unitriangular | borel | torus | cartan
              | diag | whole | trivial | stab(i) | gens[elt; elt; ...]
    elt       (1 2 3)(4 5)   permutation cycles, 1-based
              [[1,1],[0,1]]  matrix entries as field codes
    character trivial | sign | gg(zeta_order) | multchar(exponent)
"""

from __future__ import annotations

import functools
import json
import re

import numpy as np

from .errors import SpecParseError
from .field import FiniteField, make_field
from .groups import (
    FiniteGroup,
    Subgroup,
    alternating_group,
    borel_subgroup,
    cartan_subgroup,
    cyclic_group,
    diagonal_subgroup,
    dihedral_group,
    general_linear_group,
    point_stabilizer,
    product_group,
    quaternion_group,
    subgroup_from_generators,
    symmetric_group,
    torus_subgroup,
    trivial_subgroup,
    unitriangular_subgroup,
    whole_group,
    young_subgroup,
)

_CALL = re.compile(r"^([a-z_][a-z0-9_]*)(?:\((.*)\))?$")


def _squash(text: str) -> str:
    return re.sub(r"\s+", "", text)


def _split_args(body: str, where: str) -> list[str]:
    """Split on top-level commas."""
    out, depth, cur = [], 0, []
    for ch in body:
        if ch in "([":
            depth += 1
        elif ch in ")]":
            depth -= 1
            if depth < 0:
                raise SpecParseError("unbalanced brackets", where)
        if ch == "," and depth == 0:
            out.append("".join(cur))
            cur = []
        else:
            cur.append(ch)
    if depth:
        raise SpecParseError("unbalanced brackets", where)
    out.append("".join(cur))
    return [a for a in out if a != ""] if body else []


def _call(text: str, where: str) -> tuple[str, list[str]]:
    m = _CALL.match(_squash(text))
    if not m:
        raise SpecParseError(f"cannot parse {text!r}", where)
    name, body = m.group(1), m.group(2)
    return name, _split_args(body, where) if body is not None else []


def _int(s: str, where: str) -> int:
    try:
        return int(s)
    except ValueError:
        raise SpecParseError(f"expected an integer, got {s!r}", where) from None


# ---------------------------------------------------------------------------

def parse_field(text: str, where: str = "field") -> FiniteField:
    name, args = _call(text, where)
    if name != "gf" or len(args) not in (1, 2):
        raise SpecParseError(f"field spec must be gf(p,k), got {text!r}", where)
    p = _int(args[0], where)
    k = _int(args[1], where) if len(args) == 2 else 1
    try:
        return make_field(p, k)
    except Exception as e:  # NonPrime, SizeCapExceeded
        raise SpecParseError(str(e), where) from e


@functools.lru_cache(maxsize=64)
def _group_cached(text: str) -> FiniteGroup:
    return _parse_group(text, "group")


def parse_group(text: str, where: str = "group") -> FiniteGroup:
    """Groups are interned per canonical spec string."""
    try:
        return _group_cached(_squash(text))
    except SpecParseError as e:
        if where != "group":
            raise SpecParseError(str(e).split(": ", 1)[-1], where) from None
        raise


def _parse_group(text: str, where: str) -> FiniteGroup:
    name, args = _call(text, where)
    n_args = {"sym": 1, "alt": 1, "cyclic": 1, "dihedral": 1, "quaternion8": 0}
    if name in n_args and len(args) != n_args[name]:
        raise SpecParseError(f"{name} takes {n_args[name]} argument(s)", where)
    try:
        if name == "sym":
            g = symmetric_group(_int(args[0], where))
        elif name == "alt":
            g = alternating_group(_int(args[0], where))
        elif name == "cyclic":
            g = cyclic_group(_int(args[0], where))
        elif name == "dihedral":
            g = dihedral_group(_int(args[0], where))
        elif name == "quaternion8":
            g = quaternion_group()
        elif name == "gl":
            if len(args) not in (2, 3):
                raise SpecParseError("gl takes (n, p, k)", where)
            n = _int(args[0], where)
            k = _int(args[2], where) if len(args) == 3 else 1
            g = general_linear_group(n, make_field(_int(args[1], where), k))
        elif name == "prod":
            if len(args) < 2:
                raise SpecParseError("prod needs at least two factors", where)
            factors = [parse_group(a, where) for a in args]
            g = product_group(*factors)
        else:
            raise SpecParseError(f"unknown group {name!r}", where)
    except SpecParseError:
        raise
    except Exception as e:
        raise SpecParseError(str(e), where) from e
    g.spec = _squash(text)
    return g


def _parse_cycles(text: str, n: int, where: str) -> list[int]:
    perm = list(range(n))
    for cyc in re.findall(r"\(([^()]*)\)", text):
        pts = [_int(x, where) - 1 for x in re.split(r"[\s,]+", cyc.strip()) if x]
        for a in pts:
            if not 0 <= a < n:
                raise SpecParseError(f"point {a + 1} out of range 1..{n}", where)
        for i, a in enumerate(pts):
            perm[a] = pts[(i + 1) % len(pts)]
    if re.sub(r"\([^()]*\)", "", text).strip():
        raise SpecParseError(f"bad permutation literal {text!r}", where)
    return perm


def _parse_element(g: FiniteGroup, text: str, where: str) -> int:
    text = text.strip()
    if text.startswith("("):
        perm = _parse_cycles(text, g.n_points, where)
        try:
            return int(g.lookup(np.array([perm]))[0])
        except KeyError:
            raise SpecParseError(f"{text} is not an element of {g.name}", where) from None
    if text.startswith("["):
        if not hasattr(g, "matrix_field"):
            raise SpecParseError("matrix literals need a matrix group", where)
        try:
            rows = json.loads(text)
        except ValueError:
            raise SpecParseError(f"bad matrix literal {text!r}", where) from None
        flat = tuple(int(x) for row in rows for x in row)
        try:
            return g.index_of_label(flat)
        except KeyError:
            raise SpecParseError(f"{text} is not an element of {g.name}", where) from None
    raise SpecParseError(f"cannot parse group element {text!r}", where)


def parse_subgroup(g: FiniteGroup, text: str, where: str = "subgroup") -> Subgroup:
    raw = text.strip()
    sq = _squash(raw)
    if sq.startswith("gens[") and sq.endswith("]"):
        body = raw[raw.index("[") + 1 : raw.rindex("]")]
        elts = [e for e in body.split(";") if e.strip()]
        if not elts:
            raise SpecParseError("gens[...] needs at least one element", where)
        gens = [_parse_element(g, e, where) for e in elts]
        return subgroup_from_generators(g, gens, name=f"<{raw}>")
    name, args = _call(sq, where)
    try:
        if name == "young":
            if len(args) != 1:
                raise SpecParseError("young takes one argument", where)
            a = args[0]
            deg = getattr(g, "degree", None)
            if deg is None:
                raise SpecParseError("young subgroups need a symmetric group", where)
            m = re.fullmatch(r"n-(\d+)", a)
            k = deg - int(m.group(1)) if m else _int(a, where)
            return young_subgroup(g, k)
        if args and name not in ("stab",):
            raise SpecParseError(f"{name} takes no arguments", where)
        if name == "unitriangular":
            return unitriangular_subgroup(g)
        if name == "borel":
            return borel_subgroup(g)
        if name == "torus":
            return torus_subgroup(g)
        if name == "cartan":
            return cartan_subgroup(g)
        if name == "diag":
            return diagonal_subgroup(g)
        if name == "whole":
            return whole_group(g)
        if name == "trivial":
            return trivial_subgroup(g)
        if name == "stab":
            return point_stabilizer(g, _int(args[0], where) - 1)
    except SpecParseError:
        raise
    except Exception as e:
        raise SpecParseError(str(e), where) from e
    raise SpecParseError(f"unknown subgroup spec {raw!r}", where)


def parse_character(text: str, where: str = "character") -> tuple[str, int | None]:
    """Return (kind, parameter)."""
    name, args = _call(text, where)
    if name in ("trivial", "triv", "sign") and not args:
        return ("trivial" if name == "triv" else name), None
    if name == "gg" and len(args) == 1:
        return "additive_gg", _int(args[0], where)
    if name == "multchar" and len(args) == 1:
        return "multiplicative", _int(args[0], where)
    raise SpecParseError(f"unknown character spec {text!r}", where)


def parse_module(text: str, where: str = "module") -> tuple[str, list[str]]:
    """Module specs: regular, trivial, natural, perm, induced, irr(i), nonsplit_pair, sum(a,b), dual(a)."""
    name, args = _call(text, where)
    known = {"regular": 0, "trivial": 0, "natural": 0, "perm": 0, "induced": 0, "irr": 1, "nonsplit_pair": 0,
             "sum": 2, "dual": 1, "sign": 0}
    if name not in known:
        raise SpecParseError(f"unknown module spec {text!r}", where)
    if len(args) != known[name]:
        raise SpecParseError(f"{name} takes {known[name]} argument(s)", where)
    return name, args
