"""Composition factors of modules over matrix algebras.

A module is a list of acting matrices (column-vector convention).  The
irreducibility test is Norton's: for a random algebra element theta and an
irreducible factor f of the minimal polynomial of a random vector, spin a
vector of ker f(theta); then spin a vector of ker f(theta)^T in the
transposed module.  When nullity f(theta) = deg f and both spins fill the
space the module is irreducible.  Small modules (dim <= 6, q <= 4) fall back
to spinning every vector once the random budget is used up.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field as dc_field
from typing import Sequence

import numpy as np

from . import poly
from .errors import GroupMismatch, RandomBudgetExhausted, SizeCapExceeded, SplittingFieldInsufficient
from .field import FiniteField
from .groups import FiniteGroup
from .homalg import MatrixAlgebra, intertwiner_space
from .linalg import Matrix, Subspace, _kernel_stack, _rref, quot_action, sub_action
from .reps import Representation, regular_rep

DEFAULT_SEED = 42
RANDOM_BUDGET = 200
CHOP_CAP = 256


class ModuleOverAlgebra:
    """F^dim acted on by the matrices ``mats`` (stack (k, m, dim, dim))."""

    def __init__(self, field: FiniteField, mats: np.ndarray, provenance: str = "group-rep", name: str = "M"):
        mats = np.asarray(mats, dtype=np.int64)
        if mats.ndim != 4 or mats.shape[0] != field.k or mats.shape[2] != mats.shape[3]:
            raise ValueError(f"acting matrices must be a (k, m, d, d) stack, got {mats.shape}")
        self.field = field
        self.mats = mats
        self.dim = mats.shape[2]
        self.provenance = provenance
        self.name = name

    @classmethod
    def from_representation(cls, rho: Representation) -> "ModuleOverAlgebra":
        return cls(rho.field, rho.gen_stack(), "group-rep", rho.name)

    @classmethod
    def from_algebra(cls, a: MatrixAlgebra) -> "ModuleOverAlgebra":
        return cls(a.field, a.basis, "end-algebra", a.name)

    @property
    def n_gens(self) -> int:
        return self.mats.shape[1]

    def submodule(self, s: Subspace) -> "ModuleOverAlgebra":
        return ModuleOverAlgebra(self.field, sub_action(self.field, self.mats, s), "submodule", f"sub({self.name})")

    def quotient(self, s: Subspace) -> "ModuleOverAlgebra":
        return ModuleOverAlgebra(self.field, quot_action(self.field, self.mats, s), "quotient", f"{self.name}/sub")

    def transposed(self) -> "ModuleOverAlgebra":
        return ModuleOverAlgebra(self.field, np.swapaxes(self.mats, 2, 3).copy(), self.provenance, f"{self.name}^T")

    def gen(self, i: int) -> Matrix:
        return Matrix(self.field, self.mats[:, i])

    def __repr__(self) -> str:
        return f"<ModuleOverAlgebra {self.name} dim {self.dim} over {self.field}, {self.n_gens} gens>"


# ---------------------------------------------------------------------------
# spinning
# ---------------------------------------------------------------------------

def spin(m: ModuleOverAlgebra, seeds: Subspace | np.ndarray) -> Subspace:
    """Smallest invariant subspace containing the seed vectors (rows)."""
    F = m.field
    rows = seeds.basis if isinstance(seeds, Subspace) else np.asarray(seeds, dtype=np.int64)
    if rows.ndim == 2:
        rows = F.to_stack(rows)
    span = Subspace.from_rows(F, rows, m.dim)
    frontier = span.basis
    mt = np.swapaxes(m.mats, 2, 3)  # row v -> v A^T
    while frontier.shape[1] and span.dim < m.dim:
        imgs = F.smatmul(frontier[:, None], mt).reshape(F.k, -1, m.dim)
        res = span.reduce(imgs)
        nz = res.any(axis=(0, 2))
        if not nz.any():
            break
        new = Subspace.from_rows(F, res[:, nz], m.dim)
        frontier = new.basis
        span = span + new
    return span


def annihilator(s: Subspace) -> Subspace:
    """{v : w . v = 0 for every w in s}."""
    F = s.field
    if s.dim == 0:
        return Subspace.full(F, s.ambient_dim)
    return Subspace.from_rows(F, _kernel_stack(F, s.basis), s.ambient_dim)


# ---------------------------------------------------------------------------
# random algebra elements and polynomials
# ---------------------------------------------------------------------------

class _ElementSource:
    """Random linear combinations of a growing pool of words in the generators."""

    def __init__(self, m: ModuleOverAlgebra, rng: np.random.Generator):
        self.m, self.rng = m, rng
        F = m.field
        if m.n_gens:
            self.pool = [m.mats[:, i] for i in range(m.n_gens)]
        else:
            self.pool = [Matrix.identity(F, m.dim).data]

    def next(self) -> tuple[np.ndarray, list[int]]:
        F, rng = self.m.field, self.rng
        if len(self.pool) >= 2:
            a, b = rng.integers(0, len(self.pool), size=2)
            self.pool.append(F.smatmul(self.pool[a], self.pool[b]))
            if len(self.pool) > 64:
                self.pool.pop(0)
        picks = rng.choice(len(self.pool), size=min(3, len(self.pool)), replace=False)
        coeffs = rng.integers(0, F.q, size=len(picks)).tolist()
        if not any(coeffs):
            coeffs[0] = 1
        theta = np.zeros_like(self.pool[0])
        for i, c in zip(picks, coeffs):
            if c:
                theta = (theta + F.scale(int(c), self.pool[i])) % F.p
        return theta, coeffs


def vector_minpoly(F: FiniteField, theta: np.ndarray, v: np.ndarray) -> list[int]:
    """Monic minimal polynomial of the row vector ``v`` (stack (k, d)) under theta (k, d, d)."""
    d = theta.shape[1]
    rows = [v]
    thetat = np.swapaxes(theta, 1, 2)
    for _ in range(d):
        rows.append(F.smatmul(rows[-1][:, None, :], thetat)[:, 0])
    krylov = np.stack(rows, axis=1)  # (k, d+1, d)
    # first dependent power: first non-pivot column of K^T
    kt = np.swapaxes(krylov, 1, 2)
    red, piv = _rref(F, kt)
    r = len(piv)
    if piv != list(range(r)):
        raise AssertionError("Krylov pivots are not an initial segment")
    coeffs = [int(c) for c in F.from_stack((-red[:, :r, r]) % F.p)] + [1]
    return coeffs


def _eval_poly(F: FiniteField, f: Sequence[int], theta: np.ndarray) -> np.ndarray:
    d = theta.shape[1]
    eye = np.zeros_like(theta)
    eye[0] = np.eye(d, dtype=np.int64)
    acc = np.zeros_like(theta)
    for c in reversed(f):
        acc = F.smatmul(acc, theta)
        if c:
            acc = (acc + F.scale(int(c), eye)) % F.p
    return acc


# ---------------------------------------------------------------------------
# irreducibility
# ---------------------------------------------------------------------------

@dataclass
class IrreducibilityResult:
    irreducible: bool
    witness: Subspace | None = None
    certificate: dict = dc_field(default_factory=dict)

    def __bool__(self) -> bool:
        return self.irreducible


def _proper(s: Subspace, d: int) -> bool:
    return 0 < s.dim < d


def _exhaustive(m: ModuleOverAlgebra) -> IrreducibilityResult:
    F, d = m.field, m.dim
    for digits in itertools.product(range(F.q), repeat=d):
        # projective representatives: first nonzero coordinate equals 1
        nz = next((x for x in digits if x), None)
        if nz != 1:
            continue
        s = spin(m, np.array([digits], dtype=np.int64))
        if _proper(s, d):
            return IrreducibilityResult(False, s, {"method": "exhaustive"})
    return IrreducibilityResult(True, None, {"method": "exhaustive"})


def is_irreducible(m: ModuleOverAlgebra, rng: np.random.Generator | None = None, budget: int = RANDOM_BUDGET) -> IrreducibilityResult:
    """Norton irreducibility test; a False answer carries a proper invariant subspace."""
    F, d = m.field, m.dim
    if d == 0:
        raise ValueError("zero module")
    if d == 1:
        return IrreducibilityResult(True, None, {"method": "dimension"})
    rng = rng if rng is not None else np.random.default_rng(DEFAULT_SEED)
    src = _ElementSource(m, rng)
    mt = None
    for attempt in range(budget):
        theta, coeffs = src.next()
        v = F.random_stack(rng, (d,))
        if not v.any():
            continue
        fmin = vector_minpoly(F, theta, v)
        for f, _mult in poly.factor(F, fmin, seed=int(rng.integers(1 << 30))):
            nf = _eval_poly(F, f, theta)
            ker = _kernel_stack(F, nf)
            nullity = ker.shape[1]
            if nullity == 0:
                continue
            s = spin(m, ker[:, :1])
            if _proper(s, d):
                return IrreducibilityResult(False, s, {"method": "norton", "attempt": attempt})
            kert = _kernel_stack(F, np.swapaxes(nf, 1, 2))
            mt = mt or m.transposed()
            st = spin(mt, kert[:, :1])
            if _proper(st, d):
                return IrreducibilityResult(False, annihilator(st), {"method": "norton-dual", "attempt": attempt})
            if nullity == len(f) - 1:
                return IrreducibilityResult(True, None, {"method": "norton", "attempt": attempt, "poly": f})
            # inconclusive factor; try the next one
    if d <= 6 and F.q <= 4:
        return _exhaustive(m)
    raise RandomBudgetExhausted(f"irreducibility of a dim-{d} module undecided after {budget} attempts")


def iso_test(s1: ModuleOverAlgebra, s2: ModuleOverAlgebra) -> bool:
    """Simple modules are isomorphic iff a nonzero intertwiner exists."""
    if s1.field != s2.field or s1.n_gens != s2.n_gens:
        raise GroupMismatch("modules over different algebras")
    if s1.dim != s2.dim:
        return False
    return intertwiner_space(s1.field, s1.mats, s2.mats).dim > 0


def end_dim(s: ModuleOverAlgebra) -> int:
    return intertwiner_space(s.field, s.mats, s.mats).dim


# ---------------------------------------------------------------------------
# chopping
# ---------------------------------------------------------------------------

@dataclass
class CompositionReport:
    """Composition factors (Jordan-Holder multiplicities, not Hom multiplicities)."""

    module_dim: int
    factors: list[ModuleOverAlgebra]
    multiplicities: list[int]
    absolutely_irreducible: list[bool]
    sequence: list[int]  # factor class of each piece in discovery order

    @property
    def total_dim(self) -> int:
        return sum(f.dim * c for f, c in zip(self.factors, self.multiplicities))

    def pairs(self) -> list[tuple[ModuleOverAlgebra, int]]:
        return list(zip(self.factors, self.multiplicities))

    def dims(self) -> list[int]:
        return [f.dim for f in self.factors]


def _chop_pieces(m: ModuleOverAlgebra, rng: np.random.Generator, out: list[ModuleOverAlgebra]) -> None:
    stack = [m]
    while stack:
        cur = stack.pop()
        res = is_irreducible(cur, rng)
        if res.irreducible:
            out.append(cur)
            continue
        w = res.witness
        # submodule first, so pieces come out bottom-up
        stack.append(cur.quotient(w))
        stack.append(cur.submodule(w))


def chop(m: ModuleOverAlgebra, seed: int = DEFAULT_SEED, rng: np.random.Generator | None = None) -> CompositionReport:
    if m.dim > CHOP_CAP:
        raise SizeCapExceeded(f"chop is capped at dim {CHOP_CAP}")
    rng = rng if rng is not None else np.random.default_rng(seed)
    pieces: list[ModuleOverAlgebra] = []
    if m.dim:
        _chop_pieces(m, rng, pieces)
    factors: list[ModuleOverAlgebra] = []
    counts: list[int] = []
    seq: list[int] = []
    for p in pieces:
        for i, f in enumerate(factors):
            if iso_test(f, p):
                counts[i] += 1
                seq.append(i)
                break
        else:
            factors.append(p)
            counts.append(1)
            seq.append(len(factors) - 1)
    absolute = [end_dim(f) == 1 for f in factors]
    report = CompositionReport(m.dim, factors, counts, absolute, seq)
    if report.total_dim != m.dim:
        raise AssertionError("composition factor dimensions do not add up")
    return report


# ---------------------------------------------------------------------------
# inventories
# ---------------------------------------------------------------------------

class Inventory(list):
    """Certified absolutely irreducible representations, sorted by (dim, discovery)."""

    def __init__(self, reps: Sequence[Representation], group: FiniteGroup, field: FiniteField,
                 composition: CompositionReport | None = None, complete: bool = True, source: str = "regular"):
        super().__init__(reps)
        self.group = group
        self.field = field
        self.composition = composition
        self.complete = complete
        self.source = source
        self.certified = all(r.provenance.get("absolutely_irreducible") for r in reps)

    def dims(self) -> list[int]:
        return [r.dim for r in self]


def _package(report: CompositionReport, g: FiniteGroup, field: FiniteField, complete: bool, source: str) -> Inventory:
    order = sorted(range(len(report.factors)), key=lambda i: (report.factors[i].dim, i))
    reps = []
    for rank, i in enumerate(order):
        f = report.factors[i]
        e = end_dim(f)
        if e != 1:
            raise SplittingFieldInsufficient(
                f"a composition factor of dim {f.dim} has End of dim {e} over {field}; "
                f"enlarge the field to gf({field.p},{field.k * e})",
                end_dim=e,
                suggested_k=field.k * e,
            )
        rep = Representation.from_generators(g, field, [Matrix(field, f.mats[:, j]) for j in range(f.n_gens)], f"irr{rank}")
        rep.provenance["absolutely_irreducible"] = True
        rep.provenance["composition_multiplicity"] = report.multiplicities[i]
        reps.append(rep)
    return Inventory(reps, g, field, report, complete, source)


def irreducible_inventory(g: FiniteGroup, field: FiniteField, seed: int = DEFAULT_SEED) -> Inventory:
    """Every irreducible of g over field, from the regular module."""
    reg = regular_rep(g, field)
    report = chop(ModuleOverAlgebra.from_representation(reg), seed=seed)
    inv = _package(report, g, field, True, "regular")
    if sum(r.dim * r.provenance["composition_multiplicity"] for r in inv) != g.order:
        raise AssertionError("inventory does not account for the regular module")
    return inv


def constituent_inventory(rho: Representation, seed: int = DEFAULT_SEED) -> Inventory:
    """Irreducible composition factors of rho only (enough for socle multiplicities of rho)."""
    report = chop(ModuleOverAlgebra.from_representation(rho), seed=seed)
    return _package(report, rho.group, rho.field, False, f"constituents({rho.name})")


# ---------------------------------------------------------------------------
# radicals
# ---------------------------------------------------------------------------

def algebra_radical(a: MatrixAlgebra, seed: int = DEFAULT_SEED) -> Subspace:
    """Coefficient vectors of the elements acting as zero on every composition factor."""
    F, m = a.field, a.dim
    if m == 0:
        return Subspace.zero(F, 0)
    report = chop(ModuleOverAlgebra.from_algebra(a), seed=seed)
    cols = [f.mats.reshape(F.k, m, -1) for f in report.factors]
    action = np.concatenate(cols, axis=2)  # (k, m, sum d^2)
    # x with x @ action = 0
    return Subspace.from_rows(F, _kernel_stack(F, np.swapaxes(action, 1, 2)), m)


def radical_elements(a: MatrixAlgebra, rad: Subspace) -> np.ndarray:
    """Matrices (k, r, n, n) of a basis of the radical."""
    return a.elements_stack(a.field.from_stack(rad.basis))
