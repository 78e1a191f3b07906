"""Submodule lattices, radical and socle, relative projectivity and injectivity.

Every quantifier over submodules runs over an explicitly enumerated lattice.
When the lattice could not be enumerated completely the dependent answers
are INCONCLUSIVE rather than guesses.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field as dc_field

import numpy as np

from .errors import AmbientMismatch, GroupMismatch, PreconditionFailed
from .field import FiniteField
from .homalg import MatrixAlgebra, intertwiner_space
from .linalg import Matrix, Subspace, _kernel_stack, quotient_projection
from .meataxe import DEFAULT_SEED, ModuleOverAlgebra, algebra_radical, chop, spin
from .reps import Representation

LATTICE_CAP = 4096
SWEEP_LIMIT = 2**16
EXHAUSTIVE_END_LIMIT = 2**12
LEMMA_SAMPLES = 1000


def as_module(x) -> ModuleOverAlgebra:
    if isinstance(x, ModuleOverAlgebra):
        return x
    if isinstance(x, Representation):
        return ModuleOverAlgebra.from_representation(x)
    raise TypeError(f"cannot treat {type(x).__name__} as a module")


# ---------------------------------------------------------------------------
# verdicts
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Verdict:
    """TRUE, FALSE (with a witness) or INCONCLUSIVE (with a reason)."""

    status: str
    witness: object = None
    reason: str = ""

    @classmethod
    def true(cls) -> "Verdict":
        return cls("TRUE")

    @classmethod
    def false(cls, witness=None, reason: str = "") -> "Verdict":
        return cls("FALSE", witness, reason)

    @classmethod
    def inconclusive(cls, reason: str) -> "Verdict":
        return cls("INCONCLUSIVE", None, reason)

    @property
    def conclusive(self) -> bool:
        return self.status != "INCONCLUSIVE"

    def __bool__(self) -> bool:
        if self.status == "INCONCLUSIVE":
            raise ValueError(f"verdict is inconclusive: {self.reason}")
        return self.status == "TRUE"

    def __str__(self) -> str:
        if self.status == "FALSE" and self.witness is not None:
            return f"FALSE({_describe(self.witness)})"
        if self.status == "INCONCLUSIVE":
            return f"INCONCLUSIVE({self.reason})"
        return self.status


def _describe(w) -> str:
    if isinstance(w, Subspace):
        return f"dim {w.dim} node {w.vectors()}"
    return str(w)


# ---------------------------------------------------------------------------
# lattice
# ---------------------------------------------------------------------------

def _all_vectors(field: FiniteField, d: int) -> np.ndarray:
    idx = np.arange(field.q**d, dtype=np.int64)
    return np.stack([(idx // field.q**i) % field.q for i in range(d)], axis=1) if d else np.zeros((1, 0), dtype=np.int64)


def _orbit_labels(field: FiniteField, m: ModuleOverAlgebra, vecs: np.ndarray) -> np.ndarray:
    """Component labels of vectors under scalars and (when invertible) the acting matrices.

    A cyclic submodule only depends on the component of its generator.
    """
    F, d = field, m.dim
    n = vecs.shape[0]
    radix = F.q ** np.arange(d, dtype=np.int64)
    stack = F.to_stack(vecs)
    tables = []
    for c in range(2, F.q):
        tables.append(F.from_stack(F.scale(c, stack)) @ radix)
    invertible = all(Matrix(F, m.mats[:, i]).is_invertible() for i in range(m.n_gens))
    if invertible:
        for i in range(m.n_gens):
            img = F.smatmul(stack, np.swapaxes(m.mats[:, i], 1, 2))
            tables.append(F.from_stack(img) @ radix)
    labels = np.arange(n, dtype=np.int64)
    changed = True
    while changed:
        changed = False
        for t in tables:
            new = np.minimum(labels, labels[t])
            np.minimum.at(new, t, labels)
            if not np.array_equal(new, labels):
                labels = new
                changed = True
        labels = labels[labels]  # pointer jumping
    return labels


class SubmoduleLattice:
    """All submodules of a module (when ``complete``), closed under sums."""

    def __init__(self, module, cap: int = LATTICE_CAP):
        m = as_module(module)
        self.module = m
        self.cap = cap
        F, d = m.field, m.dim
        self.complete = True
        self.reason = ""
        zero, full = Subspace.zero(F, d), Subspace.full(F, d)
        nodes: dict[bytes, Subspace] = {zero.key(): zero, full.key(): full}
        cyclic: dict[bytes, Subspace] = {}
        if F.q**d > SWEEP_LIMIT:
            self.complete = False
            self.reason = f"q^dim = {F.q}^{d} exceeds the sweep limit {SWEEP_LIMIT}"
        elif d:
            vecs = _all_vectors(F, d)
            labels = _orbit_labels(F, m, vecs)
            reps = np.flatnonzero(labels == np.arange(len(labels)))
            reps = reps[reps != 0]
            gen_rows = []
            for r in reps:
                s = spin(m, vecs[r : r + 1])
                if s.key() not in cyclic:
                    cyclic[s.key()] = s
                    gen_rows.append(vecs[r])
            cyc = list(cyclic.values())
            gens = F.to_stack(np.stack(gen_rows))  # (k, C, d), one generator per cyclic submodule
            # sums of join-irreducible cyclic submodules already give every node
            irr = []
            for i, c in enumerate(cyc):
                inside = ~c.reduce(gens).any(axis=(0, 2))
                inside[i] = False
                below = np.flatnonzero(inside)
                if not len(below) or Subspace.from_rows(F, gens[:, below], d).dim < c.dim:
                    irr.append(i)
            jgens = gens[:, irr]
            frontier = [zero]
            while frontier and self.complete:
                nxt = []
                for s in frontier:
                    outside = np.flatnonzero(s.reduce(jgens).any(axis=(0, 2)))
                    for j in outside:
                        t = s + cyc[irr[j]]
                        if t.key() not in nodes:
                            nodes[t.key()] = t
                            nxt.append(t)
                            if len(nodes) > cap:
                                self.complete = False
                                self.reason = f"more than {cap} submodules"
                                break
                    if not self.complete:
                        break
                frontier = nxt
        self.cyclic = list(cyclic.values())
        self.nodes = sorted(nodes.values(), key=lambda s: (s.dim, s.key()))
        self._index = {s.key(): i for i, s in enumerate(self.nodes)}
        self._hasse = None

    def __len__(self) -> int:
        return len(self.nodes)

    def __contains__(self, s: Subspace) -> bool:
        return s.key() in self._index

    @property
    def zero(self) -> Subspace:
        return self.nodes[0]

    @property
    def top(self) -> Subspace:
        return self.nodes[-1]

    def index(self, s: Subspace) -> int:
        return self._index[s.key()]

    @property
    def hasse_edges(self) -> list[tuple[int, int]]:
        """Covering pairs (i, j): node i is a maximal proper submodule of node j."""
        if self._hasse is None:
            edges = []
            for j, b in enumerate(self.nodes):
                below = [i for i, a in enumerate(self.nodes[:j]) if a.dim < b.dim and b.contains(a)]
                for i in below:
                    a = self.nodes[i]
                    if not any(
                        self.nodes[x].dim > a.dim and self.nodes[x].contains(a) for x in below if x != i
                    ):
                        edges.append((i, j))
            self._hasse = edges
        return self._hasse

    def maximal(self) -> list[Subspace]:
        top = len(self.nodes) - 1
        return [self.nodes[i] for i, j in self.hasse_edges if j == top]

    def minimal(self) -> list[Subspace]:
        return [self.nodes[j] for i, j in self.hasse_edges if i == 0]

    def check_invariance(self) -> bool:
        from .linalg import is_invariant

        return all(is_invariant(self.module.field, self.module.mats, s) for s in self.nodes)

    def check_cyclic_complete(self) -> bool:
        """Every spin(v) is a node (the completeness certificate)."""
        m = self.module
        if m.field.q**m.dim > SWEEP_LIMIT:
            return False
        for v in _all_vectors(m.field, m.dim)[1:]:
            if spin(m, v[None]) not in self:
                return False
        return True


def submodule_lattice(module, cap: int = LATTICE_CAP) -> SubmoduleLattice:
    return SubmoduleLattice(module, cap)


# ---------------------------------------------------------------------------
# radical, socle
# ---------------------------------------------------------------------------

def _simples(m: ModuleOverAlgebra, inventory=None, seed: int = DEFAULT_SEED) -> list[ModuleOverAlgebra]:
    if inventory is None:
        return chop(m, seed=seed).factors
    return [as_module(s) for s in inventory]


def radical(m, inventory=None, seed: int = DEFAULT_SEED) -> Subspace:
    """Intersection of the kernels of all maps to simple modules."""
    m = as_module(m)
    F, d = m.field, m.dim
    rows = []
    for s in _simples(m, inventory, seed):
        hs = intertwiner_space(F, m.mats, s.mats)
        if hs.dim:
            rows.append(hs.basis.reshape(F.k, hs.dim * s.dim, d))
    if not rows:
        return Subspace.full(F, d)
    return Subspace.from_rows(F, _kernel_stack(F, np.concatenate(rows, axis=1)), d)


def socle(m, inventory=None, seed: int = DEFAULT_SEED) -> Subspace:
    """Sum of the images of all maps from simple modules."""
    m = as_module(m)
    F, d = m.field, m.dim
    rows = []
    for s in _simples(m, inventory, seed):
        hs = intertwiner_space(F, s.mats, m.mats)
        if hs.dim:
            ts = hs.basis.reshape(F.k, hs.dim, d, s.dim)
            rows.append(np.swapaxes(ts, 2, 3).reshape(F.k, hs.dim * s.dim, d))
    if not rows:
        return Subspace.zero(F, d)
    return Subspace.from_rows(F, np.concatenate(rows, axis=1), d)


@dataclass
class StructureReport:
    radical: Subspace
    socle: Subspace
    cosocle_dim: int
    socle_mult_vector: list[int]
    self_projective: Verdict | None = None
    self_injective: Verdict | None = None
    radical_superfluous: Verdict | None = None
    socle_essential: Verdict | None = None

    def flags(self) -> dict[str, str]:
        return {
            "self_projective": str(self.self_projective),
            "self_injective": str(self.self_injective),
            "radical_superfluous": str(self.radical_superfluous),
            "socle_essential": str(self.socle_essential),
        }


def radical_and_socle(m, inventory=None, seed: int = DEFAULT_SEED) -> StructureReport:
    """Radical, socle and the socle multiplicities dim Hom(S_i, M)."""
    mod = as_module(m)
    simples = _simples(mod, inventory, seed)
    rad = radical(mod, simples)
    soc = socle(mod, simples)
    mult = [intertwiner_space(mod.field, s.mats, mod.mats).dim for s in simples]
    return StructureReport(rad, soc, mod.dim - rad.dim, mult)


def structure_report(m, lattice: SubmoduleLattice | None = None, inventory=None, seed: int = DEFAULT_SEED) -> StructureReport:
    mod = as_module(m)
    lattice = lattice or submodule_lattice(mod)
    rep = radical_and_socle(mod, inventory, seed)
    rep.radical_superfluous = is_superfluous(rep.radical, lattice)
    rep.socle_essential = is_essential(rep.socle, lattice)
    rep.self_projective = is_relatively_projective(mod, mod, lattice)
    rep.self_injective = is_relatively_injective(mod, mod, lattice)
    return rep


# ---------------------------------------------------------------------------
# superfluous / essential
# ---------------------------------------------------------------------------

def _need_complete(lattice: SubmoduleLattice) -> Verdict | None:
    if not lattice.complete:
        return Verdict.inconclusive(f"incomplete lattice: {lattice.reason}")
    return None


def is_superfluous(n: Subspace, lattice: SubmoduleLattice) -> Verdict:
    """N + K = M forces K = M, for every node K."""
    bad = _need_complete(lattice)
    if bad is not None:
        return bad
    d = lattice.module.dim
    for k in lattice.nodes:
        if k.dim < d and (n + k).dim == d:
            return Verdict.false(k)
    return Verdict.true()


def is_essential(n: Subspace, lattice: SubmoduleLattice) -> Verdict:
    """N meet K = 0 forces K = 0, for every node K."""
    bad = _need_complete(lattice)
    if bad is not None:
        return bad
    for k in lattice.nodes:
        if k.dim and n.intersect(k).dim == 0:
            return Verdict.false(k)
    return Verdict.true()


# ---------------------------------------------------------------------------
# relative projectivity / injectivity
# ---------------------------------------------------------------------------

def _same_algebra(a: ModuleOverAlgebra, b: ModuleOverAlgebra) -> None:
    if a.field != b.field or a.n_gens != b.n_gens:
        raise GroupMismatch("modules over different algebras")


def _rank_rows(field: FiniteField, rows: np.ndarray, n: int) -> int:
    if rows.shape[1] == 0:
        return 0
    return Subspace.from_rows(field, rows, n).dim


def is_relatively_projective(m, n, n_lattice: SubmoduleLattice | None = None) -> Verdict:
    """Hom(M, N) -> Hom(M, N/L) is onto for every node L of N's lattice."""
    m, n = as_module(m), as_module(n)
    _same_algebra(m, n)
    n_lattice = n_lattice or submodule_lattice(n)
    if n_lattice.module is not n and n_lattice.module.dim != n.dim:
        raise AmbientMismatch("lattice belongs to another module")
    bad = _need_complete(n_lattice)
    if bad is not None:
        return bad
    F = m.field
    hom = intertwiner_space(F, m.mats, n.mats)
    ts = hom.basis.reshape(F.k, hom.dim, n.dim, m.dim)
    for node in n_lattice.nodes:
        if node.dim == n.dim:
            continue
        quot = n.quotient(node)
        target = intertwiner_space(F, m.mats, quot.mats).dim
        if target == 0:
            continue
        proj = quotient_projection(node)
        img = F.smatmul(proj[:, None], ts).reshape(F.k, hom.dim, quot.dim * m.dim)
        if _rank_rows(F, img, quot.dim * m.dim) < target:
            return Verdict.false(node, "post-composition into the quotient is not onto")
    return Verdict.true()


def is_relatively_injective(m, n, n_lattice: SubmoduleLattice | None = None) -> Verdict:
    """Hom(N, M) -> Hom(K, M) is onto for every node K of N's lattice."""
    m, n = as_module(m), as_module(n)
    _same_algebra(m, n)
    n_lattice = n_lattice or submodule_lattice(n)
    bad = _need_complete(n_lattice)
    if bad is not None:
        return bad
    F = m.field
    hom = intertwiner_space(F, n.mats, m.mats)
    ts = hom.basis.reshape(F.k, hom.dim, m.dim, n.dim)
    for node in n_lattice.nodes:
        if node.dim == 0:
            continue
        sub = n.submodule(node)
        target = intertwiner_space(F, sub.mats, m.mats).dim
        if target == 0:
            continue
        incl = np.swapaxes(node.basis, 1, 2)  # (k, n, dim K)
        img = F.smatmul(ts, incl[:, None]).reshape(F.k, hom.dim, m.dim * node.dim)
        if _rank_rows(F, img, m.dim * node.dim) < target:
            return Verdict.false(node, "restriction to the submodule is not onto")
    return Verdict.true()


def is_self_projective(m, lattice: SubmoduleLattice | None = None) -> Verdict:
    m = as_module(m)
    return is_relatively_projective(m, m, lattice or submodule_lattice(m))


def is_self_injective(m, lattice: SubmoduleLattice | None = None) -> Verdict:
    m = as_module(m)
    return is_relatively_injective(m, m, lattice or submodule_lattice(m))


# ---------------------------------------------------------------------------
# module constructions used by the property suite
# ---------------------------------------------------------------------------

def direct_sum_modules(a: ModuleOverAlgebra, b: ModuleOverAlgebra) -> ModuleOverAlgebra:
    _same_algebra(a, b)
    F = a.field
    d = a.dim + b.dim
    mats = np.zeros((F.k, a.n_gens, d, d), dtype=np.int64)
    mats[:, :, : a.dim, : a.dim] = a.mats
    mats[:, :, a.dim :, a.dim :] = b.mats
    return ModuleOverAlgebra(F, mats, a.provenance, f"{a.name}+{b.name}")


def dual_module(m: ModuleOverAlgebra) -> ModuleOverAlgebra:
    """Contragredient of a group module: generators act by inverse transposes."""
    F = m.field
    mats = np.stack([Matrix(F, m.mats[:, i]).inverse().T.data for i in range(m.n_gens)], axis=1)
    return ModuleOverAlgebra(F, mats, m.provenance, f"dual({m.name})")


def end_algebra_of(m) -> MatrixAlgebra:
    m = as_module(m)
    F, d = m.field, m.dim
    hs = intertwiner_space(F, m.mats, m.mats)
    return MatrixAlgebra(F, d, hs.basis.reshape(F.k, hs.dim, d, d), f"End({m.name})")


def column_space(field: FiniteField, t: np.ndarray) -> Subspace:
    """Image of the matrix stack t (k, r, c) as a subspace of F^r."""
    return Subspace.from_rows(field, np.swapaxes(t, 1, 2), t.shape[1])


def null_space(field: FiniteField, t: np.ndarray) -> Subspace:
    return Subspace.from_rows(field, _kernel_stack(field, t), t.shape[2])


def _hom_elements(field: FiniteField, basis: np.ndarray, limit: int, rng: np.random.Generator):
    """All combinations of a Hom basis (k, h, r, c) when small, else random ones."""
    h = basis.shape[1]
    flat = basis.reshape(field.k, h, -1)
    if field.q**h <= limit:
        combos = itertools.product(range(field.q), repeat=h)
    else:
        combos = (tuple(rng.integers(0, field.q, size=h).tolist()) for _ in range(limit))
    for c in combos:
        cs = field.to_stack(np.array([c], dtype=np.int64))
        yield c, field.smatmul(cs, flat).reshape(field.k, basis.shape[2], basis.shape[3])


def find_complement(s: Subspace, lattice: SubmoduleLattice) -> Subspace | None:
    for k in lattice.nodes:
        if k.dim + s.dim == s.ambient_dim and s.intersect(k).dim == 0:
            return k
    return None


def injective_hom(m: ModuleOverAlgebra, n: ModuleOverAlgebra, seed: int = DEFAULT_SEED) -> np.ndarray | None:
    """Some injective module map M -> N, if one is found."""
    F = m.field
    hs = intertwiner_space(F, m.mats, n.mats)
    basis = hs.basis.reshape(F.k, hs.dim, n.dim, m.dim)
    for _, t in _hom_elements(F, basis, 4096, np.random.default_rng(seed)):
        if Matrix(F, t).rank() == m.dim:
            return t
    return None


def surjective_hom(n: ModuleOverAlgebra, m: ModuleOverAlgebra, seed: int = DEFAULT_SEED) -> np.ndarray | None:
    """Some surjective module map N -> M, if one is found."""
    F = m.field
    hs = intertwiner_space(F, n.mats, m.mats)
    basis = hs.basis.reshape(F.k, hs.dim, m.dim, n.dim)
    for _, t in _hom_elements(F, basis, 4096, np.random.default_rng(seed)):
        if Matrix(F, t).rank() == m.dim:
            return t
    return None


# ---------------------------------------------------------------------------
# theorem verifiers
# ---------------------------------------------------------------------------

@dataclass
class RadEndReport:
    flavor: str
    end_dim: int
    rad_end_dim: int
    comparison_dim: int  # dim End(cosoc M) or dim End(soc M)
    holds: bool

    def as_dict(self) -> dict:
        return {
            "flavor": self.flavor,
            "end_dim": self.end_dim,
            "rad_end_dim": self.rad_end_dim,
            "comparison_end_dim": self.comparison_dim,
            "holds": self.holds,
        }


def _hypotheses(m: ModuleOverAlgebra, flavor: str, lattice: SubmoduleLattice, seed: int):
    rep = radical_and_socle(m, seed=seed)
    if flavor == "projective":
        h1 = is_relatively_projective(m, m, lattice)
        h2 = is_superfluous(rep.radical, lattice)
    elif flavor == "injective":
        h1 = is_relatively_injective(m, m, lattice)
        h2 = is_essential(rep.socle, lattice)
    else:
        raise ValueError(f"unknown flavor {flavor!r}")
    for h in (h1, h2):
        if h.status != "TRUE":
            raise PreconditionFailed(f"{flavor} hypotheses not established: {h}")
    return rep


def verify_rad_end_theorem(m, flavor: str, lattice: SubmoduleLattice | None = None, seed: int = DEFAULT_SEED) -> RadEndReport:
    """dim End(M) - dim rad End(M) = dim End(cosoc M) (projective) or dim End(soc M) (injective)."""
    m = as_module(m)
    lattice = lattice or submodule_lattice(m)
    rep = _hypotheses(m, flavor, lattice, seed)
    end = end_algebra_of(m)
    rad_end = algebra_radical(end, seed=seed)
    if flavor == "projective":
        other = m.quotient(rep.radical)
    else:
        other = m.submodule(rep.socle)
    other_end = intertwiner_space(m.field, other.mats, other.mats).dim
    return RadEndReport(flavor, end.dim, rad_end.dim, other_end, end.dim - rad_end.dim == other_end)


@dataclass
class LemmaReport:
    flavor: str
    mode: str  # EXHAUSTIVE or SAMPLED
    checked: int
    counterexamples: list = dc_field(default_factory=list)

    @property
    def holds(self) -> bool:
        return not self.counterexamples


def verify_lemma_rad_end_characterization(m, flavor: str, lattice: SubmoduleLattice | None = None,
                                          seed: int = DEFAULT_SEED) -> LemmaReport:
    """rad End(M) = {f : im f superfluous} (projective) or {f : ker f essential} (injective)."""
    m = as_module(m)
    lattice = lattice or submodule_lattice(m)
    _hypotheses(m, flavor, lattice, seed)
    if not lattice.complete:
        raise PreconditionFailed("lattice incomplete")
    F = m.field
    end = end_algebra_of(m)
    rad = algebra_radical(end, seed=seed)
    mode = "EXHAUSTIVE" if F.q**end.dim <= EXHAUSTIVE_END_LIMIT else "SAMPLED"
    rng = np.random.default_rng(seed)
    report = LemmaReport(flavor, mode, 0)
    for coeffs, f in _hom_elements(F, end.basis, EXHAUSTIVE_END_LIMIT if mode == "EXHAUSTIVE" else LEMMA_SAMPLES, rng):
        in_rad = rad.contains(list(coeffs))
        if flavor == "projective":
            prop = bool(is_superfluous(column_space(F, f), lattice))
        else:
            prop = bool(is_essential(null_space(F, f), lattice))
        report.checked += 1
        if in_rad != prop:
            report.counterexamples.append(coeffs)
    return report
