"""Fully enumerated finite groups.

Every group is held as a faithful permutation group on ``m`` points together
with a *base* (a list of points whose images determine an element).  That
gives vectorized products for whole arrays of elements and cheap index
lookup, whatever the group "really" is (permutations, matrices over GF(q),
tuples in a direct product).  Elements are integers ``0..|G|-1`` ordered by
their canonical labels: permutation arrays for symmetric groups, row-major
entry codes for matrix groups, component-index tuples for products.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Sequence

import numpy as np

from .errors import GroupMismatch, NotAnAntiInvolution, NotASubgroup, SizeCapExceeded
from .field import FiniteField

TABLE_CAP = 2048
ELEMENT_CAP = 100_000
AUDIT_EXHAUSTIVE = 300


class FiniteGroup:
    """A finite group with elements indexed ``0..order-1``.

    Products follow function composition on the underlying points:
    ``mul(a, b)`` acts as ``b`` first, then ``a``.
    """

    def __init__(
        self,
        name: str,
        perms: np.ndarray,
        base: Sequence[int],
        labels: Sequence[tuple],
        generators: Sequence[int],
        audit: bool = True,
    ):
        self.name = name
        self.perms = np.ascontiguousarray(perms, dtype=np.int64)
        self.order = self.perms.shape[0]
        self.n_points = self.perms.shape[1]
        self.base = list(base)
        self.labels = [tuple(l) for l in labels]
        self.generators = list(generators)
        if self.n_points ** max(len(self.base), 1) >= 2**62:
            raise SizeCapExceeded("base too long for 64-bit element keys")
        self._radix = self.n_points ** np.arange(len(self.base), dtype=np.int64)
        keys = self._keys(self.perms)
        order = np.argsort(keys)
        self._sorted_keys = keys[order]
        self._sorted_idx = order
        if np.any(np.diff(self._sorted_keys) == 0):
            raise ValueError("base does not separate the elements")
        ident = np.arange(self.n_points, dtype=np.int64)
        self.identity = int(self.lookup(ident[None])[0])
        self.table: np.ndarray | None = None
        if self.order <= TABLE_CAP:
            self.table = np.empty((self.order, self.order), dtype=np.int64)
            tail = self.perms[:, self.base]
            for a in range(self.order):
                self.table[a] = self._lookup_keys(self._keys_base(self.perms[a][tail]))
        inv_perm = np.empty_like(self.perms)
        rows = np.arange(self.order)[:, None]
        inv_perm[rows, self.perms] = np.arange(self.n_points)[None, :]
        self.inverses = self.lookup(inv_perm)
        self._label_index = {l: i for i, l in enumerate(self.labels)}
        self._build_words()
        self._cache: dict = {}
        if audit:
            self.audit()

    # -- element lookup ---------------------------------------------------
    def _keys_base(self, base_images: np.ndarray) -> np.ndarray:
        return base_images @ self._radix

    def _keys(self, perms: np.ndarray) -> np.ndarray:
        return self._keys_base(perms[:, self.base])

    def _lookup_keys(self, keys: np.ndarray) -> np.ndarray:
        pos = np.searchsorted(self._sorted_keys, keys)
        pos = np.minimum(pos, self.order - 1)
        if not np.array_equal(self._sorted_keys[pos], keys):
            raise KeyError("permutation is not an element of the group")
        return self._sorted_idx[pos]

    def lookup(self, perms: np.ndarray) -> np.ndarray:
        """Indices of the given permutations (rows)."""
        return self._lookup_keys(self._keys(np.asarray(perms, dtype=np.int64)))

    def index_of_label(self, label) -> int:
        return self._label_index[tuple(label)]

    def __len__(self) -> int:
        return self.order

    def __repr__(self) -> str:
        return f"<{type(self).__name__} {self.name} of order {self.order}>"

    # -- arithmetic ---------------------------------------------------------
    def mul(self, a: int, b: int) -> int:
        if self.table is not None:
            return int(self.table[a, b])
        return int(self._lookup_keys(self._keys_base(self.perms[a][self.perms[b][self.base]][None]))[0])

    def mul_array(self, a, b) -> np.ndarray:
        """Elementwise products of broadcastable index arrays."""
        a, b = np.broadcast_arrays(np.asarray(a, dtype=np.int64), np.asarray(b, dtype=np.int64))
        if self.table is not None:
            return self.table[a, b]
        shape = a.shape
        a, b = a.ravel(), b.ravel()
        imgs = self.perms[a[:, None], self.perms[b][:, self.base]]
        return self._lookup_keys(self._keys_base(imgs)).reshape(shape)

    def inv(self, a: int) -> int:
        return int(self.inverses[a])

    def power(self, a: int, n: int) -> int:
        if n < 0:
            return self.power(self.inv(a), -n)
        r = self.identity
        for _ in range(n):
            r = self.mul(r, a)
        return r

    def conjugate(self, x: int, g: int) -> int:
        """x g x^-1."""
        return self.mul(self.mul(x, g), self.inv(x))

    def element_order(self, a: int) -> int:
        n, x = 1, a
        while x != self.identity:
            x = self.mul(x, a)
            n += 1
        return n

    def elements(self) -> range:
        return range(self.order)

    def is_abelian(self) -> bool:
        if "abelian" not in self._cache:
            gens = self.generators
            self._cache["abelian"] = all(self.mul(a, b) == self.mul(b, a) for a in gens for b in gens)
        return self._cache["abelian"]

    # -- words in the generators ----------------------------------------------
    def _build_words(self) -> None:
        """BFS tree: element g = word_parent[g] * generators[word_gen[g]]."""
        n = self.order
        parent = np.full(n, -1, dtype=np.int64)
        gen_of = np.full(n, -1, dtype=np.int64)
        seen = np.zeros(n, dtype=bool)
        seen[self.identity] = True
        order = [self.identity]
        frontier = np.array([self.identity], dtype=np.int64)
        while frontier.size:
            nxt = []
            for j, s in enumerate(self.generators):
                prods = self.mul_array(frontier, s)
                fresh_mask = ~seen[prods]
                if not fresh_mask.any():
                    continue
                # keep the first occurrence of each new element
                cand, first = np.unique(prods[fresh_mask], return_index=True)
                src = frontier[fresh_mask][first]
                seen[cand] = True
                parent[cand] = src
                gen_of[cand] = j
                nxt.append(cand)
            frontier = np.concatenate(nxt) if nxt else np.array([], dtype=np.int64)
            order.extend(frontier.tolist())
        if len(order) != n:
            raise NotASubgroup(f"generators of {self.name} do not generate the whole element list")
        self.word_parent = parent
        self.word_gen = gen_of
        self.bfs_order = np.array(order, dtype=np.int64)

    # -- audits ---------------------------------------------------------------
    def audit(self, samples: int = 10_000, seed: int = 0) -> None:
        """Group-axiom audit: identity, inverses, associativity."""
        ids = np.arange(self.order)
        if not np.array_equal(self.mul_array(self.identity, ids), ids):
            raise ValueError("identity fails")
        if not np.all(self.mul_array(ids, self.inverses) == self.identity):
            raise ValueError("inverse fails")
        if self.table is not None and self.order <= AUDIT_EXHAUSTIVE:
            t = self.table
            for a in range(self.order):
                if not np.array_equal(t[t[a]], t[a][t]):  # (ab)c == a(bc) for all b, c
                    raise ValueError("associativity fails")
        else:
            rng = np.random.default_rng(seed)
            a, b, c = rng.integers(0, self.order, size=(3, samples))
            lhs = self.mul_array(self.mul_array(a, b), c)
            rhs = self.mul_array(a, self.mul_array(b, c))
            if not np.array_equal(lhs, rhs):
                raise ValueError("associativity fails")

    # -- structure --------------------------------------------------------------
    def conjugacy_classes(self) -> list[list[int]]:
        if "classes" not in self._cache:
            ids = np.arange(self.order)
            seen = np.zeros(self.order, dtype=bool)
            classes = []
            for g in range(self.order):
                if seen[g]:
                    continue
                cls = np.unique(self.mul_array(self.mul_array(ids, g), self.inverses))
                seen[cls] = True
                classes.append(cls.tolist())
            self._cache["classes"] = classes
        return self._cache["classes"]

    def closure(self, gens: Sequence[int]) -> np.ndarray:
        """Sorted indices of the subgroup generated by ``gens``."""
        members = {self.identity}
        frontier = [self.identity]
        gens = [int(g) for g in gens]
        while frontier:
            f = np.array(frontier)
            new = []
            for s in gens:
                for x in self.mul_array(f, s).tolist():
                    if x not in members:
                        members.add(x)
                        new.append(x)
            frontier = new
        return np.array(sorted(members), dtype=np.int64)

    @property
    def root(self) -> "FiniteGroup":
        return self

    def in_root(self, idx) -> np.ndarray:
        """Map own indices to indices of the root (non-subgroup) ancestor."""
        return np.asarray(idx, dtype=np.int64)


class Subgroup(FiniteGroup):
    """A subgroup, also usable as a group in its own right.

    ``members[i]`` is the parent index of the subgroup's element ``i``.
    """

    def __init__(self, parent: FiniteGroup, members: np.ndarray, gens: Sequence[int], name: str):
        members = np.asarray(members, dtype=np.int64)
        self.parent = parent
        self.members = members
        pos = {int(m): i for i, m in enumerate(members)}
        self._pos = np.full(parent.order, -1, dtype=np.int64)
        self._pos[members] = np.arange(len(members))
        local_gens = [pos[int(g)] for g in gens] if gens else [pos[parent.identity]]
        super().__init__(
            name,
            parent.perms[members],
            parent.base,
            [parent.labels[m] for m in members],
            local_gens,
            audit=False,
        )
        for attr in ("matrix_field", "matrix_degree", "factors"):
            if hasattr(parent, attr):
                setattr(self, attr, getattr(parent, attr))

    def local(self, parent_idx) -> np.ndarray:
        """Parent indices -> subgroup indices (-1 when not a member)."""
        return self._pos[np.asarray(parent_idx, dtype=np.int64)]

    def contains(self, parent_idx: int) -> bool:
        return self._pos[parent_idx] >= 0

    @property
    def root(self) -> FiniteGroup:
        return self.parent.root

    def in_root(self, idx) -> np.ndarray:
        return self.parent.in_root(self.members[np.asarray(idx, dtype=np.int64)])

    def matrix(self, g: int) -> np.ndarray:
        return self.parent.matrix(int(self.members[g]))


def is_subgroup_of(h: FiniteGroup, g: FiniteGroup) -> bool:
    x = h
    while isinstance(x, Subgroup):
        if x.parent is g:
            return True
        x = x.parent
    return False


def subgroup_from_generators(g: FiniteGroup, gens: Sequence[int], name: str | None = None) -> Subgroup:
    """Subgroup generated by ``gens`` (parent indices), certified closed."""
    gens = [int(x) for x in gens]
    for x in gens:
        if not 0 <= x < g.order:
            raise NotASubgroup(f"{x} is not an element of {g.name}")
    members = g.closure(gens)
    sub = Subgroup(g, members, gens, name or f"<{len(gens)} gens in {g.name}>")
    # closure certificate: products and inverses stay inside
    mem = sub.members
    inside = np.zeros(g.order, dtype=bool)
    inside[mem] = True
    if not inside[g.identity] or not inside[g.inverses[mem]].all():
        raise NotASubgroup("closure failed to produce a subgroup")
    for s in gens:
        if not inside[g.mul_array(mem, s)].all():
            raise NotASubgroup("closure failed to produce a subgroup")
    if g.order % sub.order:
        raise NotASubgroup("Lagrange violated")
    return sub


def trivial_subgroup(g: FiniteGroup) -> Subgroup:
    return subgroup_from_generators(g, [], name=f"1 < {g.name}")


def whole_group(g: FiniteGroup) -> Subgroup:
    return subgroup_from_generators(g, g.generators, name=g.name)


# ---------------------------------------------------------------------------
# constructions
# ---------------------------------------------------------------------------

def _closure_perms(gen_perms: Sequence[np.ndarray], base: Sequence[int], cap: int = ELEMENT_CAP) -> np.ndarray:
    m = len(gen_perms[0]) if gen_perms else 1
    radix = m ** np.arange(len(base), dtype=np.int64)
    ident = np.arange(m, dtype=np.int64)
    seen = {int(ident[base] @ radix)}
    elems = [ident]
    frontier = ident[None]
    gens = [np.asarray(p, dtype=np.int64) for p in gen_perms]
    while frontier.shape[0]:
        new = []
        for s in gens:
            prods = frontier[:, s]
            keys = prods[:, base] @ radix
            for row, key in zip(prods, keys.tolist()):
                if key not in seen:
                    seen.add(key)
                    new.append(row)
                    if len(seen) > cap:
                        raise SizeCapExceeded(f"group exceeds the element cap {cap}")
        elems.extend(new)
        frontier = np.array(new) if new else np.zeros((0, m), dtype=np.int64)
    return np.array(elems)


def permutation_group(
    name: str,
    gen_perms: Sequence[Sequence[int]],
    n_points: int,
    base: Sequence[int] | None = None,
    label_fn: Callable[[np.ndarray], tuple] | None = None,
    cap: int = ELEMENT_CAP,
) -> FiniteGroup:
    """Group generated by permutations (0-based images) of ``n_points`` points."""
    base = list(range(n_points)) if base is None else list(base)
    gen_perms = [np.asarray(p, dtype=np.int64) for p in gen_perms] or [np.arange(n_points)]
    perms = _closure_perms(gen_perms, base, cap)
    label_fn = label_fn or (lambda p: tuple(int(x) for x in p))
    labels = [label_fn(p) for p in perms]
    order = sorted(range(len(perms)), key=lambda i: labels[i])
    perms = perms[order]
    labels = [labels[i] for i in order]
    index = {l: i for i, l in enumerate(labels)}
    gens = [index[label_fn(p)] for p in gen_perms]
    return FiniteGroup(name, perms, base, labels, gens)


def symmetric_group(n: int) -> FiniteGroup:
    if not 2 <= n <= 7:
        raise SizeCapExceeded("symmetric groups are supported for 2 <= n <= 7")
    transposition = [1, 0] + list(range(2, n))
    cycle = [(i + 1) % n for i in range(n)]
    g = permutation_group(f"S{n}", [transposition, cycle], n, base=range(n - 1))
    g.degree = n
    return g


def alternating_group(n: int) -> FiniteGroup:
    if not 3 <= n <= 7:
        raise SizeCapExceeded("alternating groups are supported for 3 <= n <= 7")
    gens = []
    for i in range(2, n):
        p = list(range(n))
        p[0], p[1], p[i] = 1, i, 0
        gens.append(p)
    g = permutation_group(f"A{n}", gens, n, base=range(n - 2) if n > 3 else range(2))
    g.degree = n
    return g


def cyclic_group(n: int) -> FiniteGroup:
    if n < 1:
        raise ValueError("cyclic group order must be positive")
    g = permutation_group(f"C{n}", [[(i + 1) % n for i in range(n)]], n, base=[0], label_fn=lambda p: (int(p[0]),))
    return g


def dihedral_group(n: int) -> FiniteGroup:
    """Symmetries of the regular n-gon (order 2n)."""
    if n < 3:
        raise ValueError("dihedral group needs n >= 3")
    rot = [(i + 1) % n for i in range(n)]
    ref = [(-i) % n for i in range(n)]
    return permutation_group(f"D{2 * n}", [rot, ref], n, base=[0, 1])


def sign_of(perm: Sequence[int]) -> int:
    perm = list(perm)
    seen = [False] * len(perm)
    s = 1
    for i in range(len(perm)):
        if not seen[i]:
            j, length = i, 0
            while not seen[j]:
                seen[j] = True
                j = perm[j]
                length += 1
            if length % 2 == 0:
                s = -s
    return s


# -- matrix groups ------------------------------------------------------------

def _all_vectors(F: FiniteField, n: int) -> np.ndarray:
    """Vector codes (q^n, n), index = sum v_i q^i."""
    idx = np.arange(F.q**n, dtype=np.int64)
    return np.stack([(idx // F.q**i) % F.q for i in range(n)], axis=1)


def matrix_group(F: FiniteField, n: int, gen_mats: Sequence, name: str, cap: int = ELEMENT_CAP) -> FiniteGroup:
    """Group generated by invertible n x n matrices (entry codes) over F."""
    vecs = _all_vectors(F, n)
    vstack = F.to_stack(vecs)
    radix = F.q ** np.arange(n, dtype=np.int64)

    def perm_of(mat) -> np.ndarray:
        ms = F.to_stack(np.asarray(mat, dtype=np.int64))
        img = F.smatmul(vstack, np.swapaxes(ms, 1, 2))  # rows v -> (M v)^T
        return F.from_stack(img) @ radix

    base = [int(F.q**j) for j in range(n)]  # e_1..e_n

    def label_fn(perm: np.ndarray) -> tuple:
        cols = vecs[perm[base]]  # column j = M e_j
        return tuple(int(x) for x in cols.T.reshape(-1))

    g = permutation_group(name, [perm_of(m) for m in gen_mats], F.q**n, base=base, label_fn=label_fn, cap=cap)
    g.matrix_field = F
    g.matrix_degree = n
    g.matrix = lambda idx, _g=g: np.array(_g.labels[idx], dtype=np.int64).reshape(n, n)
    g.perm_of_matrix = perm_of
    return g


def _gl_order(n: int, q: int) -> int:
    out = 1
    for i in range(n):
        out *= q**n - q**i
    return out


def general_linear_group(n: int, F: FiniteField) -> FiniteGroup:
    if not ((n == 2 and F.q <= 7) or (n == 3 and F.q == 2) or n == 1):
        raise SizeCapExceeded("GL_n(q) supported for n = 2, q <= 7 and n = 3, q = 2")
    gens = []
    d = np.eye(n, dtype=np.int64)
    d[0, 0] = F.generator
    gens.append(d)
    t = np.eye(n, dtype=np.int64)
    if n > 1:
        t[0, 1] = 1
        gens.append(t)
        swap = np.eye(n, dtype=np.int64)[[1, 0] + list(range(2, n))]
        gens.append(swap)
        cyc = np.roll(np.eye(n, dtype=np.int64), 1, axis=0)
        gens.append(cyc)
    g = matrix_group(F, n, gens, f"GL{n}({F.q})")
    if g.order != _gl_order(n, F.q):
        raise AssertionError(f"GL_{n}({F.q}) has wrong order {g.order}")
    return g


def quaternion_group() -> FiniteGroup:
    """Q8 realized inside SL_2(F_3)."""
    from .field import make_field

    F3 = make_field(3)
    i = [[0, 2], [1, 0]]
    j = [[1, 1], [1, 2]]
    g = matrix_group(F3, 2, [i, j], "Q8")
    assert g.order == 8
    return g


# -- products -----------------------------------------------------------------

def product_group(*groups: FiniteGroup) -> FiniteGroup:
    total = 1
    for h in groups:
        total *= h.order
    if total > ELEMENT_CAP:
        raise SizeCapExceeded(f"product order {total} exceeds the element cap {ELEMENT_CAP}")
    offsets = np.cumsum([0] + [h.n_points for h in groups])
    m = int(offsets[-1])
    gen_perms = []
    for c, h in enumerate(groups):
        for s in h.generators:
            p = np.arange(m)
            p[offsets[c] : offsets[c + 1]] = h.perms[s] + offsets[c]
            gen_perms.append(p)
    base = [b + int(offsets[c]) for c, h in enumerate(groups) for b in h.base]

    def label_fn(perm: np.ndarray) -> tuple:
        return tuple(
            int(h.lookup((perm[offsets[c] : offsets[c + 1]] - offsets[c])[None])[0]) for c, h in enumerate(groups)
        )

    name = "x".join(h.name for h in groups)
    g = permutation_group(name, gen_perms, m, base=base, label_fn=label_fn)
    g.factors = list(groups)
    g.component = lambda idx, _g=g: _g.labels[idx]
    return g


def diagonal_subgroup(g: FiniteGroup, arity: int | None = None) -> Subgroup:
    factors = getattr(g, "factors", None)
    if not factors:
        raise GroupMismatch("diagonal subgroup needs a product group")
    if arity is not None and arity != len(factors):
        raise GroupMismatch(f"product has {len(factors)} factors, not {arity}")
    h = factors[0]
    if any(f is not h and f.labels != h.labels for f in factors):
        raise GroupMismatch("diagonal subgroup needs identical factors")
    gens = [g.index_of_label((s,) * len(factors)) for s in h.generators]
    return subgroup_from_generators(g, gens, name=f"diag({h.name})")


# -- named subgroups ----------------------------------------------------------

def young_subgroup(g: FiniteGroup, m: int) -> Subgroup:
    """S_m acting on the first m points of S_n."""
    n = g.n_points
    gens = []
    for i in range(m - 1):
        p = list(range(n))
        p[i], p[i + 1] = p[i + 1], p[i]
        gens.append(int(g.lookup(np.array([p]))[0]))
    return subgroup_from_generators(g, gens, name=f"S{m}<{g.name}")


def point_stabilizer(g: FiniteGroup, point: int) -> Subgroup:
    members = np.flatnonzero(g.perms[:, point] == point)
    return Subgroup(g, members, members.tolist(), f"Stab({point})<{g.name}")


def _matrix_index(g: FiniteGroup, mat) -> int:
    return g.index_of_label(tuple(int(x) for x in np.asarray(mat).reshape(-1)))


def unitriangular_subgroup(g: FiniteGroup) -> Subgroup:
    F, n = g.matrix_field, g.matrix_degree
    gens = []
    for i in range(n - 1):
        for a in range(1, F.q):
            m = np.eye(n, dtype=np.int64)
            m[i, i + 1] = a
            gens.append(_matrix_index(g, m))
    return subgroup_from_generators(g, gens, name=f"U<{g.name}")


def torus_subgroup(g: FiniteGroup) -> Subgroup:
    F, n = g.matrix_field, g.matrix_degree
    gens = []
    for i in range(n):
        m = np.eye(n, dtype=np.int64)
        m[i, i] = F.generator
        gens.append(_matrix_index(g, m))
    return subgroup_from_generators(g, gens, name=f"T<{g.name}")


def borel_subgroup(g: FiniteGroup) -> Subgroup:
    u = unitriangular_subgroup(g)
    t = torus_subgroup(g)
    gens = list(u.members[u.generators]) + list(t.members[t.generators])
    return subgroup_from_generators(g, gens, name=f"B<{g.name}")


def cartan_subgroup(g: FiniteGroup) -> Subgroup:
    """Non-split torus {a I + b J} of GL_2(F_q), J = [[0, z], [1, 0]], z a generator of F_q^*."""
    F = g.matrix_field
    if g.matrix_degree != 2 or F.p == 2:
        raise GroupMismatch("the Cartan subgroup is built for GL_2(F_q) with q odd")
    z = F.generator
    gens = []
    for a in range(F.q):
        for b in range(F.q):
            if a == 0 and b == 0:
                continue
            gens.append(_matrix_index(g, [[a, F.mul(b, z)], [b, a]]))
    c = subgroup_from_generators(g, gens, name=f"C<{g.name}")
    if c.order != F.q**2 - 1:
        raise AssertionError("Cartan subgroup has the wrong order")
    return c


# ---------------------------------------------------------------------------
# cosets, double cosets, anti-involutions
# ---------------------------------------------------------------------------

def left_coset_reps(g: FiniteGroup, h: Subgroup) -> tuple[np.ndarray, np.ndarray]:
    """Lowest-index representatives t_i of G = U t_i H, and coset id of each element."""
    hm = h.members
    coset = np.full(g.order, -1, dtype=np.int64)
    reps = []
    for x in range(g.order):
        if coset[x] < 0:
            coset[g.mul_array(x, hm)] = len(reps)
            reps.append(x)
    return np.array(reps, dtype=np.int64), coset


def right_coset_reps(g: FiniteGroup, h: Subgroup) -> tuple[np.ndarray, np.ndarray]:
    """Lowest-index representatives x_j of G = U H x_j."""
    hm = h.members
    coset = np.full(g.order, -1, dtype=np.int64)
    reps = []
    for x in range(g.order):
        if coset[x] < 0:
            coset[g.mul_array(hm, x)] = len(reps)
            reps.append(x)
    return np.array(reps, dtype=np.int64), coset


@dataclass
class DoubleCosetDecomposition:
    """Partition of G into H x K orbits g -> h g k.

    For every element ``g = left[g] * representatives[membership[g]] * right[g]``
    with ``left[g]`` in H and ``right[g]`` in K (parent indices).
    """

    group: FiniteGroup
    h: Subgroup
    k: Subgroup
    representatives: np.ndarray
    membership: np.ndarray
    sizes: list[int]
    left: np.ndarray
    right: np.ndarray

    def __len__(self) -> int:
        return len(self.representatives)


def double_cosets(g: FiniteGroup, h: Subgroup, k: Subgroup | None = None) -> DoubleCosetDecomposition:
    k = h if k is None else k
    for s in (h, k):
        if s.parent is not g:
            raise GroupMismatch("double cosets need subgroups of the given group")
    hm, km = h.members, k.members
    member = np.full(g.order, -1, dtype=np.int64)
    left = np.full(g.order, -1, dtype=np.int64)
    right = np.full(g.order, -1, dtype=np.int64)
    reps, sizes = [], []
    hh, kk = np.meshgrid(hm, km, indexing="ij")
    hh, kk = hh.ravel(), kk.ravel()
    for x in range(g.order):
        if member[x] >= 0:
            continue
        elems = g.mul_array(g.mul_array(hh, x), kk)
        uniq, first = np.unique(elems, return_index=True)
        member[uniq] = len(reps)
        left[uniq] = hh[first]
        right[uniq] = kk[first]
        reps.append(x)
        sizes.append(len(uniq))
    dc = DoubleCosetDecomposition(g, h, k, np.array(reps, dtype=np.int64), member, sizes, left, right)
    if sum(sizes) != g.order:
        raise AssertionError("double cosets do not partition G")
    return dc


@dataclass
class AntiInvolution:
    """A map iota with iota(gh) = iota(h) iota(g) and iota o iota = id."""

    group: FiniteGroup
    images: np.ndarray
    name: str = "iota"

    def __post_init__(self):
        g, im = self.group, np.asarray(self.images, dtype=np.int64)
        self.images = im
        if sorted(im.tolist()) != list(range(g.order)):
            raise NotAnAntiInvolution("not a bijection")
        if not np.array_equal(im[im], np.arange(g.order)):
            raise NotAnAntiInvolution("not an involution")
        if g.table is not None:
            t = g.table
            if not np.array_equal(im[t], t[np.ix_(im, im)].T):
                raise NotAnAntiInvolution("not an anti-homomorphism")
        else:
            rng = np.random.default_rng(0)
            a, b = rng.integers(0, g.order, size=(2, 10_000))
            if not np.array_equal(im[g.mul_array(a, b)], g.mul_array(im[b], im[a])):
                raise NotAnAntiInvolution("not an anti-homomorphism")

    def __call__(self, x):
        return self.images[x]


def inversion(g: FiniteGroup) -> AntiInvolution:
    return AntiInvolution(g, g.inverses.copy(), "inversion")


def identity_map(g: FiniteGroup) -> AntiInvolution:
    """The identity, an anti-involution exactly when g is abelian."""
    return AntiInvolution(g, np.arange(g.order), "identity")


def transpose_map(g: FiniteGroup) -> AntiInvolution:
    n = g.matrix_degree
    im = [g.index_of_label(tuple(np.array(l).reshape(n, n).T.reshape(-1).tolist())) for l in g.labels]
    return AntiInvolution(g, np.array(im), "transpose")


def check_anti_involution_preserves_double_cosets(iota: AntiInvolution, d: DoubleCosetDecomposition) -> bool:
    if iota.group is not d.group:
        raise GroupMismatch("anti-involution and decomposition live on different groups")
    return bool(np.array_equal(d.membership[iota.images], d.membership))
