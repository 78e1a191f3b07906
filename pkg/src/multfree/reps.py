"""Matrix representations of enumerated groups and the standard functors."""

from __future__ import annotations

from typing import Sequence

import numpy as np

from .errors import CtxMismatch, GroupMismatch, NoSuchRoot, NotARepresentation, SizeCapExceeded
from .field import FieldElement, FiniteField
from .groups import FiniteGroup, Subgroup, left_coset_reps, sign_of
from .linalg import Matrix, Subspace, quot_action, sub_action

MAX_INDUCED_DIM = 256
REGULAR_CAP = 256
PAIR_CHECK_LIMIT = 300


class Representation:
    """A homomorphism G -> GL_d(F) with an image stored for every element.

    ``images`` is a coefficient stack of shape ``(k, |G|, d, d)``; matrices act
    on column vectors.
    """

    def __init__(self, group: FiniteGroup, field: FiniteField, images: np.ndarray, name: str = "rho", check: bool = True):
        images = np.asarray(images, dtype=np.int64)
        if images.shape[:2] != (field.k, group.order) or images.shape[2] != images.shape[3]:
            raise NotARepresentation(f"image stack of shape {images.shape} does not fit {group.name} over {field}")
        self.group = group
        self.field = field
        self.images = images
        self.dim = images.shape[2]
        self.name = name
        self.provenance: dict = {}
        if check:
            self.certify()

    @classmethod
    def from_generators(cls, group: FiniteGroup, field: FiniteField, gen_mats: Sequence, name: str = "rho") -> "Representation":
        """Extend generator images along the group's BFS words and certify."""
        mats = [m if isinstance(m, Matrix) else Matrix.from_codes(field, m) for m in gen_mats]
        if len(mats) != len(group.generators):
            raise NotARepresentation(f"{group.name} has {len(group.generators)} generators, got {len(mats)} images")
        d = mats[0].rows if mats else 1
        gens = np.stack([m.data for m in mats], axis=1)
        images = np.zeros((field.k, group.order, d, d), dtype=np.int64)
        images[0, group.identity] = np.eye(d, dtype=np.int64)
        depth = np.zeros(group.order, dtype=np.int64)
        for g in group.bfs_order[1:]:
            depth[g] = depth[group.word_parent[g]] + 1
        for level in range(1, int(depth.max(initial=0)) + 1):
            els = np.flatnonzero(depth == level)
            images[:, els] = field.smatmul(images[:, group.word_parent[els]], gens[:, group.word_gen[els]])
        return cls(group, field, images, name)

    # -- access ---------------------------------------------------------------
    def image(self, g: int) -> Matrix:
        return Matrix(self.field, self.images[:, g])

    @property
    def gen_images(self) -> list[Matrix]:
        return [self.image(s) for s in self.group.generators]

    def gen_stack(self) -> np.ndarray:
        """Generator images as a stack (k, #gens, d, d)."""
        return self.images[:, self.group.generators]

    def __repr__(self) -> str:
        return f"<Representation {self.name} of {self.group.name} over {self.field}, dim {self.dim}>"

    # -- certification --------------------------------------------------------
    def certify(self) -> None:
        """rho(e) = I and rho(s) rho(g) = rho(sg) for every generator s and every g.

        By induction on word length this proves the homomorphism property.
        """
        F, g = self.field, self.group
        eye = np.zeros((F.k, self.dim, self.dim), dtype=np.int64)
        eye[0] = np.eye(self.dim, dtype=np.int64)
        if not np.array_equal(self.images[:, g.identity], eye):
            raise NotARepresentation(f"{self.name}: identity does not map to I")
        every = np.arange(g.order)
        for s in g.generators:
            lhs = F.smatmul(self.images[:, s][:, None], self.images)
            if not np.array_equal(lhs, self.images[:, g.mul_array(s, every)]):
                raise NotARepresentation(f"{self.name}: homomorphism property fails")

    def check_all_pairs(self, samples: int = 10_000, seed: int = 0) -> bool:
        """rho(g) rho(h) = rho(gh), exhaustively up to 300 elements, else sampled."""
        F, g = self.field, self.group
        if g.order <= PAIR_CHECK_LIMIT:
            every = np.arange(g.order)
            for a in range(g.order):
                lhs = F.smatmul(self.images[:, a][:, None], self.images)
                if not np.array_equal(lhs, self.images[:, g.mul_array(a, every)]):
                    return False
            return True
        rng = np.random.default_rng(seed)
        a, b = rng.integers(0, g.order, size=(2, samples))
        lhs = F.smatmul(self.images[:, a], self.images[:, b])
        return bool(np.array_equal(lhs, self.images[:, g.mul_array(a, b)]))

    def is_invertible_everywhere(self) -> bool:
        # rho(g) rho(g^-1) = I follows from the homomorphism property
        F = self.field
        prod = F.smatmul(self.images, self.images[:, self.group.inverses])
        eye = np.zeros_like(prod)
        eye[0] = np.eye(self.dim, dtype=np.int64)
        return bool(np.array_equal(prod, eye))

    # -- sub / quotient -------------------------------------------------------
    def subrepresentation(self, s: Subspace, name: str | None = None) -> "Representation":
        imgs = sub_action(self.field, self.images, s)
        return Representation(self.group, self.field, imgs, name or f"sub({self.name})")

    def quotient(self, s: Subspace, name: str | None = None) -> "Representation":
        imgs = quot_action(self.field, self.images, s)
        return Representation(self.group, self.field, imgs, name or f"{self.name}/sub")


def _same(r1: Representation, r2: Representation) -> None:
    if r1.group is not r2.group:
        raise GroupMismatch(f"{r1.name} and {r2.name} live on different groups")
    if r1.field != r2.field:
        raise CtxMismatch(f"{r1.name} and {r2.name} live over different fields")


# ---------------------------------------------------------------------------
# constructors
# ---------------------------------------------------------------------------

def one_dim_rep(group: FiniteGroup, field: FiniteField, values: Sequence[int], name: str) -> Representation:
    vals = np.asarray(values, dtype=np.int64)
    imgs = field.to_stack(vals).reshape(field.k, group.order, 1, 1)
    return Representation(group, field, imgs, name)


def trivial_rep(h: FiniteGroup, field: FiniteField) -> Representation:
    return one_dim_rep(h, field, np.ones(h.order, dtype=np.int64), "triv")


def sign_rep(g: FiniteGroup, field: FiniteField) -> Representation:
    """Sign of the permutation action on points (symmetric groups and their subgroups)."""
    if not hasattr(g.root, "degree"):
        raise GroupMismatch("the sign character needs a symmetric or alternating group")
    vals = [1 if sign_of(p) == 1 else field.neg(1) for p in g.perms]
    return one_dim_rep(g, field, vals, "sign")


def _check_unitriangular(u: FiniteGroup) -> tuple[FiniteField, int]:
    if not hasattr(u, "matrix_field"):
        raise GroupMismatch("Gelfand-Graev characters need a subgroup of GL_n(q)")
    Fm, n = u.matrix_field, u.matrix_degree
    for x in range(u.order):
        m = u.matrix(x)
        if np.any(np.diag(m) != 1) or np.any(np.tril(m, -1) != 0):
            raise GroupMismatch("subgroup is not upper unitriangular")
    return Fm, n


def gelfand_graev_character(u: Subgroup, zeta, field: FiniteField | None = None) -> Representation:
    """eta_psi(x) = zeta^{Tr(x_12 + x_23 + ... + x_{n-1,n})} on the unitriangular group.

    ``zeta`` is an element of exact order p (the matrix characteristic) in the
    representation field; the trace lands in GF(p) and is lifted to 0..p-1.
    """
    Fm, n = _check_unitriangular(u)
    if isinstance(zeta, FieldElement):
        field, z = zeta.field, zeta.code
    else:
        if field is None:
            raise ValueError("a representation field is required")
        z = int(zeta)
    if field.p == Fm.p:
        raise NoSuchRoot(f"no nontrivial additive character of GF({Fm.q}) with values in {field} (characteristic divides q)")
    if z == 0 or field.order(z) != Fm.p:
        raise NoSuchRoot(f"zeta = {z} does not have order {Fm.p} in {field}")
    vals = []
    for x in range(u.order):
        m = u.matrix(x)
        s = 0
        for i in range(n - 1):
            s = Fm.add(s, int(m[i, i + 1]))
        vals.append(field.pow(z, Fm.trace_to_prime(s)))
    rep = one_dim_rep(u, field, vals, f"eta_psi(zeta={z})")
    rep.provenance["character"] = "additive_gg"
    return rep


def _cyclic_generator(h: FiniteGroup) -> int:
    for x in range(h.order):
        if h.element_order(x) == h.order:
            return x
    raise GroupMismatch(f"{h.name} is not cyclic")


def multiplicative_character(h: FiniteGroup, field: FiniteField, exponent: int = 1) -> Representation:
    """x^j -> omega^(exponent*j) on a cyclic group, with x its lowest-index generator.

    omega is the field's canonical root of unity of order |h|.
    """
    gen = _cyclic_generator(h)
    omega = field.root_of_unity(h.order)
    vals = np.zeros(h.order, dtype=np.int64)
    x = h.identity
    for j in range(h.order):
        vals[x] = field.pow(omega, exponent * j)
        x = h.mul(x, gen)
    rep = one_dim_rep(h, field, vals, f"chi^{exponent}")
    rep.provenance["character"] = "multiplicative"
    return rep


def permutation_rep(g: FiniteGroup, h: Subgroup, field: FiniteField) -> Representation:
    """Action of g on the left cosets of h (0/1 matrices)."""
    reps, coset = left_coset_reps(g, h)
    n = len(reps)
    every = np.arange(g.order)
    sigma = coset[g.mul_array(every[:, None], reps[None, :])]  # (|G|, n)
    imgs = np.zeros((field.k, g.order, n, n), dtype=np.int64)
    imgs[0, every[:, None], sigma, np.arange(n)[None, :]] = 1
    return Representation(g, field, imgs, f"perm({g.name}/{h.name})")


def regular_rep(g: FiniteGroup, field: FiniteField) -> Representation:
    if g.order > REGULAR_CAP:
        raise SizeCapExceeded(f"regular representation needs |G| <= {REGULAR_CAP}")
    every = np.arange(g.order)
    imgs = np.zeros((field.k, g.order, g.order, g.order), dtype=np.int64)
    imgs[0, every[:, None], g.mul_array(every[:, None], every[None, :]), every[None, :]] = 1
    return Representation(g, field, imgs, f"F[{g.name}]")


def natural_rep(g: FiniteGroup, field: FiniteField | None = None) -> Representation:
    """The defining module of a matrix group (over its own field)."""
    if not hasattr(g, "matrix_field"):
        raise GroupMismatch("natural module needs a matrix group")
    field = field or g.matrix_field
    if field != g.matrix_field:
        raise CtxMismatch("the natural module lives over the matrix field")
    mats = np.stack([g.matrix(x) for x in range(g.order)])
    return Representation(g, field, field.to_stack(mats), "natural")


# ---------------------------------------------------------------------------
# functors
# ---------------------------------------------------------------------------

def restrict(rho: Representation, h: Subgroup) -> Representation:
    if h is rho.group:
        return rho
    if not isinstance(h, Subgroup) or h.parent is not rho.group:
        raise GroupMismatch(f"{h.name} is not a subgroup of {rho.group.name}")
    out = Representation(h, rho.field, rho.images[:, h.members], f"res({rho.name})", check=False)
    out.provenance["restricted_from"] = rho
    return out


def induce(eta: Representation, g: FiniteGroup, max_dim: int = MAX_INDUCED_DIM, coinduced: bool = False) -> Representation:
    """ind_H^G eta on the basis t_i (x) v, t_i the lowest-index left-coset representatives.

    g t_i = t_sigma(i) h puts eta(h) in block (sigma(i), i).
    """
    h = eta.group
    if not isinstance(h, Subgroup) or h.parent is not g:
        raise GroupMismatch(f"{h.name} is not a subgroup of {g.name}")
    reps, coset = left_coset_reps(g, h)
    n, d, F = len(reps), eta.dim, eta.field
    if n * d > max_dim:
        raise SizeCapExceeded(f"induced dimension {n * d} exceeds the cap {max_dim}")
    every = np.arange(g.order)
    x = g.mul_array(every[:, None], reps[None, :])  # g t_i
    sigma = coset[x]
    hs = h.local(g.mul_array(g.inverses[reps[sigma]], x))  # t_sigma(i)^-1 g t_i
    if np.any(hs < 0):
        raise AssertionError("coset bookkeeping failed")
    arr = np.zeros((F.k, g.order, n, n, d, d), dtype=np.int64)
    arr[:, every[:, None], sigma, np.arange(n)[None, :]] = eta.images[:, hs]
    imgs = arr.transpose(0, 1, 2, 4, 3, 5).reshape(F.k, g.order, n * d, n * d)
    label = "coind" if coinduced else "ind"
    out = Representation(g, F, imgs, f"{label}({eta.name})")
    out.provenance.update({"induced_from": eta, "coset_reps": reps, "coinduced": coinduced})
    return out


def coinduce(eta: Representation, g: FiniteGroup, max_dim: int = MAX_INDUCED_DIM) -> Representation:
    """Coinduction, realized through the finite-index isomorphism with induction."""
    return induce(eta, g, max_dim=max_dim, coinduced=True)


def dual(rho: Representation) -> Representation:
    imgs = np.swapaxes(rho.images[:, rho.group.inverses], 2, 3)
    return Representation(rho.group, rho.field, np.ascontiguousarray(imgs), f"dual({rho.name})", check=False)


def tensor(r1: Representation, r2: Representation) -> Representation:
    _same(r1, r2)
    F = r1.field
    a, b = r1.images, r2.images
    prod = F.smul(a[:, :, :, None, :, None], b[:, :, None, :, None, :])
    n = r1.dim * r2.dim
    return Representation(r1.group, F, prod.reshape(F.k, r1.group.order, n, n), f"({r1.name}x{r2.name})", check=False)


def direct_sum(*reps: Representation) -> Representation:
    first = reps[0]
    for r in reps[1:]:
        _same(first, r)
    F, N = first.field, first.group.order
    n = sum(r.dim for r in reps)
    imgs = np.zeros((F.k, N, n, n), dtype=np.int64)
    i = 0
    for r in reps:
        imgs[:, :, i : i + r.dim, i : i + r.dim] = r.images
        i += r.dim
    return Representation(first.group, F, imgs, "+".join(r.name for r in reps), check=False)


def mackey_dimension(eta: Representation, g: FiniteGroup) -> int:
    """Sum over H-double cosets HsH of [H : H_s] dim eta, with H_s = sHs^-1 meet H."""
    from .groups import double_cosets

    h = eta.group
    dc = double_cosets(g, h, h)
    total = 0
    inside = np.zeros(g.order, dtype=bool)
    inside[h.members] = True
    for s in dc.representatives:
        conj = g.mul_array(g.mul_array(s, h.members), g.inv(int(s)))
        hs = int(inside[conj].sum())
        total += (h.order // hs) * eta.dim
    return total
