"""Intertwiners, endomorphism algebras and Hecke algebras.

The Hecke algebra is built in its convolution model: bi-equivariant
functions G -> End(eta), one block of basis functions per double coset, with
product (D1 * D2)(g) = sum over representatives x of H\\G of D1(g x^-1) D2(x).
The summation convention needs no division by |H| and so works in every
characteristic; ``hecke_vs_end_iso_check`` certifies it against End_G(ind).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .errors import AlgebraNotClosed, CtxMismatch, GroupMismatch, SizeCapExceeded, UncertifiedInventory
from .field import FiniteField
from .groups import AntiInvolution, FiniteGroup, Subgroup, double_cosets, right_coset_reps
from .linalg import Matrix, Subspace, solve_linear_system
from .reps import Representation, induce

HECKE_CAP = 64


# ---------------------------------------------------------------------------
# hom spaces
# ---------------------------------------------------------------------------

def intertwiner_space(field: FiniteField, src: np.ndarray, tgt: np.ndarray) -> Subspace:
    """All T (dt x ds, flattened) with T src_i = tgt_i T for paired stacks (k, m, d, d)."""
    ds, dt = src.shape[-1], tgt.shape[-1]
    if src.shape[1] != tgt.shape[1]:
        raise GroupMismatch("actions have different numbers of generators")
    if ds == 0 or dt == 0:
        return Subspace.zero(field, ds * dt)
    blocks = [(Matrix(field, tgt[:, i]), Matrix(field, src[:, i])) for i in range(src.shape[1])]
    if not blocks:
        return Subspace.full(field, ds * dt)
    return solve_linear_system(blocks, dt, ds)


@dataclass
class HomSpace:
    source: Representation
    target: Representation
    space: Subspace

    @property
    def dim(self) -> int:
        return self.space.dim

    @property
    def basis(self) -> list[Matrix]:
        F = self.source.field
        rows = self.space.basis
        return [Matrix(F, rows[:, i].reshape(F.k, self.target.dim, self.source.dim)) for i in range(self.dim)]

    def verify(self, all_elements: bool = False) -> bool:
        """Each basis map intertwines on the generators (or on every element)."""
        g = self.source.group
        elems = range(g.order) if all_elements else g.generators
        for t in self.basis:
            for x in elems:
                if t @ self.source.image(x) != self.target.image(x) @ t:
                    return False
        return self.space.dim == len(self.basis)


def _check_pair(a: Representation, b: Representation) -> None:
    if a.group is not b.group:
        raise GroupMismatch(f"{a.name} and {b.name} live on different groups")
    if a.field != b.field:
        raise CtxMismatch(f"{a.name} and {b.name} live over different fields")


def hom_space(pi: Representation, rho: Representation) -> HomSpace:
    """Hom_G(pi, rho): matrices T with T pi(s) = rho(s) T on the generators."""
    _check_pair(pi, rho)
    return HomSpace(pi, rho, intertwiner_space(pi.field, pi.gen_stack(), rho.gen_stack()))


def hom_dim(pi: Representation, rho: Representation) -> int:
    return hom_space(pi, rho).dim


# ---------------------------------------------------------------------------
# matrix algebras
# ---------------------------------------------------------------------------

class MatrixAlgebra:
    """Subalgebra of n x n matrices given by a basis.

    By default the basis is replaced by the canonical RREF basis of its span;
    ``canonical=False`` keeps the given (independent) basis.
    ``structure_constants[i, j, l]`` (field codes) gives b_i b_j = sum_l c_ijl b_l.
    """

    def __init__(self, field: FiniteField, ambient_dim: int, basis: np.ndarray, name: str = "A", canonical: bool = True):
        self.field = field
        self.ambient_dim = ambient_dim
        self.name = name
        n = ambient_dim
        given = np.asarray(basis, dtype=np.int64).reshape(field.k, -1, n * n)
        span = Subspace.from_rows(field, given, n * n)
        self.span = span
        m = span.dim
        if canonical:
            flat = span.basis
            self._to_basis = None
        else:
            if given.shape[1] != m:
                raise AlgebraNotClosed(f"{name}: basis is linearly dependent")
            flat = given
            # coordinates wrt the RREF basis -> coordinates wrt the given basis
            self._to_basis = Matrix(field, span.coordinates(given)).inverse().data if m else None
        self.basis = flat.reshape(field.k, m, n, n)
        prods = field.smatmul(self.basis[:, :, None], self.basis[:, None, :]).reshape(field.k, m * m, n * n)
        if m and not span.contains_vectors(prods):
            raise AlgebraNotClosed(f"{name}: products leave the span")
        self.structure_constants = self._coords_flat(prods).reshape(m, m, m) if m else np.zeros((0, 0, 0), dtype=np.int64)
        self._verify_constants(prods)
        eye = np.zeros((field.k, 1, n * n), dtype=np.int64)
        eye[0, 0] = np.eye(n, dtype=np.int64).reshape(-1)
        self.has_unit = bool(m) and span.contains_vectors(eye)

    def _coords_flat(self, flat: np.ndarray) -> np.ndarray:
        c = self.span.coordinates(flat)
        if self._to_basis is not None:
            c = self.field.smatmul(c, self._to_basis)
        return self.field.from_stack(c)

    @classmethod
    def from_structure_constants(cls, field: FiniteField, c: np.ndarray, name: str = "A") -> "MatrixAlgebra":
        """Realize an abstract unital algebra by its left-regular matrices L_i[l, j] = c_ijl."""
        c = np.asarray(c, dtype=np.int64)
        m = c.shape[0]
        left = field.to_stack(np.transpose(c, (0, 2, 1)))
        alg = cls(field, m, left, name, canonical=False)
        if not np.array_equal(alg.structure_constants, c):
            raise AlgebraNotClosed(f"{name}: structure constants are not associative")
        return alg

    def _verify_constants(self, prods: np.ndarray) -> None:
        m = self.dim
        if not m:
            return
        F = self.field
        c = F.to_stack(self.structure_constants.reshape(m * m, m))
        flat = self.basis.reshape(F.k, m, -1)
        if not np.array_equal(F.smatmul(c, flat), prods):
            raise AlgebraNotClosed(f"{self.name}: structure constants do not reproduce products")

    @property
    def dim(self) -> int:
        return self.span.dim

    def basis_matrices(self) -> list[Matrix]:
        return [Matrix(self.field, self.basis[:, i]) for i in range(self.dim)]

    def element(self, coeffs: Sequence[int]) -> Matrix:
        F = self.field
        c = F.to_stack(np.asarray(coeffs, dtype=np.int64).reshape(1, -1))
        flat = F.smatmul(c, self.basis.reshape(F.k, self.dim, -1))
        return Matrix(F, flat.reshape(F.k, self.ambient_dim, self.ambient_dim))

    def elements_stack(self, coeffs: np.ndarray) -> np.ndarray:
        """Stack (k, r, n, n) of the elements with coefficient rows ``coeffs`` (codes, (r, m))."""
        F = self.field
        c = F.to_stack(np.asarray(coeffs, dtype=np.int64))
        flat = F.smatmul(c, self.basis.reshape(F.k, self.dim, -1))
        return flat.reshape(F.k, -1, self.ambient_dim, self.ambient_dim)

    def coordinates(self, mats: np.ndarray) -> np.ndarray:
        """Coordinates (codes, (r, m)) of a stack (k, r, n, n) of algebra members."""
        F, n = self.field, self.ambient_dim
        flat = mats.reshape(F.k, -1, n * n)
        if not self.span.contains_vectors(flat):
            raise AlgebraNotClosed("matrix is not in the algebra")
        return self._coords_flat(flat)

    def multiply(self, x: Sequence[int], y: Sequence[int]) -> np.ndarray:
        """Product of two coordinate vectors, via the structure constants."""
        F, c = self.field, self.structure_constants
        out = [0] * self.dim
        for i, a in enumerate(x):
            if not a:
                continue
            for j, b in enumerate(y):
                if not b:
                    continue
                ab = F.mul(int(a), int(b))
                for l in np.flatnonzero(c[i, j]).tolist():
                    out[l] = F.add(out[l], F.mul(ab, int(c[i, j, l])))
        return np.array(out, dtype=np.int64)

    def is_commutative(self) -> bool:
        c = self.structure_constants
        return bool(np.array_equal(c, np.transpose(c, (1, 0, 2))))

    def __repr__(self) -> str:
        return f"<MatrixAlgebra {self.name} dim {self.dim} in M_{self.ambient_dim}({self.field})>"


def is_commutative(a: MatrixAlgebra) -> bool:
    return a.is_commutative()


def end_algebra(rho: Representation) -> MatrixAlgebra:
    hs = hom_space(rho, rho)
    F, d = rho.field, rho.dim
    alg = MatrixAlgebra(F, d, hs.space.basis.reshape(F.k, hs.dim, d, d), f"End({rho.name})")
    if not alg.has_unit:
        raise AlgebraNotClosed("End algebra lacks the identity")
    return alg


def multiplicity_vector(rho: Representation, inventory: Sequence[Representation]) -> list[int]:
    """dim Hom_G(S_i, rho) for each certified irreducible S_i."""
    certified = getattr(inventory, "certified", None)
    if certified is None:
        certified = all(s.provenance.get("absolutely_irreducible") for s in inventory)
    if not certified:
        raise UncertifiedInventory("inventory members are not certified absolutely irreducible")
    return [hom_dim(s, rho) for s in inventory]


# ---------------------------------------------------------------------------
# Hecke algebra, convolution model
# ---------------------------------------------------------------------------

class HeckeAlgebra(MatrixAlgebra):
    """H(G, H, eta) with one basis block per double coset.

    ``values`` holds every basis function on all of G: stack (k, m, |G|, d, d).
    The algebra itself is realized through left-regular matrices of its
    structure constants.
    """

    def __init__(self, g: FiniteGroup, eta: Representation, right_reps: np.ndarray | None = None):
        h = eta.group
        if not isinstance(h, Subgroup) or h.parent is not g:
            raise GroupMismatch(f"{h.name} is not a subgroup of {g.name}")
        F, d = eta.field, eta.dim
        dc = double_cosets(g, h, h)
        if d > 1 and d * len(dc) > HECKE_CAP:
            raise SizeCapExceeded(f"Hecke algebra needs dim(eta) * #double cosets <= {HECKE_CAP}")
        self.group, self.subgroup, self.eta, self.double_cosets = g, h, eta, dc
        self.field = F
        # one block of solutions per double coset representative s:
        # eta(x) D(s) = D(s) eta(s^-1 x s) for x in H with s^-1 x s in H
        blocks = []
        for s in dc.representatives:
            s = int(s)
            conj = h.local(g.mul_array(g.mul_array(g.inv(s), h.members), s))
            ok = np.flatnonzero(conj >= 0)
            cons = [(eta.image(int(x)), eta.image(int(conj[x]))) for x in ok]
            blocks.append(solve_linear_system(cons, d, d))
        self.blocks = blocks
        self.block_offsets = np.cumsum([0] + [b.dim for b in blocks])
        m = int(self.block_offsets[-1])
        self.coset_of_basis = np.repeat(np.arange(len(dc)), [b.dim for b in blocks])
        # full value tables
        vals = np.zeros((F.k, m, g.order, d, d), dtype=np.int64)
        left_h = h.local(dc.left)
        right_h = h.local(dc.right)
        for c, blk in enumerate(blocks):
            if not blk.dim:
                continue
            els = np.flatnonzero(dc.membership == c)
            xs = blk.basis.reshape(F.k, blk.dim, d, d)
            lft = eta.images[:, left_h[els]]  # (k, |els|, d, d)
            rgt = eta.images[:, right_h[els]]
            v = F.smatmul(F.smatmul(lft[:, None], xs[:, :, None]), rgt[:, None])
            off = int(self.block_offsets[c])
            vals[:, off : off + blk.dim][:, :, els] = v
        self.values = vals
        if right_reps is None:
            right_reps, _ = right_coset_reps(g, h)
        self.right_reps = np.asarray(right_reps, dtype=np.int64)
        c = self._structure_constants()
        left = F.to_stack(np.transpose(c, (0, 2, 1)))
        super().__init__(F, m, left, f"H({g.name},{h.name},{eta.name})", canonical=False)
        if not np.array_equal(self.structure_constants, c):
            raise AlgebraNotClosed("convolution is not associative")

    def coordinates_of_values(self, vals: np.ndarray) -> np.ndarray:
        """Coordinates (codes) of functions given by value stacks (k, r, |G|, d, d)."""
        F, d = self.field, self.eta.dim
        out = []
        reps = self.double_cosets.representatives
        for c, blk in enumerate(self.blocks):
            at = vals[:, :, reps[c]].reshape(F.k, vals.shape[1], d * d)
            if not blk.contains_vectors(at):
                raise AlgebraNotClosed("function is not in the Hecke algebra")
            if blk.dim:
                out.append(blk.coordinates(at))
        if not out:
            return np.zeros((vals.shape[1], 0), dtype=np.int64)
        return F.from_stack(np.concatenate(out, axis=2))

    def _structure_constants(self) -> np.ndarray:
        F = self.field
        m = self.values.shape[1]
        if m == 0:
            return np.zeros((0, 0, 0), dtype=np.int64)
        reps = self.double_cosets.representatives
        # only the values at double coset representatives are needed
        vals = self.values
        g = self.group
        d = vals.shape[-1]
        xs = self.right_reps
        gx = g.mul_array(reps[:, None], g.inverses[xs][None, :])  # (r, R)
        a = vals[:, :, gx]  # (k, m, r, R, d, d)
        b = vals[:, :, xs]  # (k, m, R, d, d)
        r, R = gx.shape
        a2 = np.transpose(a, (0, 1, 2, 4, 3, 5)).reshape(F.k, m, r, d, R * d)
        b2 = b.reshape(F.k, m, R * d, d)
        prod = F.smatmul(a2[:, :, None], b2[:, None, :, None])  # (k, m, m, r, d, d)
        coords = []
        for c, blk in enumerate(self.blocks):
            at = prod[:, :, :, c].reshape(F.k, m * m, d * d)
            if not blk.contains_vectors(at):
                raise AlgebraNotClosed("convolution leaves the Hecke space")
            if blk.dim:
                coords.append(blk.coordinates(at))
        cst = F.from_stack(np.concatenate(coords, axis=2)).reshape(m, m, m)
        return cst

    def unit_values(self) -> np.ndarray:
        """Delta supported on H with Delta(h) = eta(h)."""
        F, g, h, d = self.field, self.group, self.subgroup, self.eta.dim
        v = np.zeros((F.k, 1, g.order, d, d), dtype=np.int64)
        v[:, 0, h.members] = self.eta.images
        return v

    def unit_coordinates(self) -> np.ndarray:
        return self.coordinates_of_values(self.unit_values())[0]

    def evaluate(self, coeffs: Sequence[int], x: int) -> Matrix:
        """Value at the group element x of the function with the given coordinates."""
        F = self.field
        c = F.to_stack(np.asarray(coeffs, dtype=np.int64).reshape(1, -1))
        d = self.eta.dim
        flat = self.values[:, :, x].reshape(F.k, -1, d * d)
        return Matrix(F, F.smatmul(c, flat).reshape(F.k, d, d))


def hecke_algebra_convolution(g: FiniteGroup, h: Subgroup, eta: Representation, right_reps=None) -> HeckeAlgebra:
    if eta.group is not h:
        raise GroupMismatch("eta must be a representation of h")
    return HeckeAlgebra(g, eta, right_reps)


def hecke_to_end_matrices(hecke: HeckeAlgebra, ind: Representation) -> np.ndarray:
    """T_Delta for each Hecke basis function: block (k, i) = Delta(t_k^-1 t_i)."""
    F, g = hecke.field, hecke.group
    t = ind.provenance["coset_reps"]
    n, d, m = len(t), hecke.eta.dim, hecke.dim
    arg = g.mul_array(g.inverses[t][:, None], t[None, :])  # (n, n)
    blocks = hecke.values[:, :, arg]  # (k, m, n, n, d, d)
    return np.transpose(blocks, (0, 1, 2, 4, 3, 5)).reshape(F.k, m, n * d, n * d)


@dataclass
class IsoCertificate:
    hecke_dim: int
    end_dim: int
    intertwines: bool
    injective: bool
    multiplicative: bool
    unit_to_identity: bool
    hecke_commutative: bool
    end_commutative: bool

    @property
    def ok(self) -> bool:
        return (
            self.hecke_dim == self.end_dim
            and self.intertwines
            and self.injective
            and self.multiplicative
            and self.unit_to_identity
            and self.hecke_commutative == self.end_commutative
        )


def hecke_iso_certificate(g: FiniteGroup, h: Subgroup, eta: Representation, hecke: HeckeAlgebra | None = None,
                          ind: Representation | None = None, end: MatrixAlgebra | None = None) -> IsoCertificate:
    hecke = hecke or hecke_algebra_convolution(g, h, eta)
    ind = ind or induce(eta, g)
    end = end or end_algebra(ind)
    F = hecke.field
    ts = hecke_to_end_matrices(hecke, ind)
    m, n = hecke.dim, ind.dim
    gens = ind.gen_stack()
    left = F.smatmul(ts[:, :, None], gens[:, None])
    right = F.smatmul(gens[:, None], ts[:, :, None])
    intertwines = bool(np.array_equal(left, right))
    flat = ts.reshape(F.k, m, n * n)
    injective = Subspace.from_rows(F, flat, n * n).dim == m if m else True
    # T_{b_i * b_j} = sum_l c_ijl T_l  versus  T_i T_j
    c = F.to_stack(hecke.structure_constants.reshape(m * m, m))
    lhs = F.smatmul(c, flat).reshape(F.k, m, m, n, n)
    rhs = F.smatmul(ts[:, :, None], ts[:, None, :])
    multiplicative = bool(np.array_equal(lhs, rhs))
    u = F.to_stack(hecke.unit_coordinates().reshape(1, m))
    ident = F.smatmul(u, flat).reshape(F.k, n, n)
    eye = np.zeros_like(ident)
    eye[0] = np.eye(n, dtype=np.int64)
    return IsoCertificate(
        hecke_dim=m,
        end_dim=end.dim,
        intertwines=intertwines,
        injective=injective,
        multiplicative=multiplicative,
        unit_to_identity=bool(np.array_equal(ident, eye)),
        hecke_commutative=hecke.is_commutative(),
        end_commutative=end.is_commutative(),
    )


def hecke_vs_end_iso_check(g: FiniteGroup, h: Subgroup, eta: Representation) -> bool:
    return hecke_iso_certificate(g, h, eta).ok


def check_gelfand_trick(hecke: HeckeAlgebra, iota: AntiInvolution) -> bool:
    """Whether f o iota = f (transposed when dim eta > 1) for every Hecke basis function.

    When it holds the algebra must be commutative; a disagreement raises.
    """
    if iota.group is not hecke.group:
        raise GroupMismatch("anti-involution lives on a different group")
    v = hecke.values
    pulled = np.swapaxes(v[:, :, iota.images], -1, -2)
    fixed = bool(np.array_equal(pulled, v))
    if fixed and not hecke.is_commutative():
        raise AssertionError("Gelfand trick holds but the Hecke algebra is not commutative")
    return fixed
