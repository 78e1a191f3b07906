"""Dense exact linear algebra over GF(p^k).

``Matrix`` wraps a coefficient stack of shape ``(k, rows, cols)``; all heavy
routines (``rref``, ``kernel``, the intertwiner solver) operate on those
stacks directly so that prime and extension fields share one code path.
Row vectors are the convention for subspaces: a ``Subspace`` stores its basis
as the rows of a reduced row-echelon matrix.
"""

from __future__ import annotations

from typing import Iterable, Sequence

import numpy as np

from .errors import AmbientMismatch, CtxMismatch, ShapeMismatch
from .field import FieldElement, FiniteField


class Matrix:
    """Dense matrix over a finite field."""

    __slots__ = ("field", "data")

    def __init__(self, field: FiniteField, data: np.ndarray):
        data = np.asarray(data, dtype=np.int64)
        if data.ndim != 3 or data.shape[0] != field.k:
            raise ShapeMismatch(f"expected a (k, rows, cols) stack, got {data.shape}")
        self.field = field
        self.data = data

    # -- constructors --------------------------------------------------------
    @classmethod
    def from_codes(cls, field: FiniteField, codes) -> "Matrix":
        codes = np.asarray(codes, dtype=np.int64)
        if codes.ndim == 1:
            codes = codes.reshape(1, -1) if codes.size else codes.reshape(0, 0)
        return cls(field, field.to_stack(codes))

    @classmethod
    def zeros(cls, field: FiniteField, rows: int, cols: int) -> "Matrix":
        return cls(field, np.zeros((field.k, rows, cols), dtype=np.int64))

    @classmethod
    def identity(cls, field: FiniteField, n: int) -> "Matrix":
        d = np.zeros((field.k, n, n), dtype=np.int64)
        d[0] = np.eye(n, dtype=np.int64)
        return cls(field, d)

    @classmethod
    def random(cls, field: FiniteField, rows: int, cols: int, rng: np.random.Generator) -> "Matrix":
        return cls(field, field.random_stack(rng, (rows, cols)))

    @classmethod
    def block_diag(cls, field: FiniteField, blocks: Sequence["Matrix"]) -> "Matrix":
        r = sum(b.rows for b in blocks)
        c = sum(b.cols for b in blocks)
        d = np.zeros((field.k, r, c), dtype=np.int64)
        i = j = 0
        for b in blocks:
            d[:, i : i + b.rows, j : j + b.cols] = b.data
            i += b.rows
            j += b.cols
        return cls(field, d)

    # -- shape / access -----------------------------------------------------
    @property
    def shape(self) -> tuple[int, int]:
        return self.data.shape[1], self.data.shape[2]

    @property
    def rows(self) -> int:
        return self.data.shape[1]

    @property
    def cols(self) -> int:
        return self.data.shape[2]

    def codes(self) -> np.ndarray:
        return self.field.from_stack(self.data)

    def tolist(self) -> list[list[int]]:
        return self.codes().tolist()

    def __getitem__(self, ij) -> FieldElement:
        i, j = ij
        return FieldElement(self.field, int(self.field.from_stack(self.data[:, i, j])))

    def row_block(self, rows) -> "Matrix":
        return Matrix(self.field, self.data[:, rows, :])

    @property
    def T(self) -> "Matrix":
        return Matrix(self.field, np.swapaxes(self.data, 1, 2).copy())

    def __repr__(self) -> str:
        return f"Matrix({self.field}, {self.tolist()})"

    # -- arithmetic -----------------------------------------------------------
    def _check(self, other: "Matrix") -> None:
        if self.field != other.field:
            raise CtxMismatch(f"field mismatch: {self.field} vs {other.field}")

    def __matmul__(self, other: "Matrix") -> "Matrix":
        self._check(other)
        if self.cols != other.rows:
            raise ShapeMismatch(f"cannot multiply {self.shape} by {other.shape}")
        return Matrix(self.field, self.field.smatmul(self.data, other.data))

    def __add__(self, other: "Matrix") -> "Matrix":
        self._check(other)
        if self.shape != other.shape:
            raise ShapeMismatch(f"cannot add {self.shape} and {other.shape}")
        return Matrix(self.field, (self.data + other.data) % self.field.p)

    def __sub__(self, other: "Matrix") -> "Matrix":
        self._check(other)
        if self.shape != other.shape:
            raise ShapeMismatch(f"cannot subtract {self.shape} and {other.shape}")
        return Matrix(self.field, (self.data - other.data) % self.field.p)

    def __neg__(self) -> "Matrix":
        return Matrix(self.field, (-self.data) % self.field.p)

    def __mul__(self, c) -> "Matrix":
        code = c.code if isinstance(c, FieldElement) else self.field(c).code
        return Matrix(self.field, self.field.scale(code, self.data))

    __rmul__ = __mul__

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, Matrix)
            and self.field == other.field
            and self.shape == other.shape
            and np.array_equal(self.data, other.data)
        )

    def __hash__(self) -> int:
        return hash((self.field, self.shape, self.data.tobytes()))

    def is_zero(self) -> bool:
        return not self.data.any()

    def rank(self) -> int:
        return rref(self)[1]

    def is_invertible(self) -> bool:
        return self.rows == self.cols and self.rank() == self.rows

    def inverse(self) -> "Matrix":
        n = self.rows
        if n != self.cols:
            raise ShapeMismatch("only square matrices are invertible")
        aug = Matrix(self.field, np.concatenate([self.data, Matrix.identity(self.field, n).data], axis=2))
        red, piv = _rref(self.field, aug.data)
        if piv[:n] != list(range(n)) or len(piv) < n:
            from .errors import DivisionByZero

            raise DivisionByZero("matrix is singular")
        return Matrix(self.field, red[:, :, n:])

    def flatten(self) -> "Matrix":
        """Row-major flattening to a 1 x (rows*cols) matrix."""
        return Matrix(self.field, self.data.reshape(self.field.k, 1, -1))


# ---------------------------------------------------------------------------
# row reduction kernels
# ---------------------------------------------------------------------------

def _rref(field: FiniteField, data: np.ndarray) -> tuple[np.ndarray, list[int]]:
    """Reduced row-echelon form of a stack; returns (stack, pivot columns)."""
    a = np.array(data, dtype=np.int64, copy=True) % field.p
    k, nr, nc = a.shape
    p = field.p
    pivots: list[int] = []
    row = 0
    if k == 1:
        m = a[0]
        for col in range(nc):
            if row == nr:
                break
            nz = np.flatnonzero(m[row:, col])
            if nz.size == 0:
                continue
            piv = row + nz[0]
            if piv != row:
                m[[row, piv]] = m[[piv, row]]
            inv = pow(int(m[row, col]), p - 2, p)
            if inv != 1:
                m[row] = (m[row] * inv) % p
            f = m[:, col].copy()
            f[row] = 0
            nzr = np.flatnonzero(f)
            if nzr.size:
                m[nzr] = (m[nzr] - np.outer(f[nzr], m[row])) % p
            pivots.append(col)
            row += 1
        return a, pivots
    for col in range(nc):
        if row == nr:
            break
        nz = np.flatnonzero(a[:, row:, col].any(axis=0))
        if nz.size == 0:
            continue
        piv = row + nz[0]
        if piv != row:
            a[:, [row, piv]] = a[:, [piv, row]]
        code = int(field.from_stack(a[:, row, col]))
        if code != 1:
            a[:, row] = field.scale(field.inv(code), a[:, row])
        f = a[:, :, col].copy()
        f[:, row] = 0
        nzr = np.flatnonzero(f.any(axis=0))
        if nzr.size:
            upd = field.smul(f[:, nzr, None], a[:, row][:, None, :])
            a[:, nzr] = (a[:, nzr] - upd) % p
        pivots.append(col)
        row += 1
    return a, pivots


def rref(m: Matrix) -> tuple[Matrix, int]:
    """Unique reduced row-echelon form and rank."""
    red, piv = _rref(m.field, m.data)
    return Matrix(m.field, red), len(piv)


def _kernel_stack(field: FiniteField, data: np.ndarray) -> np.ndarray:
    """Rows spanning the right null space of the stack ``data`` (k, r, c)."""
    k, nr, nc = data.shape
    red, piv = _rref(field, data)
    free = [c for c in range(nc) if c not in set(piv)]
    out = np.zeros((k, len(free), nc), dtype=np.int64)
    if not free:
        return out
    free_idx = np.array(free)
    piv_idx = np.array(piv, dtype=np.int64)
    out[0, np.arange(len(free)), free_idx] = 1
    if piv:
        # x[piv_i] = -R[i, f]
        out[:, :, piv_idx] = np.swapaxes((-red[:, : len(piv), free_idx]) % field.p, 1, 2)
    return out


def kernel(m: Matrix) -> "Subspace":
    """Right null space {v : m v = 0} as a subspace of F^cols."""
    return Subspace.from_rows(m.field, _kernel_stack(m.field, m.data), m.cols)


def left_kernel(m: Matrix) -> "Subspace":
    """{v : v m = 0} as a subspace of F^rows."""
    return kernel(m.T)


def kron(a: Matrix, b: Matrix) -> Matrix:
    a._check(b)
    F = a.field
    ar, ac = a.shape
    br, bc = b.shape
    prod = F.smul(a.data[:, :, None, :, None], b.data[:, None, :, None, :])
    return Matrix(F, prod.reshape(F.k, ar * br, ac * bc))


def solve_linear_system(blocks: Sequence[tuple[Matrix, Matrix]], rows: int | None = None, cols: int | None = None) -> "Subspace":
    """All X with A_i X = X B_i for every block, flattened row-major.

    The constraints are imposed one block at a time on the current solution
    basis, so after the first block only small systems are reduced.
    """
    if not blocks:
        if rows is None or cols is None:
            raise ShapeMismatch("shape of X is undetermined without blocks")
        raise ShapeMismatch("no constraints given")
    F = blocks[0][0].field
    r = blocks[0][0].rows if rows is None else rows
    c = blocks[0][1].rows if cols is None else cols
    for a, b in blocks:
        a._check(b)
        if a.field != F:
            raise CtxMismatch("blocks over different fields")
        if a.shape != (r, r) or b.shape != (c, c):
            raise ShapeMismatch(f"block shapes {a.shape}, {b.shape} incompatible with X of shape {(r, c)}")
    n = r * c
    basis = np.zeros((F.k, n, n), dtype=np.int64)
    basis[0] = np.eye(n, dtype=np.int64)
    for a, b in blocks:
        d = basis.shape[1]
        if d == 0:
            break
        xs = basis.reshape(F.k, d, r, c)
        ax = F.smatmul(a.data[:, None], xs)
        xb = F.smatmul(xs, b.data[:, None])
        img = ((ax - xb) % F.p).reshape(F.k, d, n)
        # coefficient vectors y with y @ img = 0
        coeff = _kernel_stack(F, np.swapaxes(img, 1, 2))
        if coeff.shape[1] == d:
            continue
        basis = F.smatmul(coeff, basis)
    return Subspace.from_rows(F, basis, n)


# ---------------------------------------------------------------------------
# subspaces
# ---------------------------------------------------------------------------

class Subspace:
    """Subspace of F^n held as an RREF row basis."""

    __slots__ = ("field", "ambient_dim", "basis", "pivots", "_key")

    def __init__(self, field: FiniteField, ambient_dim: int, basis: np.ndarray, pivots: list[int]):
        self.field = field
        self.ambient_dim = ambient_dim
        self.basis = basis
        self.pivots = pivots
        self._key = None

    @classmethod
    def from_rows(cls, field: FiniteField, rows: np.ndarray, ambient_dim: int | None = None) -> "Subspace":
        rows = np.asarray(rows, dtype=np.int64)
        if ambient_dim is None:
            ambient_dim = rows.shape[2]
        if rows.shape[1] == 0:
            return cls.zero(field, ambient_dim)
        red, piv = _rref(field, rows)
        return cls(field, ambient_dim, red[:, : len(piv)].copy(), piv)

    @classmethod
    def from_matrix(cls, m: Matrix) -> "Subspace":
        return cls.from_rows(m.field, m.data, m.cols)

    @classmethod
    def zero(cls, field: FiniteField, n: int) -> "Subspace":
        return cls(field, n, np.zeros((field.k, 0, n), dtype=np.int64), [])

    @classmethod
    def full(cls, field: FiniteField, n: int) -> "Subspace":
        return cls(field, n, Matrix.identity(field, n).data, list(range(n)))

    @classmethod
    def span(cls, field: FiniteField, vectors: Iterable, n: int) -> "Subspace":
        vs = [np.asarray(v, dtype=np.int64) for v in vectors]
        if not vs:
            return cls.zero(field, n)
        return cls.from_rows(field, field.to_stack(np.stack(vs)), n)

    @property
    def dim(self) -> int:
        return len(self.pivots)

    def matrix(self) -> Matrix:
        return Matrix(self.field, self.basis)

    def vectors(self) -> list[list[int]]:
        return self.field.from_stack(self.basis).tolist()

    def key(self) -> bytes:
        if self._key is None:
            self._key = bytes(str(self.ambient_dim), "ascii") + b":" + self.field.from_stack(self.basis).astype(np.int32).tobytes()
        return self._key

    def _check(self, other: "Subspace") -> None:
        if self.field != other.field:
            raise CtxMismatch("subspaces over different fields")
        if self.ambient_dim != other.ambient_dim:
            raise AmbientMismatch(f"ambient dims {self.ambient_dim} vs {other.ambient_dim}")

    def reduce(self, rows: np.ndarray) -> np.ndarray:
        """Residues of row vectors (stack (k, m, n)) modulo this subspace."""
        if self.dim == 0:
            return rows % self.field.p
        coeff = rows[:, :, self.pivots]
        return (rows - self.field.smatmul(coeff, self.basis)) % self.field.p

    def coordinates(self, rows: np.ndarray) -> np.ndarray:
        """Coordinates of member row vectors in the RREF basis."""
        return rows[:, :, self.pivots]

    def contains_vectors(self, rows: np.ndarray) -> bool:
        return not self.reduce(rows).any()

    def contains(self, other) -> bool:
        if isinstance(other, Subspace):
            self._check(other)
            if other.dim > self.dim:
                return False
            return self.contains_vectors(other.basis)
        v = self.field.to_stack(np.asarray(other, dtype=np.int64).reshape(1, -1))
        return self.contains_vectors(v)

    def __add__(self, other: "Subspace") -> "Subspace":
        self._check(other)
        if other.dim == 0:
            return self
        if self.dim == 0:
            return other
        return Subspace.from_rows(self.field, np.concatenate([self.basis, other.basis], axis=1), self.ambient_dim)

    def intersect(self, other: "Subspace") -> "Subspace":
        """Zassenhaus intersection."""
        self._check(other)
        if self.dim == 0 or other.dim == 0:
            return Subspace.zero(self.field, self.ambient_dim)
        n = self.ambient_dim
        top = np.concatenate([self.basis, self.basis], axis=2)
        bot = np.concatenate([other.basis, np.zeros_like(other.basis)], axis=2)
        red, piv = _rref(self.field, np.concatenate([top, bot], axis=1))
        rows = [i for i, c in enumerate(piv) if c >= n]
        return Subspace.from_rows(self.field, red[:, rows, n:], n)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Subspace):
            return NotImplemented
        return (
            self.field == other.field
            and self.ambient_dim == other.ambient_dim
            and self.pivots == other.pivots
            and np.array_equal(self.basis, other.basis)
        )

    def __hash__(self) -> int:
        return hash(self.key())

    def __le__(self, other: "Subspace") -> bool:
        return other.contains(self)

    def complement_columns(self) -> list[int]:
        pv = set(self.pivots)
        return [c for c in range(self.ambient_dim) if c not in pv]

    def __repr__(self) -> str:
        return f"Subspace(dim={self.dim}, ambient={self.ambient_dim}, basis={self.vectors()})"


def subspace_sum(s1: Subspace, s2: Subspace) -> Subspace:
    return s1 + s2


def intersect(s1: Subspace, s2: Subspace) -> Subspace:
    return s1.intersect(s2)


def contains(s1: Subspace, s2: Subspace) -> bool:
    return s1.contains(s2)


def equal(s1: Subspace, s2: Subspace) -> bool:
    s1._check(s2)
    return s1 == s2


def stack_flat(mats: Sequence[Matrix]) -> np.ndarray:
    """Stack matrices as flattened rows: (k, len(mats), rows*cols)."""
    F = mats[0].field
    return np.stack([m.data.reshape(F.k, -1) for m in mats], axis=1)


def unflatten(field: FiniteField, rows: np.ndarray, r: int, c: int) -> list[Matrix]:
    return [Matrix(field, rows[:, i].reshape(field.k, r, c)) for i in range(rows.shape[1])]


# ---------------------------------------------------------------------------
# actions on invariant subspaces and quotients (column-vector convention)
# ---------------------------------------------------------------------------

def sub_action(field: FiniteField, mats: np.ndarray, s: Subspace) -> np.ndarray:
    """Matrices (k, m, n, n) restricted to the invariant subspace ``s``.

    Coordinates are read off at the pivot columns of the RREF basis.
    """
    bt = np.swapaxes(s.basis, 1, 2)  # (k, n, d)
    return field.smatmul(mats[:, :, s.pivots, :], bt[:, None])


def quotient_projection(s: Subspace) -> np.ndarray:
    """Stack (k, n-d, n) of the projection F^n -> F^n / s.

    Quotient coordinates are the non-pivot columns of the RREF basis.
    """
    F, n = s.field, s.ambient_dim
    free = s.complement_columns()
    p = np.zeros((F.k, len(free), n), dtype=np.int64)
    p[0, np.arange(len(free)), free] = 1
    if s.dim and free:
        p[:, :, s.pivots] = (-np.swapaxes(s.basis[:, :, free], 1, 2)) % F.p
    return p


def quot_action(field: FiniteField, mats: np.ndarray, s: Subspace) -> np.ndarray:
    """Induced action (k, m, n-d, n-d) on F^n / s for an invariant ``s``."""
    proj = quotient_projection(s)
    free = s.complement_columns()
    return field.smatmul(proj[:, None], mats[:, :, :, free])


def is_invariant(field: FiniteField, mats: np.ndarray, s: Subspace) -> bool:
    """Whether every matrix maps the column space spanned by ``s`` into itself."""
    if s.dim == 0:
        return True
    imgs = field.smatmul(mats, np.swapaxes(s.basis, 1, 2)[:, None])  # (k, m, n, d)
    rows = np.swapaxes(imgs, 2, 3).reshape(field.k, -1, s.ambient_dim)
    return s.contains_vectors(rows)
