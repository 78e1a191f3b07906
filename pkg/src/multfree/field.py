"""Exact arithmetic in GF(p^k).

Scalars are encoded as integers ``c_0 + c_1 p + ... + c_{k-1} p^{k-1}`` where
``c_i`` are the power-basis coordinates with respect to the defining
polynomial.  Array arithmetic works on *coefficient stacks*: integer arrays
of shape ``(k, *shape)`` holding one coordinate slice per basis power, so
that every field operation becomes a handful of vectorized mod-p operations.
"""

from __future__ import annotations

import functools
import itertools
from dataclasses import dataclass

import numpy as np

from .errors import CtxMismatch, DivisionByZero, NonPrime, NoSuchRoot, SizeCapExceeded

MAX_FIELD_SIZE = 2**20
TABLE_LIMIT = 2**16
SMALL_TABLE_LIMIT = 256


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    d = 2
    while d * d <= n:
        if n % d == 0:
            return False
        d += 1
    return True


def prime_factors(n: int) -> list[int]:
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out


# -- polynomial helpers over GF(p), coefficient lists low -> high -------------

def _trim(a: list[int]) -> list[int]:
    while a and a[-1] == 0:
        a.pop()
    return a


def _poly_mod_p(a: list[int], m: list[int], p: int) -> list[int]:
    """Remainder of a modulo monic m over GF(p)."""
    a = list(a)
    dm = len(m) - 1
    for i in range(len(a) - 1, dm - 1, -1):
        c = a[i] % p
        if c:
            for j in range(dm + 1):
                a[i - dm + j] = (a[i - dm + j] - c * m[j]) % p
    return _trim([x % p for x in a[:dm]] if len(a) >= dm else [x % p for x in a])


def _is_irreducible_mod_p(f: list[int], p: int) -> bool:
    """Trial division by every monic polynomial of degree <= deg(f)/2."""
    k = len(f) - 1
    for d in range(1, k // 2 + 1):
        for tail in itertools.product(range(p), repeat=d):
            g = list(tail) + [1]
            if not _poly_mod_p(f, g, p):
                return False
    return True


def _lowest_irreducible(p: int, k: int) -> tuple[int, ...]:
    if k == 1:
        return (0, 1)
    for code in range(p**k):
        tail = [(code // p**i) % p for i in range(k)]
        if tail[0] == 0:
            continue
        f = tail + [1]
        if _is_irreducible_mod_p(f, p):
            return tuple(f)
    raise AssertionError("no irreducible polynomial found")  # unreachable


class FiniteField:
    """The field GF(p^k) with a certified defining polynomial and generator.

    Instances are interned by ``make_field`` and immutable afterwards.
    """

    def __init__(self, p: int, k: int = 1):
        if not is_prime(p):
            raise NonPrime(f"{p} is not prime")
        if k < 1:
            raise ValueError("extension degree must be >= 1")
        if p**k > MAX_FIELD_SIZE:
            raise SizeCapExceeded(f"GF({p}^{k}) exceeds the field size cap {MAX_FIELD_SIZE}")
        self.p = p
        self.k = k
        self.q = p**k
        self.modulus = _lowest_irreducible(p, k)
        if not _is_irreducible_mod_p(list(self.modulus), p):
            raise AssertionError("defining polynomial failed certification")
        self._powers = np.array([p**i for i in range(k)], dtype=np.int64)
        # x^t mod f for t < 2k - 1, used to fold polynomial products
        red = np.zeros((max(2 * k - 1, 1), k), dtype=np.int64)
        for t in range(2 * k - 1):
            mono = [0] * t + [1]
            r = _poly_mod_p(mono, list(self.modulus), p) if k > 1 else [1]
            red[t, : len(r)] = r
        self._fold = np.zeros((k, k, k), dtype=np.int64)
        for i in range(k):
            for j in range(k):
                self._fold[i, j] = red[i + j]
        self._exp: list[int] | None = None
        self._log: list[int] | None = None
        self.generator = self._find_generator()
        if self.q <= TABLE_LIMIT:
            self._build_tables()
        self._add_t = None
        self._mul_t = None
        if self.q <= SMALL_TABLE_LIMIT:
            q = self.q
            self._add_t = [[self._add_slow(a, b) for b in range(q)] for a in range(q)]
            self._mul_t = [[self.mul(a, b) for b in range(q)] for a in range(q)]

    # -- identity ---------------------------------------------------------
    def __repr__(self) -> str:
        return f"GF({self.p}^{self.k})" if self.k > 1 else f"GF({self.p})"

    @property
    def spec(self) -> str:
        return f"gf({self.p},{self.k})"

    def __eq__(self, other) -> bool:
        return isinstance(other, FiniteField) and (self.p, self.k) == (other.p, other.k)

    def __hash__(self) -> int:
        return hash((self.p, self.k))

    def __reduce__(self):
        return (make_field, (self.p, self.k))

    # -- scalar codes -----------------------------------------------------
    def digits(self, a: int) -> list[int]:
        return [(a // self.p**i) % self.p for i in range(self.k)]

    def from_digits(self, ds) -> int:
        return sum((int(d) % self.p) * self.p**i for i, d in enumerate(ds))

    def _add_slow(self, a: int, b: int) -> int:
        if self.k == 1:
            return (a + b) % self.p
        return self.from_digits(x + y for x, y in zip(self.digits(a), self.digits(b)))

    def add(self, a: int, b: int) -> int:
        if self._add_t is not None:
            return self._add_t[a][b]
        return self._add_slow(a, b)

    def neg(self, a: int) -> int:
        if self.k == 1:
            return (-a) % self.p
        return self.from_digits(-x for x in self.digits(a))

    def sub(self, a: int, b: int) -> int:
        return self.add(a, self.neg(b))

    def _mul_slow(self, a: int, b: int) -> int:
        if self.k == 1:
            return (a * b) % self.p
        da, db = self.digits(a), self.digits(b)
        prod = [0] * (2 * self.k - 1)
        for i, x in enumerate(da):
            if x:
                for j, y in enumerate(db):
                    prod[i + j] += x * y
        return self.from_digits(_poly_mod_p(prod, list(self.modulus), self.p))

    def mul(self, a: int, b: int) -> int:
        if a == 0 or b == 0:
            return 0
        if self._mul_t is not None:
            return self._mul_t[a][b]
        if self._log is not None:
            return self._exp[self._log[a] + self._log[b]]
        return self._mul_slow(a, b)

    def pow(self, a: int, n: int) -> int:
        if n < 0:
            return self.pow(self.inv(a), -n)
        if a == 0:
            return 1 if n == 0 else 0
        if self._log is not None:
            return self._exp[(self._log[a] * n) % (self.q - 1)]
        result, base = 1, a
        while n:
            if n & 1:
                result = self._mul_slow(result, base)
            base = self._mul_slow(base, base)
            n >>= 1
        return result

    def inv(self, a: int) -> int:
        if a == 0:
            raise DivisionByZero(f"0 has no inverse in {self}")
        if self._log is not None:
            return self._exp[(-self._log[a]) % (self.q - 1)]
        return self.pow(a, self.q - 2)

    def div(self, a: int, b: int) -> int:
        return self.mul(a, self.inv(b))

    def order(self, a: int) -> int:
        """Multiplicative order of a nonzero element."""
        if a == 0:
            raise DivisionByZero("0 has no multiplicative order")
        n = self.q - 1
        for r in prime_factors(self.q - 1):
            while n % r == 0 and self.pow(a, n // r) == 1:
                n //= r
        return n

    def _find_generator(self) -> int:
        if self.q == 2:
            return 1
        rs = prime_factors(self.q - 1)
        for a in range(2, self.q) if self.k == 1 else range(1, self.q):
            if all(self.pow(a, (self.q - 1) // r) != 1 for r in rs):
                return a
        raise AssertionError("multiplicative group has no generator")

    def _build_tables(self) -> None:
        n = self.q - 1
        exp = [0] * (2 * n + 1)
        log = [0] * self.q
        x = 1
        for i in range(n):
            exp[i] = x
            log[x] = i
            x = self._mul_slow(x, self.generator)
        for i in range(n, 2 * n + 1):
            exp[i] = exp[i - n]
        self._exp, self._log = exp, log

    def elements(self):
        return [FieldElement(self, a) for a in range(self.q)]

    def __call__(self, a) -> "FieldElement":
        """Coerce an integer code (or a FieldElement of this field)."""
        if isinstance(a, FieldElement):
            _check_same(self, a.field)
            return a
        a = int(a)
        if not 0 <= a < self.q:
            if self.k == 1:
                a %= self.p
            else:
                raise ValueError(f"code {a} out of range for {self}")
        return FieldElement(self, a)

    def trace_to_prime(self, a: int) -> int:
        """Absolute trace a + a^p + ... + a^(p^(k-1)), an element of GF(p)."""
        t, x = 0, a
        for _ in range(self.k):
            t = self.add(t, x)
            x = self.pow(x, self.p)
        return t

    def root_of_unity(self, n: int) -> int:
        if n < 1 or (self.q - 1) % n:
            raise NoSuchRoot(f"{self} has no element of order {n}; enlarge k so that {n} | p^k - 1")
        return self.pow(self.generator, (self.q - 1) // n)

    # -- coefficient-stack array arithmetic --------------------------------
    def to_stack(self, codes) -> np.ndarray:
        codes = np.asarray(codes, dtype=np.int64)
        if self.k == 1:
            return (codes % self.p)[None]
        return (codes[None] // self._powers.reshape((self.k,) + (1,) * codes.ndim)) % self.p

    def from_stack(self, stack: np.ndarray) -> np.ndarray:
        if self.k == 1:
            return stack[0].copy()
        return np.tensordot(self._powers, stack, axes=(0, 0))

    def smul(self, a: np.ndarray, b: np.ndarray) -> np.ndarray:
        """Elementwise product of two broadcastable stacks."""
        p = self.p
        if self.k == 1:
            return (a * b) % p
        outer = (a[:, None] * b[None, :]) % p
        return np.tensordot(self._fold, outer, axes=([0, 1], [0, 1])) % p

    def smatmul(self, a: np.ndarray, b: np.ndarray) -> np.ndarray:
        """Matrix product of stacks shaped (k, ..., r, m) and (k, ..., m, c)."""
        p = self.p
        if self.k == 1:
            return np.matmul(a[0], b[0])[None] % p
        outer = np.matmul(a[:, None], b[None, :]) % p
        return np.tensordot(self._fold, outer, axes=([0, 1], [0, 1])) % p

    def scale(self, c: int, a: np.ndarray) -> np.ndarray:
        """Multiply every entry of stack ``a`` by the scalar code ``c``."""
        cs = self.to_stack(np.int64(c)).reshape((self.k,) + (1,) * (a.ndim - 1))
        return self.smul(cs, a)

    def inv_codes(self, codes: np.ndarray) -> np.ndarray:
        codes = np.asarray(codes, dtype=np.int64)
        if np.any(codes == 0):
            raise DivisionByZero("zero entry has no inverse")
        return np.vectorize(self.inv, otypes=[np.int64])(codes) if codes.size else codes

    def random_stack(self, rng: np.random.Generator, shape) -> np.ndarray:
        return rng.integers(0, self.p, size=(self.k,) + tuple(shape), dtype=np.int64)


def _check_same(f1: FiniteField, f2: FiniteField) -> None:
    if f1 != f2:
        raise CtxMismatch(f"field mismatch: {f1} vs {f2}")


@functools.lru_cache(maxsize=None)
def make_field(p: int, k: int = 1) -> FiniteField:
    """Return the (interned) field GF(p^k)."""
    return FiniteField(p, k)


@dataclass(frozen=True)
class FieldElement:
    """A scalar of GF(p^k), stored as its integer code."""

    field: FiniteField
    code: int

    @property
    def coeffs(self) -> list[int]:
        return self.field.digits(self.code)

    def _other(self, b) -> int:
        if isinstance(b, FieldElement):
            _check_same(self.field, b.field)
            return b.code
        return self.field(b).code

    def __add__(self, b):
        return FieldElement(self.field, self.field.add(self.code, self._other(b)))

    __radd__ = __add__

    def __sub__(self, b):
        return FieldElement(self.field, self.field.sub(self.code, self._other(b)))

    def __rsub__(self, b):
        return FieldElement(self.field, self.field.sub(self._other(b), self.code))

    def __mul__(self, b):
        return FieldElement(self.field, self.field.mul(self.code, self._other(b)))

    __rmul__ = __mul__

    def __truediv__(self, b):
        return FieldElement(self.field, self.field.div(self.code, self._other(b)))

    def __neg__(self):
        return FieldElement(self.field, self.field.neg(self.code))

    def __pow__(self, n: int):
        return FieldElement(self.field, self.field.pow(self.code, n))

    def inv(self) -> "FieldElement":
        return FieldElement(self.field, self.field.inv(self.code))

    def order(self) -> int:
        return self.field.order(self.code)

    def trace(self) -> "FieldElement":
        return FieldElement(self.field, self.field.trace_to_prime(self.code))

    def __bool__(self) -> bool:
        return self.code != 0

    def __int__(self) -> int:
        return self.code

    def __eq__(self, other) -> bool:
        if isinstance(other, FieldElement):
            return self.field == other.field and self.code == other.code
        if isinstance(other, int):
            return self.code == self.field(other).code
        return NotImplemented

    def __hash__(self) -> int:
        return hash((self.field.p, self.field.k, self.code))

    def __repr__(self) -> str:
        if self.field.k == 1:
            return str(self.code)
        terms = []
        for i, c in enumerate(self.coeffs):
            if c:
                mono = "1" if i == 0 else ("x" if i == 1 else f"x^{i}")
                terms.append(mono if c == 1 and i else f"{c}" if i == 0 else f"{c}*{mono}")
        return "+".join(reversed(terms)) or "0"


# functional aliases mirroring the operation names used in reports
def add(a: FieldElement, b: FieldElement) -> FieldElement:
    return a + b


def mul(a: FieldElement, b: FieldElement) -> FieldElement:
    return a * b


def neg(a: FieldElement) -> FieldElement:
    return -a


def inv(a: FieldElement) -> FieldElement:
    return a.inv()


def trace_to_prime(a: FieldElement) -> FieldElement:
    return a.trace()


def root_of_unity(ctx: FiniteField, n: int) -> FieldElement:
    return FieldElement(ctx, ctx.root_of_unity(n))


def parse_field_spec(text: str) -> FiniteField:
    """Parse ``"gf(p,k)"`` or ``"gf(p)"``."""
    from .specs import parse_field

    return parse_field(text)
