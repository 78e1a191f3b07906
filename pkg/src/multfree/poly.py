"""Univariate polynomials over GF(q) as coefficient lists (low degree first).

Only what the meataxe needs: arithmetic, gcd, square-free and
distinct/equal-degree factorization.  Coefficients are field codes.
"""

from __future__ import annotations

import random

from .field import FiniteField

Poly = list[int]


def trim(a: Poly) -> Poly:
    a = list(a)
    while a and a[-1] == 0:
        a.pop()
    return a


def degree(a: Poly) -> int:
    return len(a) - 1


def add(F: FiniteField, a: Poly, b: Poly) -> Poly:
    n = max(len(a), len(b))
    out = [F.add(a[i] if i < len(a) else 0, b[i] if i < len(b) else 0) for i in range(n)]
    return trim(out)


def sub(F: FiniteField, a: Poly, b: Poly) -> Poly:
    return add(F, a, [F.neg(c) for c in b])


def mul(F: FiniteField, a: Poly, b: Poly) -> Poly:
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    fadd, fmul = F.add, F.mul
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                if y:
                    out[i + j] = fadd(out[i + j], fmul(x, y))
    return trim(out)


def scale(F: FiniteField, c: int, a: Poly) -> Poly:
    return trim([F.mul(c, x) for x in a])


def monic(F: FiniteField, a: Poly) -> Poly:
    a = trim(a)
    if not a:
        return a
    return scale(F, F.inv(a[-1]), a)


def divmod_(F: FiniteField, a: Poly, b: Poly) -> tuple[Poly, Poly]:
    b = trim(b)
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    a = trim(a)
    if len(a) < len(b):
        return [], a
    r = list(a)
    db = len(b) - 1
    lead_inv = F.inv(b[-1])
    quo = [0] * (len(a) - db)
    fadd, fmul, fneg = F.add, F.mul, F.neg
    for i in range(len(a) - 1, db - 1, -1):
        c = r[i]
        if c:
            c = fmul(c, lead_inv)
            quo[i - db] = c
            nc = fneg(c)
            for j in range(db + 1):
                if b[j]:
                    r[i - db + j] = fadd(r[i - db + j], fmul(nc, b[j]))
    return trim(quo), trim(r[:db])


def mod(F: FiniteField, a: Poly, b: Poly) -> Poly:
    return divmod_(F, a, b)[1]


def gcd(F: FiniteField, a: Poly, b: Poly) -> Poly:
    a, b = trim(a), trim(b)
    while b:
        a, b = b, mod(F, a, b)
    return monic(F, a)


def powmod(F: FiniteField, base: Poly, e: int, m: Poly) -> Poly:
    result: Poly = [1]
    base = mod(F, base, m)
    while e:
        if e & 1:
            result = mod(F, mul(F, result, base), m)
        base = mod(F, mul(F, base, base), m)
        e >>= 1
    return result


def derivative(F: FiniteField, a: Poly) -> Poly:
    out = []
    for i in range(1, len(a)):
        c = 0
        for _ in range(i % F.p):
            c = F.add(c, a[i])
        out.append(c)
    return trim(out)


def _pth_root(F: FiniteField, a: Poly) -> Poly:
    """Inverse Frobenius on a polynomial whose exponents are multiples of p."""
    e = F.q // F.p
    return trim([F.pow(a[i], e) for i in range(0, len(a), F.p)])


def squarefree(F: FiniteField, f: Poly) -> list[tuple[Poly, int]]:
    """Square-free decomposition of a monic polynomial."""
    f = monic(F, f)
    out: list[tuple[Poly, int]] = []
    if degree(f) < 1:
        return out
    df = derivative(F, f)
    if not df:
        for g, m in squarefree(F, _pth_root(F, f)):
            out.append((g, m * F.p))
        return out
    c = gcd(F, f, df)
    w = divmod_(F, f, c)[0]
    i = 1
    while degree(w) > 0:
        y = gcd(F, w, c)
        z = divmod_(F, w, y)[0]
        if degree(z) > 0:
            out.append((monic(F, z), i))
        i += 1
        w = y
        c = divmod_(F, c, y)[0]
    if degree(c) > 0:
        for g, m in squarefree(F, _pth_root(F, c)):
            out.append((g, m * F.p))
    return out


def distinct_degree(F: FiniteField, f: Poly, max_degree: int | None = None) -> list[tuple[Poly, int]]:
    """Split a square-free monic f into products of equal-degree irreducibles."""
    out = []
    x: Poly = [0, 1]
    h = x
    d = 0
    rest = monic(F, f)
    while degree(rest) >= 2 * (d + 1):
        d += 1
        if max_degree is not None and d > max_degree:
            return out
        h = powmod(F, h, F.q, rest)
        g = gcd(F, rest, sub(F, h, x))
        if degree(g) > 0:
            out.append((g, d))
            rest = divmod_(F, rest, g)[0]
            h = mod(F, h, rest)
    if degree(rest) > 0 and (max_degree is None or degree(rest) <= max_degree):
        out.append((rest, degree(rest)))
    return out


def equal_degree(F: FiniteField, f: Poly, d: int, rng: random.Random) -> list[Poly]:
    """Cantor-Zassenhaus splitting of a product of distinct degree-d irreducibles."""
    f = monic(F, f)
    n = degree(f)
    if n == d:
        return [f]
    while True:
        a = trim([rng.randrange(F.q) for _ in range(n)])
        if degree(a) < 1:
            continue
        if F.p == 2:
            # trace map a + a^2 + ... + a^(2^(kd-1))
            t = a
            acc = a
            for _ in range(F.k * d - 1):
                t = mod(F, mul(F, t, t), f)
                acc = add(F, acc, t)
            g = gcd(F, f, acc)
        else:
            e = (F.q**d - 1) // 2
            g = gcd(F, f, sub(F, powmod(F, a, e, f), [1]))
        if 0 < degree(g) < n:
            return equal_degree(F, g, d, rng) + equal_degree(F, divmod_(F, f, g)[0], d, rng)


def factor(F: FiniteField, f: Poly, seed: int = 0, max_degree: int | None = None) -> list[tuple[Poly, int]]:
    """Irreducible monic factors with multiplicities, sorted by (degree, coefficients).

    With ``max_degree`` only factors of at most that degree are returned.
    """
    rng = random.Random(seed)
    out = []
    for g, m in squarefree(F, f):
        for h, d in distinct_degree(F, g, max_degree):
            for irr in equal_degree(F, h, d, rng):
                out.append((irr, m))
    out.sort(key=lambda t: (len(t[0]), t[0][::-1]))
    return out


def evaluate_matrix(F: FiniteField, f: Poly, a):
    """f(A) for a square linalg.Matrix A (Horner)."""
    from .linalg import Matrix

    n = a.rows
    result = Matrix.zeros(F, n, n)
    eye = Matrix.identity(F, n)
    for c in reversed(f):
        result = result @ a + eye * c
    return result
