from itertools import product

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from multfree.errors import AmbientMismatch, CtxMismatch, ShapeMismatch
from multfree.field import make_field
from multfree.linalg import (
    Matrix,
    Subspace,
    contains,
    equal,
    intersect,
    kernel,
    kron,
    rref,
    solve_linear_system,
    subspace_sum,
)

from oracles import OracleField, rank as oracle_rank

FIELDS = [(2, 1), (3, 1), (2, 2), (5, 1)]


def M(F, rows):
    return Matrix.from_codes(F, rows)


@st.composite
def matrices(draw, fields=FIELDS, max_rows=5, max_cols=5):
    F = make_field(*draw(st.sampled_from(fields)))
    r = draw(st.integers(1, max_rows))
    c = draw(st.integers(1, max_cols))
    codes = draw(st.lists(st.integers(0, F.q - 1), min_size=r * c, max_size=r * c))
    return M(F, np.array(codes).reshape(r, c))


def test_rref_examples():
    F5 = make_field(5)
    red, rk = rref(Matrix.identity(F5, 3))
    assert rk == 3 and red == Matrix.identity(F5, 3)
    z = Matrix.zeros(F5, 2, 4)
    assert rref(z) == (z, 0)
    F2 = make_field(2)
    red, rk = rref(M(F2, [[1, 1], [1, 1]]))
    assert rk == 1 and red.tolist() == [[1, 1], [0, 0]]


def test_kernel_examples():
    F3, F2 = make_field(3), make_field(2)
    assert kernel(Matrix.identity(F3, 4)).dim == 0
    assert kernel(Matrix.zeros(F3, 2, 2)).dim == 2
    k = kernel(M(F2, [[1, 1]]))
    assert k.dim == 1 and k.vectors() == [[1, 1]]


def test_solve_examples():
    F3 = make_field(3)
    i2 = Matrix.identity(F3, 2)
    assert solve_linear_system([(i2, i2)]).dim == 4
    assert solve_linear_system([(i2, Matrix.zeros(F3, 2, 2))]).dim == 0
    F2 = make_field(2)
    swap = M(F2, [[0, 1, 0], [1, 0, 0], [0, 0, 1]])
    cyc = M(F2, [[0, 0, 1], [1, 0, 0], [0, 1, 0]])
    assert solve_linear_system([(swap, swap), (cyc, cyc)]).dim == 2


def test_solve_shape_errors():
    F3 = make_field(3)
    with pytest.raises(ShapeMismatch):
        solve_linear_system([(Matrix.identity(F3, 2), Matrix.identity(F3, 2)), (Matrix.identity(F3, 3), Matrix.identity(F3, 2))])
    with pytest.raises(CtxMismatch):
        solve_linear_system([(Matrix.identity(F3, 2), Matrix.identity(make_field(5), 2))])


def test_kron_examples():
    F = make_field(3)
    assert kron(Matrix.identity(F, 2), Matrix.identity(F, 3)) == Matrix.identity(F, 6)
    a = M(F, [[1, 2], [0, 1]])
    assert kron(a, M(F, [[1]])) == a


def test_subspace_examples():
    F2 = make_field(2)
    e1 = Subspace.span(F2, [[1, 0, 0]], 3)
    e2 = Subspace.span(F2, [[0, 1, 0]], 3)
    assert subspace_sum(e1, e2).dim == 2
    assert intersect(e1, e2).dim == 0
    assert subspace_sum(e1, Subspace.zero(F2, 3)) == e1
    assert intersect(e1, Subspace.full(F2, 3)) == e1
    assert contains(Subspace.full(F2, 3), e1) and not contains(e1, e2)
    assert equal(e1, Subspace.span(F2, [[1, 0, 0], [1, 0, 0]], 3))
    with pytest.raises(AmbientMismatch):
        e1 + Subspace.zero(F2, 4)


@given(matrices())
def test_rref_idempotent_rank_preserving(m):
    red, rk = rref(m)
    red2, rk2 = rref(red)
    assert red2 == red and rk2 == rk
    O = OracleField(m.field.p, m.field.modulus)
    assert rk == oracle_rank(O, m.codes().tolist())


@given(matrices())
def test_rank_nullity(m):
    k = kernel(m)
    assert k.dim + m.rank() == m.cols
    if k.dim:
        assert (m @ k.matrix().T).is_zero()


@st.composite
def matrix_pairs(draw):
    F = make_field(*draw(st.sampled_from(FIELDS)))
    out = []
    for _ in range(2):
        r, c = draw(st.integers(1, 3)), draw(st.integers(1, 3))
        codes = draw(st.lists(st.integers(0, F.q - 1), min_size=r * c, max_size=r * c))
        out.append(M(F, np.array(codes).reshape(r, c)))
    return out


@given(matrix_pairs())
def test_kron_rank_multiplicative(pair):
    a, b = pair
    assert kron(a, b).rank() == a.rank() * b.rank()
    assert kron(a, b).shape == (a.rows * b.rows, a.cols * b.cols)


@given(st.lists(st.lists(st.integers(0, 1), min_size=6, max_size=6), max_size=4),
       st.lists(st.lists(st.integers(0, 1), min_size=6, max_size=6), max_size=4))
def test_modular_dimension_law_gf2(u, v):
    F = make_field(2)
    A, B = Subspace.span(F, u, 6), Subspace.span(F, v, 6)
    assert (A + B).dim == A.dim + B.dim - A.intersect(B).dim
    assert A.contains(A.intersect(B)) and B.contains(A.intersect(B))


def _brute_solution_count(p, blocks, r, c):
    xs = np.array(list(product(range(p), repeat=r * c))).reshape(-1, r, c)
    ok = np.ones(len(xs), bool)
    for a, b in blocks:
        ok &= ~((np.asarray(a) @ xs - xs @ np.asarray(b)) % p).any(axis=(1, 2))
    return int(ok.sum())


@settings(max_examples=25)
@given(st.sampled_from([(2, 3, 3), (3, 3, 2), (3, 2, 2), (2, 2, 4)]), st.integers(1, 2), st.data())
def test_solve_matches_brute_force(shape, nblocks, data):
    p, r, c = shape
    F = make_field(p)
    blocks = []
    for _ in range(nblocks):
        a = data.draw(st.lists(st.integers(0, p - 1), min_size=r * r, max_size=r * r))
        b = data.draw(st.lists(st.integers(0, p - 1), min_size=c * c, max_size=c * c))
        blocks.append((np.array(a).reshape(r, r), np.array(b).reshape(c, c)))
    sol = solve_linear_system([(M(F, a), M(F, b)) for a, b in blocks])
    assert p**sol.dim == _brute_solution_count(p, blocks, r, c)
