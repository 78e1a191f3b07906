import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from multfree.errors import CtxMismatch, DivisionByZero, NonPrime, NoSuchRoot, SizeCapExceeded
from multfree.field import FieldElement, inv, make_field, parse_field_spec, root_of_unity, trace_to_prime
from multfree.poly import factor

from oracles import OracleField

SMALL = [(2, 1), (3, 1), (5, 1), (7, 1), (2, 2), (3, 2), (2, 3), (2, 4)]
FIELDS = SMALL + [(5, 2), (7, 2), (2, 8), (3, 5)]


@st.composite
def field_and_elements(draw, n=3):
    p, k = draw(st.sampled_from(FIELDS))
    F = make_field(p, k)
    return F, [draw(st.integers(0, F.q - 1)) for _ in range(n)]


def test_prime_field_modulus_is_x():
    assert make_field(2, 1).modulus == (0, 1)


def test_gf4_modulus():
    assert make_field(2, 2).modulus == (1, 1, 1)


def test_gf9_has_generator_of_order_8():
    F = make_field(3, 2)
    orders = [F.order(a) for a in range(1, 9)]
    assert 8 in orders
    assert F.order(F.generator) == 8


@pytest.mark.parametrize("p,k", FIELDS)
def test_modulus_irreducible_and_lowest(p, k):
    F = make_field(p, k)
    if k == 1:
        return
    fac = factor(make_field(p, 1), list(F.modulus))
    assert len(fac) == 1 and fac[0][1] == 1
    # nothing lexicographically smaller is irreducible
    for code in range(F.from_digits(F.modulus[:k])):
        tail = [(code // p**i) % p for i in range(k)]
        if tail[0]:
            f = factor(make_field(p, 1), tail + [1])
            assert not (len(f) == 1 and f[0][1] == 1)


@pytest.mark.parametrize("p,k", SMALL)
def test_generator_order_matches_oracle(p, k):
    F = make_field(p, k)
    O = OracleField(p, F.modulus)
    assert O.order(F.generator) == F.q - 1


def test_errors():
    with pytest.raises(NonPrime):
        make_field(6, 1)
    with pytest.raises(SizeCapExceeded):
        make_field(2, 21)
    with pytest.raises(NoSuchRoot):
        make_field(3, 1).root_of_unity(3)
    with pytest.raises(DivisionByZero):
        make_field(5, 1)(0).inv()
    with pytest.raises(CtxMismatch):
        make_field(5, 1)(1) + make_field(7, 1)(1)


def test_spec_examples():
    F4 = make_field(2, 2)
    x = FieldElement(F4, 2)
    assert x * (x + 1) == 1
    assert inv(make_field(7, 1)(3)) == 5
    F9 = make_field(3, 2)
    assert F9(F9.generator) ** 8 == 1


def test_trace_examples():
    F4 = make_field(2, 2)
    assert trace_to_prime(F4(2)) == 1
    for a in make_field(7, 1).elements():
        assert trace_to_prime(a) == a
    assert trace_to_prime(make_field(3, 2)(0)) == 0


def test_root_of_unity_examples():
    z = root_of_unity(make_field(7, 1), 3)
    assert z**3 == 1 and z != 1
    assert root_of_unity(make_field(2, 2), 3).code in (2, 3)
    assert root_of_unity(make_field(3, 1), 2) == 2


def test_parse_field_spec():
    assert parse_field_spec("gf(3,2)") == make_field(3, 2)
    assert parse_field_spec("gf(5)").spec == "gf(5,1)"


@pytest.mark.parametrize("p,k", [f for f in SMALL if f[0] ** f[1] <= 16])
def test_axioms_exhaustive(p, k):
    F = make_field(p, k)
    q = F.q
    for a in range(q):
        for b in range(q):
            assert F.add(a, b) == F.add(b, a)
            assert F.mul(a, b) == F.mul(b, a)
            for c in range(q):
                assert F.mul(a, F.mul(b, c)) == F.mul(F.mul(a, b), c)
                assert F.mul(a, F.add(b, c)) == F.add(F.mul(a, b), F.mul(a, c))


@pytest.mark.parametrize("p,k", SMALL + [(5, 2), (2, 8)])
def test_inverse_exhaustive(p, k):
    F = make_field(p, k)
    for a in range(1, F.q):
        assert F.mul(a, F.inv(a)) == 1


@pytest.mark.parametrize("p,k", SMALL + [(5, 2), (2, 8), (2, 10)])
def test_trace_additive_and_prime_exhaustive(p, k):
    F = make_field(p, k)
    tr = [F.trace_to_prime(a) for a in range(F.q)]
    assert all(t < p for t in tr)
    rng = np.random.default_rng(1)
    for a, b in rng.integers(0, F.q, size=(500, 2)):
        assert tr[F.add(int(a), int(b))] == F.add(tr[a], tr[b])


@given(field_and_elements())
def test_mul_matches_oracle(fe):
    F, (a, b, _) = fe
    O = OracleField(F.p, F.modulus)
    assert F.mul(a, b) == O.mul(a, b)
    assert F.add(a, b) == O.add(a, b)


@given(field_and_elements())
def test_field_axioms_random(fe):
    F, (a, b, c) = fe
    assert F.mul(a, F.mul(b, c)) == F.mul(F.mul(a, b), c)
    assert F.mul(a, F.add(b, c)) == F.add(F.mul(a, b), F.mul(a, c))
    assert F.add(a, F.neg(a)) == 0
    if a:
        assert F.mul(a, F.inv(a)) == 1


@given(st.sampled_from(FIELDS), st.data())
def test_root_of_unity_exact_order(pk, data):
    F = make_field(*pk)
    divisors = [n for n in range(1, F.q) if (F.q - 1) % n == 0]
    n = data.draw(st.sampled_from(divisors))
    z = F.root_of_unity(n)
    assert F.pow(z, n) == 1
    assert all(F.pow(z, m) != 1 for m in range(1, n))


@given(field_and_elements())
def test_stack_arithmetic_matches_scalar(fe):
    F, (a, b, c) = fe
    s = F.to_stack(np.array([[a, b], [c, a]]))
    t = F.to_stack(np.array([[b, c], [a, b]]))
    prod = F.from_stack(F.smatmul(s, t))
    expect = [[F.add(F.mul(a, b), F.mul(b, a)), F.add(F.mul(a, c), F.mul(b, b))],
              [F.add(F.mul(c, b), F.mul(a, a)), F.add(F.mul(c, c), F.mul(a, b))]]
    assert prod.tolist() == expect
    assert np.array_equal(F.from_stack(F.to_stack(np.array([a, b, c]))), [a, b, c])
