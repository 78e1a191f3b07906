import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from multfree.errors import SplittingFieldInsufficient
from multfree.field import make_field
from multfree.groups import cyclic_group, general_linear_group, quaternion_group, symmetric_group, young_subgroup
from multfree.homalg import end_algebra
from multfree.linalg import Subspace
from multfree.meataxe import (
    ModuleOverAlgebra,
    algebra_radical,
    chop,
    constituent_inventory,
    irreducible_inventory,
    is_irreducible,
    iso_test,
    radical_elements,
    spin,
)
from multfree.reps import permutation_rep, regular_rep, sign_rep, trivial_rep

import oracles


def mod(rho):
    return ModuleOverAlgebra.from_representation(rho)


def perm3(p):
    g = symmetric_group(3)
    return permutation_rep(g, young_subgroup(g, 2), make_field(p))


def test_spin_examples():
    F3 = make_field(3)
    m = mod(regular_rep(symmetric_group(3), F3))
    assert spin(m, Subspace.zero(F3, 6)).dim == 0
    line = spin(m, np.ones((1, 6), dtype=np.int64))
    assert line.dim == 1 and line.vectors() == [[1] * 6]
    p2 = mod(perm3(2))
    plane = spin(p2, np.array([[1, 1, 0]]))
    assert plane.dim == 2
    assert all(sum(v) % 2 == 0 for v in plane.vectors())


def test_irreducible_examples():
    assert is_irreducible(mod(trivial_rep(symmetric_group(3), make_field(5)))).irreducible
    res = is_irreducible(mod(perm3(5)))
    assert not res.irreducible and res.witness.dim in (1, 2)
    assert 0 < res.witness.dim < 3
    # the sum-zero plane over GF(2): exhaustive oracle finds no invariant line
    p2 = mod(perm3(2))
    plane = spin(p2, np.array([[1, 1, 0]]))
    sub = p2.submodule(plane)
    assert is_irreducible(sub).irreducible
    O = oracles.prime_field(2)
    gens = [sub.field.from_stack(sub.mats[:, i]).tolist() for i in range(sub.n_gens)]
    assert len(oracles.invariant_subspaces(O, gens, 2)) == 2


def test_chop_examples():
    g = symmetric_group(3)
    r5 = chop(mod(regular_rep(g, make_field(5))))
    assert sorted(d for d, c in zip(r5.dims(), r5.multiplicities) for _ in range(c)) == [1, 1, 2, 2]
    r3 = chop(mod(regular_rep(g, make_field(3))))
    assert r3.dims() == [1, 1] and r3.multiplicities == [3, 3]
    one = chop(mod(sign_rep(g, make_field(5))))
    assert one.multiplicities == [1] and one.dims() == [1]


def test_iso_examples():
    g = symmetric_group(3)
    F5 = make_field(5)
    s = mod(sign_rep(g, F5))
    assert iso_test(s, s)
    assert not iso_test(mod(trivial_rep(g, F5)), s)
    p2 = mod(perm3(2))
    r = chop(p2)
    assert len(r.factors) == 2 and not iso_test(*r.factors)


def test_inventory_examples():
    assert sorted(irreducible_inventory(symmetric_group(3), make_field(5)).dims()) == [1, 1, 2]
    assert irreducible_inventory(symmetric_group(3), make_field(3)).dims() == [1, 1]
    q8 = irreducible_inventory(quaternion_group(), make_field(2))
    assert q8.dims() == [1] and (q8[0].images[0] == 1).all()


def test_inventory_splitting_field_failure():
    with pytest.raises(SplittingFieldInsufficient) as e:
        irreducible_inventory(cyclic_group(3), make_field(2))
    assert e.value.suggested_k == 2
    assert irreducible_inventory(cyclic_group(3), make_field(2, 2)).dims() == [1, 1, 1]


@pytest.mark.parametrize("g,F", [
    (symmetric_group(3), make_field(5)),
    (symmetric_group(4), make_field(5)),
    (general_linear_group(2, make_field(2)), make_field(7)),
    (quaternion_group(), make_field(3)),
], ids=["S3/GF5", "S4/GF5", "GL2(2)/GF7", "Q8/GF3"])
def test_wedderburn_and_class_count(g, F):
    inv = irreducible_inventory(g, F)
    assert sum(d * d for d in inv.dims()) == g.order
    assert len(inv) == len(g.conjugacy_classes())


@pytest.mark.parametrize("g,F", [
    (symmetric_group(3), make_field(2)),
    (symmetric_group(4), make_field(3)),
    (quaternion_group(), make_field(2)),
    (cyclic_group(6), make_field(2, 2)),
], ids=["S3/GF2", "S4/GF3", "Q8/GF2", "C6/GF4"])
def test_inventory_accounts_for_regular_module(g, F):
    inv = irreducible_inventory(g, F)
    assert sum(r.dim * r.provenance["composition_multiplicity"] for r in inv) == g.order
    # number of irreducibles is the number of p-regular classes
    regular = [c for c in g.conjugacy_classes() if g.element_order(c[0]) % F.p]
    assert len(inv) == len(regular)


def test_radical_examples():
    F5 = make_field(5)
    g = symmetric_group(3)
    h = young_subgroup(g, 2)
    from multfree.homalg import hecke_algebra_convolution

    hk = hecke_algebra_convolution(g, h, trivial_rep(h, F5))
    assert algebra_radical(hk).dim == 0
    F2 = make_field(2)
    c2 = end_algebra(regular_rep(cyclic_group(2), F2))
    rad = algebra_radical(c2)
    assert rad.dim == 1
    x = radical_elements(c2, rad)[:, 0]
    assert F2.from_stack(x).tolist() == [[1, 1], [1, 1]]
    one = end_algebra(trivial_rep(g, F5))
    assert algebra_radical(one).dim == 0


@pytest.mark.parametrize("rho", [
    regular_rep(cyclic_group(4), make_field(2)),
    regular_rep(symmetric_group(3), make_field(3)),
    regular_rep(quaternion_group(), make_field(2)),
    perm3(2),
    permutation_rep(symmetric_group(4), young_subgroup(symmetric_group(4), 2), make_field(2)),
], ids=["C4/GF2", "S3/GF3", "Q8/GF2", "perm3/GF2", "S4/S2xS1/GF2"])
def test_radical_is_nilpotent_ideal(rho):
    a = end_algebra(rho)
    rad = algebra_radical(a)
    F, n = a.field, a.ambient_dim
    r = radical_elements(a, rad)

    def products(x, y):
        return F.smatmul(x[:, :, None], y[:, None]).reshape(F.k, -1, n, n)

    if rad.dim:
        for side in (products(a.basis, r), products(r, a.basis)):
            assert rad.contains_vectors(F.to_stack(a.coordinates(side)))
    # rad^j as a subspace of the algebra, until it vanishes
    power = rad
    for _ in range(a.dim):
        if power.dim == 0:
            break
        prods = products(radical_elements(a, power), r)
        power = Subspace.from_rows(F, F.to_stack(a.coordinates(prods)), a.dim)
    assert power.dim == 0


def test_chop_deterministic():
    m = mod(regular_rep(quaternion_group(), make_field(3)))
    a, b = chop(m, seed=7), chop(m, seed=7)
    assert a.sequence == b.sequence
    assert all(np.array_equal(x.mats, y.mats) for x, y in zip(a.factors, b.factors))


def test_constituent_inventory():
    inv = constituent_inventory(perm3(5))
    assert sorted(inv.dims()) == [1, 2] and not inv.complete


@st.composite
def small_modules(draw):
    p, k, d = draw(st.sampled_from([(2, 1, 2), (2, 1, 3), (2, 1, 4), (3, 1, 2), (3, 1, 3), (2, 2, 2)]))
    F = make_field(p, k)
    n = draw(st.integers(1, 2))
    codes = draw(st.lists(st.integers(0, F.q - 1), min_size=n * d * d, max_size=n * d * d))
    mats = F.to_stack(np.array(codes).reshape(n, d, d))
    return ModuleOverAlgebra(F, mats)


def _longest_chain(subspaces):
    by_size = sorted(subspaces, key=len)
    best = {}
    for s in by_size:
        best[s] = max((best[t] + 1 for t in best if t < s), default=0)
    return max(best.values())


@settings(max_examples=80)
@given(small_modules())
def test_meataxe_against_exhaustive_oracle(m):
    F = m.field
    O = oracles.OracleField(F.p, F.modulus)
    gens = [F.from_stack(m.mats[:, i]).tolist() for i in range(m.n_gens)]
    lattice = oracles.invariant_subspaces(O, gens, m.dim)
    res = is_irreducible(m, np.random.default_rng(0))
    assert res.irreducible == (len(lattice) == 2)
    if not res.irreducible:
        w = res.witness
        assert 0 < w.dim < m.dim
        assert frozenset(oracles.span(O, [tuple(v) for v in w.vectors()], m.dim)) in lattice
    report = chop(m, seed=0)
    assert report.total_dim == m.dim
    assert sum(report.multiplicities) == _longest_chain(lattice)
