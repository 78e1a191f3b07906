import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from multfree.errors import NoSuchRoot, SizeCapExceeded
from multfree.field import make_field, root_of_unity
from multfree.groups import (
    cartan_subgroup,
    double_cosets,
    general_linear_group,
    quaternion_group,
    symmetric_group,
    trivial_subgroup,
    unitriangular_subgroup,
    whole_group,
    young_subgroup,
)
from multfree.homalg import hom_dim, hom_space
from multfree.meataxe import irreducible_inventory
from multfree.reps import (
    coinduce,
    direct_sum,
    dual,
    gelfand_graev_character,
    induce,
    mackey_dimension,
    multiplicative_character,
    natural_rep,
    permutation_rep,
    regular_rep,
    restrict,
    sign_rep,
    tensor,
    trivial_rep,
)

from oracles import OracleField, matmul


def _fixtures():
    """(G, H, eta, rho) tuples used by the reciprocity properties."""
    out = []
    for n, p in [(3, 2), (3, 3), (3, 5), (4, 2), (4, 3)]:
        F = make_field(p)
        g = symmetric_group(n)
        h = young_subgroup(g, n - 1)
        for eta in (trivial_rep(h, F), sign_rep(h, F)):
            for rho in (regular_rep(g, F), permutation_rep(g, h, F), sign_rep(g, F)):
                out.append((f"S{n}/GF({p})/{eta.name}/{rho.name}", g, h, eta, rho))
    F = make_field(3)
    g = general_linear_group(2, make_field(2))
    u = unitriangular_subgroup(g)
    eta = gelfand_graev_character(u, root_of_unity(F, 2))
    out.append(("GL2(2)/GF(3)/gg/regular", g, u, eta, regular_rep(g, F)))
    F = make_field(2, 2)
    g = general_linear_group(2, make_field(3))
    u = unitriangular_subgroup(g)
    eta = gelfand_graev_character(u, root_of_unity(F, 3))
    out.append(("GL2(3)/GF(4)/gg/perm-U", g, u, eta, permutation_rep(g, u, F)))
    return out


FIXTURES = _fixtures()
FIX_IDS = [f[0] for f in FIXTURES]


def _brute_hom_homomorphism(rho):
    F = rho.field
    O = OracleField(F.p, F.modulus)
    g = rho.group
    imgs = [F.from_stack(rho.images[:, x]).tolist() for x in range(g.order)]
    for a in range(g.order):
        for b in range(g.order):
            assert matmul(O, imgs[a], imgs[b]) == imgs[g.mul(a, b)]


def test_trivial_examples():
    F = make_field(5)
    g = symmetric_group(3)
    t = trivial_rep(g, F)
    assert (F.from_stack(t.images) == 1).all()
    h = young_subgroup(g, 2)
    assert (restrict(t, h).images == trivial_rep(h, F).images).all()
    assert hom_dim(t, t) == 1


def test_gelfand_graev_examples():
    g = general_linear_group(2, make_field(2))
    u = unitriangular_subgroup(g)
    F3 = make_field(3)
    eta = gelfand_graev_character(u, F3(2))
    x = g.index_of_label((1, 1, 0, 1))
    assert F3.from_stack(eta.images[:, u.local(x)]).item() == 2
    g3 = general_linear_group(2, make_field(3))
    u3 = unitriangular_subgroup(g3)
    F4 = make_field(2, 2)
    eta = gelfand_graev_character(u3, F4(2))
    vals = {int(F4.from_stack(eta.images[:, i]).item()) for i in range(3)}
    assert vals == {1, 2, 3}
    with pytest.raises(NoSuchRoot):
        gelfand_graev_character(u3, make_field(3)(2))


def test_permutation_examples():
    F = make_field(2)
    g = symmetric_group(3)
    h = young_subgroup(g, 2)
    perm = permutation_rep(g, h, F)
    assert perm.dim == 3
    whole = permutation_rep(g, whole_group(g), F)
    assert whole.dim == 1 and (whole.images[0] == 1).all()
    ind = induce(trivial_rep(h, F), g)
    hs = hom_space(perm, ind)
    assert hs.dim == hom_dim(ind, perm) == hom_dim(perm, perm) == 2
    assert any(t.is_invertible() for t in hs.basis)


def test_restrict_examples():
    F = make_field(3)
    g = symmetric_group(3)
    perm = permutation_rep(g, young_subgroup(g, 2), F)
    e = trivial_subgroup(g)
    r = restrict(perm, e)
    assert hom_dim(trivial_rep(e, F), r) == 3
    assert restrict(perm, young_subgroup(g, 2)).dim == 3


def test_induce_examples():
    F = make_field(2)
    g = symmetric_group(3)
    ind = induce(trivial_rep(young_subgroup(g, 2), F), g)
    assert ind.dim == 3
    g3 = general_linear_group(2, make_field(3))
    u3 = unitriangular_subgroup(g3)
    F4 = make_field(2, 2)
    assert induce(gelfand_graev_character(u3, root_of_unity(F4, 3)), g3).dim == 16
    with pytest.raises(SizeCapExceeded):
        induce(trivial_rep(u3, F4), g3, max_dim=10)


def test_coinduce_examples():
    F = make_field(2)
    g = symmetric_group(3)
    eta = trivial_rep(young_subgroup(g, 2), F)
    c, i = coinduce(eta, g), induce(eta, g)
    assert c.provenance["coinduced"] and not i.provenance["coinduced"]
    assert hom_dim(c, i) == hom_dim(i, i)
    hs = hom_space(c, i)
    assert any(t.is_invertible() for t in hs.basis)


def test_dual_tensor_sum_regular_examples():
    F = make_field(3)
    g = symmetric_group(3)
    t = trivial_rep(g, F)
    assert (dual(t).images == t.images).all()
    perm = permutation_rep(g, young_subgroup(g, 2), F)
    assert (dual(dual(perm)).images == perm.images).all()
    assert regular_rep(g, F).dim == 6
    assert tensor(perm, perm).dim == 9
    assert direct_sum(t, perm).dim == 4
    with pytest.raises(SizeCapExceeded):
        regular_rep(general_linear_group(2, make_field(5)), F)


def test_multiplicative_character():
    F = make_field(5, 2)
    g = general_linear_group(2, make_field(3))
    c = cartan_subgroup(g)
    chi = multiplicative_character(c, F, 1)
    vals = F.from_stack(chi.images).reshape(-1)
    assert sorted(F.order(int(v)) for v in vals) == sorted(c.element_order(x) for x in range(c.order))


@pytest.mark.parametrize("name,g,h,eta,rho", FIXTURES, ids=FIX_IDS)
def test_constructed_reps_are_homomorphisms(name, g, h, eta, rho):
    if rho.dim <= 6 and g.order <= 24:
        _brute_hom_homomorphism(rho)
    assert rho.check_all_pairs()
    assert eta.check_all_pairs()
    ind = induce(eta, g)
    assert ind.check_all_pairs()
    assert dual(rho).check_all_pairs()


@pytest.mark.parametrize("name,g,h,eta,rho", FIXTURES, ids=FIX_IDS)
def test_frobenius_reciprocity(name, g, h, eta, rho):
    ind = induce(eta, g)
    assert hom_dim(ind, rho) == hom_dim(eta, restrict(rho, h))
    assert hom_dim(rho, coinduce(eta, g)) == hom_dim(restrict(rho, h), eta)


@pytest.mark.parametrize("name,g,h,eta,rho", FIXTURES, ids=FIX_IDS)
def test_mackey_dimension(name, g, h, eta, rho):
    ind = induce(eta, g)
    assert restrict(ind, h).dim == mackey_dimension(eta, g)
    # independent count: sum over double cosets of |HsH| / |H|
    dc = double_cosets(g, h)
    assert mackey_dimension(eta, g) == sum(s // h.order for s in dc.sizes) * eta.dim


@pytest.mark.parametrize("g,F", [(symmetric_group(3), make_field(2)), (symmetric_group(3), make_field(5)),
                                 (quaternion_group(), make_field(3))], ids=["S3/GF2", "S3/GF5", "Q8/GF3"])
def test_dual_induce_commute_on_irreducibles(g, F):
    h = trivial_subgroup(g) if g.order == 8 else young_subgroup(g, 2)
    eta = trivial_rep(h, F) if g.order == 8 else sign_rep(h, F)
    a, b = dual(induce(eta, g)), induce(dual(eta), g)
    for pi in irreducible_inventory(g, F):
        assert hom_dim(pi, a) == hom_dim(pi, b)
        assert hom_dim(a, pi) == hom_dim(b, pi)


@settings(max_examples=30)
@given(st.sampled_from(range(len(FIXTURES))), st.integers(0, 10_000), st.integers(0, 10_000))
def test_images_multiply(i, a, b):
    _, g, h, eta, rho = FIXTURES[i]
    a, b = a % g.order, b % g.order
    F = rho.field
    lhs = F.smatmul(rho.images[:, a], rho.images[:, b])
    assert np.array_equal(lhs, rho.images[:, g.mul(a, b)])


def test_natural_rep_is_identity_map():
    g = general_linear_group(2, make_field(3))
    nat = natural_rep(g)
    for x in range(g.order):
        assert nat.image(x).tolist() == np.array(g.labels[x]).reshape(2, 2).tolist()
