"""Relative Rota-Baxter groups: axioms, substructures, homomorphisms, quotients"""
from math import gcd

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from models import load_rrb
from rotabaxter.errors import (
    CompatibilityFails,
    NotIdeal,
    NotSubgroup,
    PhiNotAction,
    PhiNotAutomorphism,
    RBIdentityFails,
    SearchBoundExceeded,
    ShapeMismatch,
)
from rotabaxter.groups import GroupHom, cyclic, is_isomorphic, trivial_group
from rotabaxter.rrb import (
    RRBHom,
    RRBSubgroup,
    coefficient_rrb,
    conjugation_action,
    enumerate_relative_rb_operators,
    hom_image,
    hom_kernel,
    hom_rrb,
    iota,
    is_ideal,
    rota_baxter_group,
    rrb_center,
    rrb_commutator,
    rrb_direct_product,
    rrb_quotient,
    trivial_action,
    trivial_rrb,
    verify_rrb,
    verify_rrb_hom,
)


def test_rb_identity_witness(z3):
    with pytest.raises(RBIdentityFails) as info:
        verify_rrb(z3, z3, trivial_action(z3, z3), [0, 1, 0])
    assert info.value.witness == {"h1": 1, "h2": 1}


def test_phi_failures(z3):
    with pytest.raises(PhiNotAutomorphism):
        verify_rrb(z3, z3, [[0, 1, 2], [0, 0, 0], [0, 1, 2]], [0, 0, 0])
    with pytest.raises(ShapeMismatch):
        verify_rrb(z3, z3, trivial_action(z3, z3), [0, 0])


def test_bad_phi_sample_is_not_an_action(samples):
    with pytest.raises(PhiNotAction) as info:
        load_rrb(samples / "bad_phi.json")
    assert info.value.exit_code == 2


def test_rota_baxter_inverse_operator(s3):
    rrb = rota_baxter_group(s3, s3.inv)
    circle, R = rrb.descendent
    # h1 ∘ h2 = h2 h1: the opposite group
    assert circle.mul(1, 2) == s3.mul(2, 1)
    assert is_isomorphic(circle, s3)
    assert R.verify().is_bijective
    assert rrb.is_bijective


def test_operator_search_on_s3(s3):
    found = enumerate_relative_rb_operators(s3, s3, conjugation_action(s3), bound=6)
    operators = [r.R_list for r in found]
    assert [0] * 6 in operators
    assert list(s3.inv) in operators
    assert operators == sorted(operators)


def test_operator_search_bound():
    Z = cyclic(9)
    with pytest.raises(SearchBoundExceeded):
        enumerate_relative_rb_operators(Z, Z, trivial_action(Z, Z), bound=8)


@given(st.integers(1, 8), st.integers(1, 8))
def test_trivial_action_operators_are_homomorphisms(n, m):
    H, G = cyclic(n), cyclic(m)
    assert len(enumerate_relative_rb_operators(H, G, trivial_action(H, G))) == gcd(n, m)


def test_center_and_commutator(trivial_z2, s3):
    center = rrb_center(trivial_z2)
    assert center.K.order == 2 and center.L.order == 2
    commutator = rrb_commutator(trivial_rrb(s3))
    assert commutator.K.order == 3
    assert commutator.L.order == 6
    assert is_ideal(trivial_rrb(s3), commutator)


def test_conjugation_displacements_reach_commutator(s3):
    rrb = rota_baxter_group(s3, [0] * 6)
    # center is trivial: phi is faithful and only the identity is fixed
    assert rrb_center(rrb).K.order == 1
    assert rrb_commutator(rrb).K.order == 3


def test_non_normal_subgroup_is_not_an_ideal(s3):
    rrb = trivial_rrb(s3)
    transposition = next(x for x in s3.elements() if s3.element_order(x) == 2)
    sub = RRBSubgroup.from_elements(rrb, [0, transposition], [0, transposition])
    check = is_ideal(rrb, sub)
    assert not check
    assert check.condition == "I0"
    with pytest.raises(NotIdeal):
        rrb_quotient(rrb, sub)


def test_subgroup_requires_operator_image():
    rrb = trivial_rrb(cyclic(4))
    with pytest.raises(NotSubgroup):
        RRBSubgroup.from_elements(rrb, [0, 2], [0])


def test_quotient_of_trivial_z4():
    rrb = trivial_rrb(cyclic(4))
    quotient, projection = rrb_quotient(rrb, RRBSubgroup.from_elements(rrb, [0, 2], [0, 2]))
    assert quotient.H.order == 2 and quotient.G.order == 2
    assert projection.psi.image == (0, 1, 0, 1)
    assert quotient.R_list == [0, 1]


def test_iota_truncates_to_image():
    Z4 = cyclic(4)
    rrb = trivial_rrb(Z4, Z4, [0, 2, 0, 2])
    truncated = iota(rrb)
    assert truncated.H.order == 4
    assert truncated.G.order == 2
    assert truncated.name.startswith("I")


def test_iota_of_constant_operator(z2_over_trivial):
    truncated = iota(z2_over_trivial)
    assert truncated.G.order == 1


def test_homs_between_trivial_pairs(trivial_z2):
    homs = hom_rrb(trivial_z2, trivial_z2)
    assert len(homs) == 2
    assert RRBHom.identity(trivial_z2) in homs
    for f in homs:
        assert f.psi.image == f.eta.image


def test_incompatible_pair_rejected(trivial_z2, z2):
    with pytest.raises(CompatibilityFails) as info:
        verify_rrb_hom(trivial_z2, trivial_z2, GroupHom.identity(z2), GroupHom.trivial(z2, z2))
    assert info.value.witness["h"] == 1


def test_direct_product_is_valid(trivial_z2, z2_over_trivial):
    product = rrb_direct_product(trivial_z2, z2_over_trivial)
    checked = verify_rrb(product.H, product.G, product.phi, product.R)
    assert checked == product
    assert product.H.order == 4 and product.G.order == 2


def test_equality_ignores_name(z2):
    a = trivial_rrb(z2)
    b = verify_rrb(z2, z2, trivial_action(z2, z2), [0, 1], "renamed")
    assert a == b and hash(a) == hash(b)
    assert not np.array_equal(a.R, trivial_rrb(z2, z2).R)


def test_trivial_group_pair():
    one = trivial_group()
    rrb = trivial_rrb(one)
    assert rrb.is_bijective
    assert rrb_center(rrb).K.order == 1


def test_coefficient_pair():
    C = coefficient_rrb(4)
    assert C.is_bijective
    assert rrb_center(C).K.order == 4
    assert rrb_commutator(C).K.order == 1


@pytest.mark.parametrize("which", ["z4_to_c2", "z4_to_z4", "s3_to_c2", "rb_s3"])
def test_kernels_and_images_of_homs(s3, which):
    X, Y = {
        "z4_to_c2": (trivial_rrb(cyclic(4)), coefficient_rrb(2)),
        "z4_to_z4": (trivial_rrb(cyclic(4)), trivial_rrb(cyclic(4))),
        "s3_to_c2": (trivial_rrb(s3), coefficient_rrb(2)),
        "rb_s3": (rota_baxter_group(s3, s3.inv), rota_baxter_group(s3, s3.inv)),
    }[which]
    homs = hom_rrb(X, Y)
    assert homs
    for f in homs:
        kernel, image = hom_kernel(f), hom_image(f)
        assert is_ideal(X, kernel)
        assert kernel.K.order * image.K.order == X.H.order
        assert kernel.L.order * image.L.order == X.G.order
        quotient, projection = rrb_quotient(X, kernel)
        assert (quotient.H.order, quotient.G.order) == (image.K.order, image.L.order)
        assert hom_kernel(projection) == kernel


def test_composed_endomorphisms_stay_homs():
    Z4 = trivial_rrb(cyclic(4))
    homs = hom_rrb(Z4, Z4)
    assert len(homs) == 4
    for f in homs:
        for g in homs:
            h = g.compose(f)
            assert verify_rrb_hom(Z4, Z4, h.psi, h.eta) == h
            assert set(hom_kernel(f).K) <= set(hom_kernel(h).K)
            assert set(hom_image(h).K) <= set(hom_image(g).K)
