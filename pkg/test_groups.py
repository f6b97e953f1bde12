"""Finite groups, homomorphisms, subgroups and quotients"""
from math import gcd

import pytest
from hypothesis import given
from hypothesis import strategies as st

from rotabaxter.errors import MissingInverse, NoIdentityAtZero, NotAssociative, NotNormal, SearchBoundExceeded
from rotabaxter.groups import (
    GroupHom,
    Subgroup,
    automorphism_group,
    automorphisms,
    build_group,
    center_of,
    commutator_subgroup,
    cyclic,
    dihedral,
    direct_product,
    enumerate_homs,
    find_isomorphism,
    is_isomorphic,
    quaternion,
    quotient_group,
    subgroup_generated,
    symmetric,
)


def test_cyclic_invariants():
    Z = cyclic(4)
    assert Z.order == 4
    assert Z.exponent == 4
    assert Z.is_abelian
    assert sorted(Z.element_orders) == [1, 2, 4, 4]


def test_s3_structure(s3):
    assert not s3.is_abelian
    assert commutator_subgroup(s3).order == 3
    assert center_of(s3).order == 1
    assert s3.exponent == 6


def test_klein_four_automorphisms(v4):
    assert len(automorphisms(v4)) == 6
    aut, maps = automorphism_group(v4)
    assert aut.order == 6
    assert maps[0].image == (0, 1, 2, 3)
    assert is_isomorphic(aut, symmetric(3))


def test_quotient_by_alternating_subgroup(s3):
    A3 = commutator_subgroup(s3)
    Q, proj = quotient_group(s3, A3)
    assert Q.order == 2
    assert proj.verify().is_surjective
    assert proj.kernel() == A3


def test_quotient_by_non_normal_subgroup(s3):
    # a transposition generates a non-normal subgroup of order 2
    transposition = next(x for x in s3.elements() if s3.element_order(x) == 2)
    with pytest.raises(NotNormal):
        quotient_group(s3, subgroup_generated(s3, [transposition]))


def test_build_group_failures():
    with pytest.raises(NoIdentityAtZero):
        build_group([[1, 0], [0, 1]])
    with pytest.raises(MissingInverse):
        build_group([[0, 1, 2], [1, 1, 1], [2, 1, 2]])
    with pytest.raises(NotAssociative):
        build_group([[0, 1, 2], [1, 0, 0], [2, 2, 0]])


def test_subgroup_relabeling(s3):
    A3 = commutator_subgroup(s3)
    carrier, emb = A3.to_group()
    assert carrier.order == 3
    assert emb.verify().is_injective
    assert is_isomorphic(carrier, cyclic(3))


def test_direct_product_and_builders():
    assert direct_product(cyclic(2), cyclic(3)).order == 6
    assert is_isomorphic(direct_product(cyclic(2), cyclic(3)), cyclic(6))
    assert not is_isomorphic(dihedral(4), quaternion())
    assert find_isomorphism(dihedral(3), symmetric(3)) is not None


def test_enumerate_homs_with_fixed_values():
    Z4, Z2 = cyclic(4), cyclic(2)
    homs = enumerate_homs(Z4, Z2)
    assert [h.image for h in homs] == [(0, 0, 0, 0), (0, 1, 0, 1)]
    assert enumerate_homs(Z4, Z2, fixed={1: 1}) == [homs[1]]
    assert enumerate_homs(Z4, Z2, bijective=True) == []


def test_enumerate_homs_bound():
    with pytest.raises(SearchBoundExceeded):
        enumerate_homs(cyclic(8), cyclic(2), bound=4)


def test_group_hom_inverse_and_compose(s3):
    auts = automorphisms(s3)
    f = auts[-1]
    assert f.compose(f.inverse()) == GroupHom.identity(s3)


@given(st.integers(1, 12), st.integers(1, 12))
def test_cyclic_hom_count_is_gcd(n, m):
    assert len(enumerate_homs(cyclic(n), cyclic(m))) == gcd(n, m)


@given(st.integers(2, 10))
def test_subgroup_generated_by_generator_is_whole(n):
    Z = cyclic(n)
    assert subgroup_generated(Z, [1]) == Subgroup(Z, range(n))
