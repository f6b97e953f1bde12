"""Schur multipliers, minimized representatives and Schur covers"""
import numpy as np
import pytest

from rotabaxter.cohomology import brute_force_group_multiplier_order, brute_force_multiplier_order, coefficient_module, h2_rrb
from rotabaxter.errors import HypothesisFails, ModuleMismatch
from rotabaxter.extensions import extension_from_cocycle
from rotabaxter.groups import Subgroup, cyclic, klein_four, symmetric
from rotabaxter.rrb import RRBSubgroup, rrb_commutator, trivial_rrb, whole
from rotabaxter.schur import (
    alternative_generators,
    build_schur_cover,
    converse_character,
    covers_of,
    group_schur_multiplier,
    is_schur_cover,
    minimize_representative,
    multiplier_class,
    reduce_representative,
    restricts_trivially,
    schur_multiplier,
)


def test_group_multipliers():
    assert group_schur_multiplier(klein_four()).factors == [2]
    assert group_schur_multiplier(cyclic(4)).order == 1
    assert group_schur_multiplier(symmetric(3)).order == 1
    assert group_schur_multiplier(cyclic(2)).order == brute_force_group_multiplier_order(cyclic(2))


def test_multiplier_of_identity_pair(trivial_z2):
    M = schur_multiplier(trivial_z2)
    # the rho(1,1) class of order two survives enlargement, tau1(1,1) does not
    assert M.factors == [2]
    assert M.exponent_divides
    assert M.order == brute_force_multiplier_order(trivial_z2)
    assert M.as_dict()["moduli"] == [4, 4]


def test_multiplier_over_trivial_g(z2_over_trivial):
    M = schur_multiplier(z2_over_trivial)
    assert M.order == 1
    assert M.order == brute_force_multiplier_order(z2_over_trivial)


def test_representatives_classify_back(trivial_z2):
    M = schur_multiplier(trivial_z2)
    for i in range(M.structure.rank):
        unit = M.structure.unit(i)
        assert multiplier_class(M, M.representative(unit)) == unit


def test_minimized_representative_takes_order_n_values(trivial_z2):
    M = schur_multiplier(trivial_z2)
    unit = M.structure.unit(0)
    rep = minimize_representative(M, unit)
    q = M.modulus // unit.order
    for table in rep.tables().values():
        assert not (np.asarray(table) % q).any()
    reduced = reduce_representative(rep, q, unit.order)
    assert h2_rrb(trivial_z2, coefficient_module(unit.order)).is_cocycle(reduced)


def test_cover_of_identity_pair(trivial_z2):
    result = build_schur_cover(trivial_z2)
    assert result.is_cover
    assert result.as_dict()["H_order"] == 4
    assert result.ext.module.K == (2,)
    assert len(set(result.tra.values())) == result.multiplier.order


def test_cover_with_trivial_multiplier(z2_over_trivial):
    result = build_schur_cover(z2_over_trivial)
    assert result.is_cover
    assert result.ext.total.H.order == 2


def test_split_extension_is_not_a_cover(trivial_z2):
    module = coefficient_module(2)
    ext = extension_from_cocycle(trivial_z2, module, h2_rrb(trivial_z2, module).zero())
    result = is_schur_cover(ext)
    assert not result.is_cover
    assert not result.checks.containment


def test_cover_needs_matching_module(z2_over_trivial):
    module = coefficient_module(2)
    ext = extension_from_cocycle(z2_over_trivial, module, h2_rrb(z2_over_trivial, module).zero())
    with pytest.raises(ModuleMismatch):
        is_schur_cover(ext)


def test_single_factor_has_no_alternative(trivial_z2):
    assert alternative_generators(schur_multiplier(trivial_z2)) is None
    assert len(covers_of(trivial_z2)) == 1


def test_characters_detect_commutator(s3):
    A = trivial_rrb(s3)
    commutator = rrb_commutator(A).K
    inner = RRBSubgroup(A, commutator, Subgroup(s3, commutator.elements))
    assert restricts_trivially(A, inner)
    assert converse_character(A, inner) is None
    assert not restricts_trivially(A, whole(A))
    f = converse_character(A, whole(A))
    assert any(f.psi(k) for k in s3.elements())


def test_character_hypotheses(s3, z2_over_trivial):
    A = trivial_rrb(s3)
    with pytest.raises(HypothesisFails):
        restricts_trivially(A, RRBSubgroup.from_elements(A, [0], list(range(6))))
    with pytest.raises(HypothesisFails):
        converse_character(z2_over_trivial, whole(z2_over_trivial))


def test_cover_of_klein_identity_pair(v4):
    A = trivial_rrb(v4)
    result = build_schur_cover(A)
    assert result.multiplier.factors == [2, 2, 2, 2, 2]
    assert result.is_cover
    assert result.ext.total.H.order == 4 * 32
    assert len(set(result.tra.values())) == 32
