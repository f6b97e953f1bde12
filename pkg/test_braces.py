"""Skew braces induced by RRB groups and their Yang-Baxter maps"""
import numpy as np
import pytest

from rotabaxter.braces import (
    YBMap,
    brace_hom_check,
    brace_isoclinic,
    brace_quotient,
    build_brace,
    induced_brace,
    trivial_brace,
    verify_brace_isoclinism,
    verify_ybe,
    ybe_map,
)
from rotabaxter.errors import BraidFails, CompatibilityFails, DegenerateComponent
from rotabaxter.groups import FiniteGroup, commutator_subgroup, cyclic, is_isomorphic
from rotabaxter.rrb import rota_baxter_group, trivial_rrb


def test_identity_operator_gives_trivial_brace(s3):
    brace = induced_brace(trivial_rrb(s3))
    assert brace.is_trivial
    assert brace.annihilator.order == 1
    assert brace.commutator.order == 3
    r = ybe_map(brace)
    assert r.n == 6
    # r(x, y) = (y, y^-1 x y)
    assert r(1, 2) == (2, s3.product(s3.inverse(2), 1, 2))


def test_trivial_abelian_brace_is_involutive():
    brace = trivial_brace(cyclic(4))
    r = ybe_map(brace)
    assert r.is_involutive
    assert r(1, 3) == (3, 1)
    assert brace.annihilator.order == 4
    quotient, _ = brace.central_quotient
    assert quotient.order == 1


def test_opposite_brace_from_inverse_operator(s3):
    brace = induced_brace(rota_baxter_group(s3, s3.inv))
    assert not brace.is_trivial
    assert is_isomorphic(brace.circle, s3)
    ybe_map(brace)


def test_build_brace_rejects_relabeled_circle():
    f = [0, 2, 1, 3]
    Z4 = cyclic(4)
    table = [[f[(f[a] + f[b]) % 4] for b in range(4)] for a in range(4)]
    circle = FiniteGroup(np.array(table), [f[(-f[a]) % 4] for a in range(4)], "Z4'")
    with pytest.raises(CompatibilityFails):
        build_brace(Z4, circle)


def test_degenerate_map():
    zeros = np.zeros((2, 2), dtype=np.int64)
    with pytest.raises(DegenerateComponent):
        verify_ybe(YBMap(2, zeros, zeros))


def test_braid_failure_witness():
    x, y = np.meshgrid(np.arange(2), np.arange(2), indexing="ij")
    r = YBMap(2, (x + y) % 2, x)
    with pytest.raises(BraidFails) as info:
        verify_ybe(r)
    assert info.value.witness == {"triple": [1, 0, 0]}


def test_brace_hom_check(s3):
    brace = trivial_brace(s3)
    assert brace_hom_check(brace, brace, list(range(6)))
    assert not brace_hom_check(brace, brace, [0] * 5 + [1])


def test_abelian_trivial_braces_are_isoclinic():
    b1, b2 = trivial_brace(cyclic(2)), trivial_brace(cyclic(4))
    result = brace_isoclinic(b1, b2)
    assert result
    verify_brace_isoclinism(b1, b2, result.xi1, result.xi2)


def test_commutator_order_separates(s3):
    result = brace_isoclinic(trivial_brace(cyclic(4)), trivial_brace(s3))
    assert not result
    assert result.status == "not_isoclinic"
    assert "order" in result.reason


def test_quotient_of_trivial_brace(s3):
    brace = trivial_brace(s3)
    Q, proj = brace_quotient(brace, commutator_subgroup(s3))
    assert Q.order == 2
    assert Q.is_trivial
    assert brace_hom_check(brace, Q, proj.image)
    np.testing.assert_array_equal(Q.dot.table, cyclic(2).table)
