"""Smith normal form, congruence systems and finite abelian group structure"""
import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from rotabaxter.errors import DimensionMismatch, NoSolution, NotInSubgroup
from rotabaxter.linalg import (
    kernel_mod,
    lcm,
    presentation_from_orders,
    smith_normal_form,
    solve_mod,
    subgroup_structure,
    subquotient_structure,
    xgcd,
)

small_matrices = st.integers(1, 4).flatmap(
    lambda r: st.integers(1, 4).flatmap(
        lambda c: st.lists(
            st.lists(st.integers(-12, 12), min_size=c, max_size=c), min_size=r, max_size=r
        )
    )
)


def test_smith_of_coprime_diagonal():
    form = smith_normal_form([[2, 0], [0, 3]], check=True)
    assert form.diagonal == [1, 6]
    assert form.rank == 2


def test_smith_rejects_vectors():
    with pytest.raises(DimensionMismatch):
        smith_normal_form([1, 2, 3])


@given(small_matrices)
def test_smith_postcondition(rows):
    M = np.array(rows, dtype=object)
    form = smith_normal_form(M, check=True)
    assert np.array_equal(form.U.dot(M).dot(form.V), form.D)
    diag = [d for d in form.diagonal if d]
    assert all(d > 0 for d in diag)
    assert all(b % a == 0 for a, b in zip(diag, diag[1:]))


def test_solve_mod():
    x = solve_mod([[2]], [2], [4])
    assert (2 * x[0] - 2) % 4 == 0
    with pytest.raises(NoSolution):
        solve_mod([[2]], [1], [4])
    with pytest.raises(DimensionMismatch):
        solve_mod([[1, 1]], [1, 2], [2])


def test_solve_mod_exact_rows():
    x = solve_mod([[3, 5]], [1], [0])
    assert 3 * x[0] + 5 * x[1] == 1


def test_kernel_mod_diagonal_pair():
    gens = kernel_mod([{0: 1, 1: 1}], [2], [2, 2])
    presentation, _ = subgroup_structure([gens[:, j].tolist() for j in range(gens.shape[1])], [2, 2])
    assert presentation.order == 2
    for j in range(gens.shape[1]):
        assert (gens[0, j] + gens[1, j]) % 2 == 0


def test_kernel_mod_mixed_moduli():
    # x in Z4, y in Z2 with 2x + y = 0 (mod 2): y must vanish
    gens = kernel_mod([{0: 2, 1: 1}], [2], [4, 2])
    assert all(gens[1, j] % 2 == 0 for j in range(gens.shape[1]))
    presentation, _ = subgroup_structure([gens[:, j].tolist() for j in range(gens.shape[1])], [4, 2])
    assert presentation.order == 4


def test_kernel_mod_beyond_machine_integers():
    big = 2 ** 70
    gens = kernel_mod([{0: 2 ** 69, 1: 1}], [big], [big, big])
    assert gens.dtype == object
    for j in range(gens.shape[1]):
        x, y = gens[0, j], gens[1, j]
        assert isinstance(x, int) and isinstance(y, int)
        assert (2 ** 69 * x + y) % big == 0
    presentation, _ = subgroup_structure([gens[:, j].tolist() for j in range(gens.shape[1])], [big, big])
    assert presentation.order == big


def test_invariant_factors():
    assert presentation_from_orders([2, 3]).factors == (6,)
    assert presentation_from_orders([2, 2]).factors == (2, 2)
    p = presentation_from_orders([4, 6])
    assert p.factors == (2, 12)
    assert p.elementary_divisors() == [2, 3, 4]
    assert p.describe() == "Z2 x Z12"
    assert presentation_from_orders([1]).describe() == "1"
    assert presentation_from_orders([]).is_trivial


def test_abelian_elements():
    p = presentation_from_orders([2, 4])
    assert p.order == 8
    assert p.exponent == 4
    x = p.element([1, 1])
    assert x.order == 4
    assert (x * 4).is_zero
    assert (x - x) == p.zero()
    assert len(list(p.elements())) == 8


def test_subquotient_and_coordinates():
    presentation, solver = subquotient_structure([[1]], [[2]], [4])
    assert presentation.factors == (2,)
    assert solver.coordinates([1]).coords == (1,)
    assert solver.coordinates([2]).is_zero
    lifted = solver.lift(presentation.unit(0))
    assert solver.coordinates(lifted) == presentation.unit(0)


def test_subquotient_rejects_outside_vectors():
    with pytest.raises(NotInSubgroup):
        subquotient_structure([[2]], [[1]], [4])


@given(st.integers(-200, 200), st.integers(-200, 200))
def test_xgcd(a, b):
    g, s, t = xgcd(a, b)
    assert s * a + t * b == g
    assert g >= 0


def test_lcm():
    assert lcm(4, 6) == 12
    assert lcm() == 1


def test_direct_sum_regroups_factors():
    total = presentation_from_orders([2]).direct_sum(presentation_from_orders([6]))
    assert total.factors == (2, 6)
    assert presentation_from_orders([3]).direct_sum(presentation_from_orders([4])).describe() == "Z12"
