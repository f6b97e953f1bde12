"""Second cohomology of groups, skew braces and RRB groups with trivial coefficients"""
import itertools

import numpy as np
import pytest

from rotabaxter.braces import induced_brace, trivial_brace
from rotabaxter.cohomology import (
    Cocycle4,
    RRBCocycleTheory,
    SLBCocycle,
    TrivialRRBModule,
    brute_force_h2_group_order,
    brute_force_h2_rrb_order,
    brute_force_h2_slb_order,
    coefficient_module,
    decode,
    encode,
    h2_group,
    h2_rrb,
    h2_slb,
    is_rrb_cocycle,
    is_slb_cocycle,
    product_module,
    rrb_coboundary,
    rrbc_failure,
    trivial_module,
)
from rotabaxter.errors import ModuleMismatch, NotInZ2, NotNormalized, SearchBoundExceeded, ShapeMismatch
from rotabaxter.groups import cyclic
from rotabaxter.library import rrb_catalog


def _cocycle(m, n, dK=1, dL=1, **values):
    c = {
        "tau1": np.zeros((m, m, dK), dtype=np.int64),
        "tau2": np.zeros((n, n, dL), dtype=np.int64),
        "rho": np.zeros((m, n, dK), dtype=np.int64),
        "chi": np.zeros((m, dL), dtype=np.int64),
    }
    for name, entries in values.items():
        for index, value in entries.items():
            c[name][index] = value
    return Cocycle4(**c)


def test_group_h2_small_cases(z2, z3, v4):
    assert h2_group(z2, 2).order == 2
    assert h2_group(z3, 2).order == 1
    h = h2_group(v4, 2)
    assert h.structure.factors == (2, 2, 2)
    assert h.order == brute_force_h2_group_order(v4, 2)


def test_group_h2_accepts_module(z2):
    assert h2_group(z2, coefficient_module(2)).order == h2_group(z2, (2,)).order


def test_slb_h2_matches_oracle(z2):
    brace = trivial_brace(z2)
    assert h2_slb(brace, 2).order == brute_force_h2_slb_order(brace, 2)


def test_rrb_h2_of_trivial_z2(trivial_z2):
    module = coefficient_module(2)
    h = h2_rrb(trivial_z2, module)
    # RRBC3 ties tau2(1,1) to tau1(1,1) + rho(1,1); chi is a coboundary
    assert h.order == 4
    assert h.order == brute_force_h2_rrb_order(trivial_z2, module)


def test_rrb_h2_over_trivial_g(z2_over_trivial):
    module = coefficient_module(2)
    assert h2_rrb(z2_over_trivial, module).order == brute_force_h2_rrb_order(z2_over_trivial, module)


def test_classify_and_lift(trivial_z2):
    h = h2_rrb(trivial_z2, coefficient_module(2))
    for element in h.elements():
        representative = h.lift(element)
        assert h.is_cocycle(representative)
        assert h.classify(representative) == element
    assert h.classify(h.zero()).is_zero


def test_coboundaries_classify_to_zero(trivial_z2):
    module = coefficient_module(2)
    c = rrb_coboundary(trivial_z2, module, [[0], [1]], [[0], [0]])
    assert c.chi[1, 0] == 1
    h = h2_rrb(trivial_z2, module)
    assert h.classify(c).is_zero
    assert h.cohomologous(c, h.zero())


def test_coboundary_must_be_normalized(trivial_z2):
    with pytest.raises(NotNormalized):
        rrb_coboundary(trivial_z2, coefficient_module(2), [[1], [0]], [[0], [0]])


def test_non_cocycle_is_named(trivial_z2):
    module = coefficient_module(2)
    c = _cocycle(2, 2, tau2={(1, 1, 0): 1})
    assert not is_rrb_cocycle(trivial_z2, module, c)
    assert rrbc_failure(trivial_z2, module, c)[0] == "RRBC3"
    with pytest.raises(NotInZ2) as info:
        h2_rrb(trivial_z2, module).classify(c)
    assert info.value.witness["condition"] == "RRBC3"


def test_cocycle_checks_agree_with_extension(trivial_z2):
    module = coefficient_module(2)
    c = _cocycle(2, 2, tau1={(1, 1, 0): 1}, tau2={(1, 1, 0): 1})
    assert is_rrb_cocycle(trivial_z2, module, c)


def test_unnormalized_tables_rejected(trivial_z2):
    c = _cocycle(2, 2, chi={(0, 0): 1})
    with pytest.raises(NotNormalized):
        rrbc_failure(trivial_z2, coefficient_module(2), c)
    with pytest.raises(ShapeMismatch):
        rrbc_failure(trivial_z2, coefficient_module(2), _cocycle(3, 2))


def test_module_validation():
    with pytest.raises(ModuleMismatch):
        TrivialRRBModule([2], [3], [[1]])
    module = TrivialRRBModule([2], [4], [[2]])
    assert module.S_hom.image == (0, 2)
    product = product_module([coefficient_module(2), coefficient_module(3)])
    assert product.K == (2, 3) and product.S.tolist() == [[1, 0], [0, 1]]
    assert trivial_module().order_K == 1


def test_encode_decode_mixed_radix():
    moduli = (2, 3)
    indices = np.arange(6)
    assert np.array_equal(encode(decode(indices, moduli), moduli), indices)
    assert decode(5, moduli).tolist() == [1, 2]


def test_variable_bound(v4):
    with pytest.raises(SearchBoundExceeded):
        h2_group(v4, 2, bound=4)


def test_induced_brace_h2_matches_oracle(trivial_z2):
    brace = induced_brace(trivial_z2)
    assert brace.is_trivial
    assert h2_slb(brace, (2,)).order == brute_force_h2_slb_order(brace, (2,))


def test_slb_h2_of_cyclic_brace_matches_oracle():
    brace = trivial_brace(cyclic(3))
    assert h2_slb(brace, 3).order == brute_force_h2_slb_order(brace, 3)


def test_slb_cocycle_check_agrees_with_brace_oracle(z2):
    brace = trivial_brace(z2)
    tau = np.zeros((2, 2, 1), dtype=np.int64)
    assert is_slb_cocycle(brace, 2, SLBCocycle(tau, tau.copy()))
    tau[1, 1, 0] = 1
    # both products become Z4, the trivial brace on the extension
    assert is_slb_cocycle(brace, 2, SLBCocycle(tau, tau.copy()))


def test_linear_conditions_agree_with_extension_on_every_table(trivial_z2):
    theory = RRBCocycleTheory(trivial_z2, coefficient_module(2))
    assert theory.layout.size == 4
    cocycles = 0
    for vector in itertools.product(range(2), repeat=4):
        linear = theory.system.first_failure(list(vector)) is None
        assert linear == theory.oracle(theory.layout.unflatten(list(vector))), vector
        cocycles += linear
    # |Z²| = |H²| |B²| = 4 * 2
    assert cocycles == 8


def test_linear_conditions_agree_with_extension_over_small_catalog():
    module = coefficient_module(2)
    for rrb in rrb_catalog(max_product=4):
        theory = RRBCocycleTheory(rrb, module)
        if theory.layout.size > 10:
            continue
        for vector in itertools.product(*(range(q) for q in theory.layout.moduli)):
            linear = theory.system.first_failure(list(vector)) is None
            assert linear == theory.oracle(theory.layout.unflatten(list(vector))), (rrb.name, vector)


@pytest.mark.slow
def test_linear_conditions_agree_with_extension_on_random_tables(workspace_config):
    rng = np.random.default_rng(workspace_config.seed)
    module = coefficient_module(2)
    bases = [r for r in rrb_catalog(max_product=16) if r.H.order <= 4 and r.G.order <= 4]
    bases = [r for r in bases if RRBCocycleTheory(r, module).layout.size]
    per_base = -(-100_000 // len(bases))
    checked = 0
    for rrb in bases:
        h = h2_rrb(rrb, module)
        theory = h.theory
        moduli = np.array(theory.layout.moduli, dtype=np.int64)
        basis = np.array([theory.vector(c) for c in h.basis], dtype=np.int64).reshape(-1, len(moduli))
        B = np.asarray(h.coboundary_matrix, dtype=np.int64)
        for i in range(per_base):
            if i % 2:
                vector = rng.integers(0, moduli)
            else:
                # a cocycle: basis combination plus a coboundary
                vector = rng.integers(0, 2, len(basis)) @ basis + B @ rng.integers(0, 2, B.shape[1])
            vector = (vector % moduli).tolist()
            linear = theory.system.first_failure(vector) is None
            assert linear == theory.oracle(theory.layout.unflatten(vector)), (rrb.name, vector)
            if not i % 2:
                assert linear, (rrb.name, vector)
            checked += 1
    assert checked >= 100_000
