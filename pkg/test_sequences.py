"""Inflation-restriction-transgression on small central extensions"""
import numpy as np
import pytest

from rotabaxter.cohomology import Cocycle4, TrivialRRBModule, coefficient_module, h2_rrb, product_module, trivial_module
from rotabaxter.errors import SearchBoundExceeded
from rotabaxter.extensions import extension_from_cocycle
from rotabaxter.library import rrb_catalog
from rotabaxter.rrb import hom_rrb, verify_rrb_hom
from rotabaxter.sequences import (
    five_term_exactness,
    hom_sum,
    inf_res_tra,
    is_zero_hom,
    module_homs,
    pull_cocycle,
    push_cocycle,
    transgression_table,
)


def _cyclic_cocycle():
    tau1 = np.zeros((2, 2, 1), dtype=np.int64)
    tau2 = np.zeros((2, 2, 1), dtype=np.int64)
    tau1[1, 1, 0] = tau2[1, 1, 0] = 1
    return Cocycle4(tau1, tau2, np.zeros((2, 2, 1), dtype=np.int64), np.zeros((2, 1), dtype=np.int64))


@pytest.fixture
def extensions(trivial_z2):
    module = coefficient_module(2)
    return {
        "split": extension_from_cocycle(trivial_z2, module, h2_rrb(trivial_z2, module).zero()),
        "cyclic": extension_from_cocycle(trivial_z2, module, _cyclic_cocycle()),
    }


@pytest.mark.parametrize("which", ["split", "cyclic"])
def test_five_term_sequence_is_exact(extensions, which):
    report = five_term_exactness(extensions[which], coefficient_module(2), seed=7)
    assert report.ok
    assert [c.position for c in report.checks] == ["Hom(A,M)", "Hom(H,M)", "Hom(K,M)", "H2(A,M)"]
    assert report.as_dict()["sizes"]["hom_K"] == 2


def test_transgression_of_cyclic_extension(extensions):
    table = transgression_table(extensions["cyclic"], coefficient_module(2))
    assert len(table) == 2
    # the identity K -> M transgresses to the class of the extension
    assert sum(1 for x in table.values() if not x.is_zero) == 1


def test_transgression_of_split_extension_vanishes(extensions):
    table = transgression_table(extensions["split"], coefficient_module(2))
    assert all(x.is_zero for x in table.values())


def test_hom_sum_doubles_to_zero(extensions):
    maps = inf_res_tra(extensions["cyclic"], coefficient_module(2))
    for f in maps.hom_H:
        assert is_zero_hom(hom_sum(f, f, maps.M))


def test_inflation_kills_restriction(extensions):
    maps = inf_res_tra(extensions["split"], coefficient_module(2))
    for f in maps.hom_A:
        assert is_zero_hom(maps.res(maps.inf(f)))


def test_pull_and_push_preserve_zero(extensions):
    ext = extensions["cyclic"]
    module = coefficient_module(2)
    zero = h2_rrb(ext.base, module).zero()
    pulled = pull_cocycle(zero, ext.proj)
    assert not np.asarray(pulled.tau1).any()
    maps = inf_res_tra(ext, module)
    identity = next(g for g in maps.hom_K if not is_zero_hom(g))
    pushed = push_cocycle(ext.cocycle, ext.module, module, identity)
    assert pushed == ext.cocycle


@pytest.mark.parametrize("source, target", [
    (coefficient_module(2), coefficient_module(4)),
    (coefficient_module(4), coefficient_module(2)),
    (TrivialRRBModule((4,), (2,), [[1]]), coefficient_module(2)),
    (TrivialRRBModule((2,), (4,), [[2]]), coefficient_module(4)),
    (product_module([coefficient_module(2), coefficient_module(2)]), coefficient_module(2)),
    (trivial_module(), coefficient_module(3)),
])
def test_module_homs_agree_with_search(source, target):
    X, Y = source.as_rrb(), target.as_rrb()
    direct = module_homs(source, target, rrbs=(X, Y))
    assert [f.key for f in direct] == [f.key for f in hom_rrb(X, Y)]
    for f in direct:
        verify_rrb_hom(X, Y, f.psi, f.eta)


def test_module_homs_past_the_search_bound():
    # 32 elements in K: too many for enumerate_homs, 2^10 generator assignments here
    source = product_module([coefficient_module(2)] * 5)
    homs = module_homs(source, coefficient_module(4))
    assert len(homs) == 32
    assert len({f.key for f in homs}) == 32
    assert all(set(f.psi.image) <= {0, 2} and f.eta.image == f.psi.image for f in homs)
    with pytest.raises(SearchBoundExceeded):
        module_homs(source, coefficient_module(4), bound=512)


@pytest.mark.slow
def test_five_term_sequence_over_catalog_extensions(workspace_config):
    module = coefficient_module(2)
    kinds = {"split": 0, "non-split": 0}
    for rrb in rrb_catalog(max_product=8):
        if rrb.H.order > 4 or rrb.G.order > 4:
            continue
        h = h2_rrb(rrb, module)
        for c in [h.zero()] + h.basis[:2]:
            ext = extension_from_cocycle(rrb, module, c)
            assert five_term_exactness(ext, module, seed=workspace_config.seed).ok, rrb.name
            kinds["split" if h.classify(c).is_zero else "non-split"] += 1
    assert sum(kinds.values()) >= 20
    assert kinds["split"] and kinds["non-split"], kinds
