"""Central extensions built from cocycles and read back through sections"""
import numpy as np
import pytest

from rotabaxter.cohomology import Cocycle4, TrivialRRBModule, coefficient_module, h2_rrb, rrb_coboundary
from rotabaxter.errors import NotInZ2, SectionInvalid
from rotabaxter.extensions import (
    Section,
    centre_formula,
    cocycle_from_extension,
    commutator_generators,
    count_extension_classes,
    extension_from_cocycle,
    extensions_equivalent,
    random_section,
)
from rotabaxter.groups import commutator_subgroup, cyclic, is_isomorphic, klein_four, subgroup_generated
from rotabaxter.library import rrb_catalog
from rotabaxter.rrb import rrb_center, rrb_commutator


def _cyclic_cocycle():
    tau1 = np.zeros((2, 2, 1), dtype=np.int64)
    tau2 = np.zeros((2, 2, 1), dtype=np.int64)
    tau1[1, 1, 0] = tau2[1, 1, 0] = 1
    return Cocycle4(tau1, tau2, np.zeros((2, 2, 1), dtype=np.int64), np.zeros((2, 1), dtype=np.int64))


@pytest.fixture
def module():
    return coefficient_module(2)


def test_split_extension(trivial_z2, module):
    ext = extension_from_cocycle(trivial_z2, module, h2_rrb(trivial_z2, module).zero())
    assert is_isomorphic(ext.total.H, klein_four())
    assert is_isomorphic(ext.total.G, klein_four())
    assert ext.K_image == (0, 1)
    assert ext.proj.psi.image == (0, 0, 1, 1)


def test_cyclic_extension(trivial_z2, module):
    ext = extension_from_cocycle(trivial_z2, module, _cyclic_cocycle())
    assert is_isomorphic(ext.total.H, cyclic(4))
    assert is_isomorphic(ext.total.G, cyclic(4))


def test_round_trip_through_canonical_section(trivial_z2, module):
    c = _cyclic_cocycle()
    ext = extension_from_cocycle(trivial_z2, module, c)
    assert cocycle_from_extension(ext) == c


@pytest.mark.parametrize("seed", [1, 2, 3, 4])
def test_class_is_independent_of_section(trivial_z2, module, seed):
    c = _cyclic_cocycle()
    ext = extension_from_cocycle(trivial_z2, module, c)
    other = cocycle_from_extension(ext, random_section(ext, seed))
    assert h2_rrb(trivial_z2, module).cohomologous(other, c)


def test_invalid_section(trivial_z2, module):
    ext = extension_from_cocycle(trivial_z2, module, _cyclic_cocycle())
    with pytest.raises(SectionInvalid):
        cocycle_from_extension(ext, Section((0, 0), (0, 2)))
    with pytest.raises(SectionInvalid):
        cocycle_from_extension(ext, Section((1, 2), (0, 2)))


def test_non_cocycle_has_no_extension(trivial_z2, module):
    c = _cyclic_cocycle()
    c.tau2[1, 1, 0] = 0
    with pytest.raises(NotInZ2):
        extension_from_cocycle(trivial_z2, module, c)


@pytest.mark.parametrize("which", ["zero", "cyclic"])
def test_centre_formula_matches_centre(trivial_z2, module, which):
    c = h2_rrb(trivial_z2, module).zero() if which == "zero" else _cyclic_cocycle()
    ext = extension_from_cocycle(trivial_z2, module, c)
    assert centre_formula(trivial_z2, module, c) == rrb_center(ext.total)


def test_commutator_generators_span_commutator(trivial_z2, module):
    c = _cyclic_cocycle()
    ext = extension_from_cocycle(trivial_z2, module, c)
    gens = commutator_generators(trivial_z2, module, c)
    assert subgroup_generated(ext.total.H, gens.H_generators) == rrb_commutator(ext.total).K
    assert subgroup_generated(ext.total.G, gens.G_generators) == commutator_subgroup(ext.total.G)


def test_cohomologous_cocycles_give_equivalent_extensions(trivial_z2, module):
    c = _cyclic_cocycle()
    b = rrb_coboundary(trivial_z2, module, [[0], [1]], [[0], [0]])
    shifted = Cocycle4(*(np.asarray(getattr(c, f)) + np.asarray(getattr(b, f)) for f in Cocycle4.FIELDS))
    e1 = extension_from_cocycle(trivial_z2, module, c)
    e2 = extension_from_cocycle(trivial_z2, module, shifted)
    assert extensions_equivalent(e1, e2) is not None
    split = extension_from_cocycle(trivial_z2, module, h2_rrb(trivial_z2, module).zero())
    assert extensions_equivalent(split, e1) is None


def test_extension_classes_count_h2(trivial_z2, z2_over_trivial, module):
    assert count_extension_classes(trivial_z2, module) == h2_rrb(trivial_z2, module).order
    assert count_extension_classes(z2_over_trivial, module) == h2_rrb(z2_over_trivial, module).order


@pytest.mark.parametrize("S", [1, 0], ids=["identity", "zero"])
def test_extension_classes_count_h2_over_order_two_bases(S):
    module = TrivialRRBModule((2,), (2,), [[S]])
    bases = [r for r in rrb_catalog(max_product=4) if r.H.order == r.G.order == 2]
    assert len(bases) == 2
    for rrb in bases:
        assert count_extension_classes(rrb, module) == h2_rrb(rrb, module).order, rrb.name
