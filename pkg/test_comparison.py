"""Maps from RRB cohomology to brace and group cohomology"""
import numpy as np
import pytest

from rotabaxter.cohomology import Cocycle4, TrivialRRBModule, coefficient_module, h2_rrb, product_module
from rotabaxter.comparison import (
    in_kernel_pi1,
    in_kernel_pi2,
    in_kernel_pi3,
    in_kernel_pi4,
    join_cocycles,
    pi1_cochain,
    pi1_kernel_witness,
    pi_maps,
    product_coeff_iso,
    split_cocycle,
)
from rotabaxter.groups import cyclic
from rotabaxter.library import rrb_catalog
from rotabaxter.rrb import trivial_rrb


@pytest.fixture
def z2_module():
    return coefficient_module(2)


def _extension_cocycle():
    tau1 = np.zeros((2, 2, 1), dtype=np.int64)
    tau2 = np.zeros((2, 2, 1), dtype=np.int64)
    tau1[1, 1, 0] = 1
    tau2[1, 1, 0] = 1
    return Cocycle4(tau1, tau2, np.zeros((2, 2, 1), dtype=np.int64), np.zeros((2, 1), dtype=np.int64))


def test_zero_class_maps_to_zero(trivial_z2, z2_module):
    zero = h2_rrb(trivial_z2, z2_module).structure.zero()
    images = pi_maps(trivial_z2, z2_module, zero)
    assert images.pi1.is_zero and images.pi2.is_zero and images.pi3.is_zero
    assert in_kernel_pi1(trivial_z2, z2_module, zero)
    assert in_kernel_pi4(trivial_z2, z2_module, zero)


def test_cyclic_extension_is_seen_by_both_groups(trivial_z2, z2_module):
    c = _extension_cocycle()
    images = pi_maps(trivial_z2, z2_module, c)
    assert not images.pi2.is_zero
    assert not images.pi3.is_zero
    assert not in_kernel_pi2(trivial_z2, z2_module, c)
    assert not in_kernel_pi3(trivial_z2, z2_module, c)
    assert images.as_dict()["class"] == list(images.source.coords)


@pytest.mark.parametrize("rrb", [trivial_rrb(cyclic(2)), trivial_rrb(cyclic(2), cyclic(2), [0, 0]), trivial_rrb(cyclic(3))])
def test_kernel_descriptions_match_images(rrb, z2_module):
    h = h2_rrb(rrb, z2_module)
    for cls in h.elements():
        images = pi_maps(rrb, z2_module, cls)
        assert in_kernel_pi1(rrb, z2_module, cls) == images.pi1.is_zero
        assert in_kernel_pi2(rrb, z2_module, cls) == images.pi2.is_zero
        assert in_kernel_pi3(rrb, z2_module, cls) == images.pi3.is_zero
        assert in_kernel_pi4(rrb, z2_module, cls) == (images.pi2.is_zero and images.pi3.is_zero)


def test_pi1_kernel_witness_solves_the_system(trivial_z2, z2_module):
    c = h2_rrb(trivial_z2, z2_module).zero()
    theta = pi1_kernel_witness(trivial_z2, z2_module, c)
    assert theta is not None
    assert theta.shape == (2, 1)
    assert pi1_kernel_witness(trivial_z2, z2_module, _extension_cocycle()) is None


def test_pi1_cochain_shape(trivial_z2, z2_module):
    image = pi1_cochain(trivial_z2, z2_module, _extension_cocycle())
    assert image.tau.shape == (2, 2, 1)
    assert image.tau_tilde[1, 1, 0] == 1


def test_product_coefficients(trivial_z2):
    modules = [coefficient_module(2), coefficient_module(3)]
    iso = product_coeff_iso(trivial_z2, modules)
    assert iso.total.order == iso.components[0].order * iso.components[1].order
    assert iso.product == product_module(modules)


def test_split_and_join_are_inverse(trivial_z2):
    modules = [coefficient_module(2), coefficient_module(3)]
    total = h2_rrb(trivial_z2, product_module(modules))
    c = total.lift(next(iter(total.elements())))
    assert join_cocycles(split_cocycle(c, modules)) == c


@pytest.mark.slow
def test_product_coefficients_over_catalog():
    pairs = [
        (coefficient_module(2), coefficient_module(2)),
        (coefficient_module(2), coefficient_module(3)),
        (coefficient_module(4), TrivialRRBModule((2,), (2,), [[0]])),
    ]
    combos = 0
    for rrb in rrb_catalog(max_product=4):
        for pair in pairs:
            iso = product_coeff_iso(rrb, pair)
            assert iso.total.order == iso.components[0].order * iso.components[1].order, rrb.name
            combos += 1
    assert combos >= 10
