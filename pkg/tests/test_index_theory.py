"""Dirac index formulas, virtual dimensions, and the twist shift."""

import random
import warnings
from fractions import Fraction
from itertools import product

import pytest

from spinwalls import (
    BundleTopology,
    JumpingType,
    NonCharacteristicWarning,
    NonIntegralIndexWarning,
    SpinCStructure,
    ValidationError,
    add,
    brill_noether_vcodim,
    chi_line,
    chi_rank2,
    characteristic_vector,
    diagonal_lattice,
    e8_lattice,
    hyperbolic_plane,
    is_characteristic,
    neg,
    pairing,
    scale,
    shift,
    signature,
    sub,
    vcodim_jumping,
    vdim_instanton,
    vdim_jumping,
    zero,
)


def random_vector(rng, rank, lo=-5, hi=5):
    return tuple(rng.randint(lo, hi) for _ in range(rank))


# -- chi_line

def test_chi_line_trivial_plane():
    plane = diagonal_lattice([1])
    assert chi_line(plane, (1,), (0,), 1) == 0


def test_chi_line_barlow_equals_noether_chi(barlow_lattice, barlow_spin):
    # oracle: chi(O) from the Noether identity, (K^2 + c2)/12 with c2 = 11
    assert (1 + 11) % 12 == 0
    noether_chi = (1 + 11) // 12
    assert chi_line(barlow_lattice, barlow_spin, zero(9), -7) == noether_chi == 1


def test_chi_line_accepts_spin_structure_wrapper(barlow_lattice, barlow_k):
    spin = SpinCStructure.anticanonical(barlow_k)
    spin.validate(barlow_lattice)
    assert chi_line(barlow_lattice, spin, zero(9), -7) == 1


def test_chi_line_threshold_reformulation_full_box():
    # chi >= r  <=>  -C.delta - delta^2 <= C^2/4 - I/4 - 2r, swept exhaustively
    lattice = diagonal_lattice([1, -1, -1])
    spin_c = (1, 1, 1)
    index = signature(lattice).index
    c_sq = pairing(lattice, spin_c, spin_c)
    for delta in product(range(-6, 7), repeat=3):
        chi = chi_line(lattice, spin_c, delta, index)
        lhs = -pairing(lattice, spin_c, delta) - pairing(lattice, delta, delta)
        for r in range(1, 6):
            rhs = Fraction(c_sq - index, 4) - 2 * r
            assert (chi >= r) == (lhs <= rhs)


def test_chi_line_threshold_reformulation_rank9_sampled(barlow_lattice, barlow_spin):
    rng = random.Random(13)
    index = -7
    c_sq = pairing(barlow_lattice, barlow_spin, barlow_spin)
    for _ in range(10_000):
        delta = random_vector(rng, 9)
        chi = chi_line(barlow_lattice, barlow_spin, delta, index)
        lhs = -pairing(barlow_lattice, barlow_spin, delta) - pairing(
            barlow_lattice, delta, delta
        )
        r = rng.randint(1, 5)
        assert (chi >= r) == (lhs <= Fraction(c_sq - index, 4) - 2 * r)


def test_chi_line_integral_for_characteristic_spin():
    rng = random.Random(101)
    lattices = [
        diagonal_lattice([1, -1, -1]),
        diagonal_lattice([1] + [-1] * 8),
        hyperbolic_plane(),
        e8_lattice(-1),
    ]
    for lattice in lattices:
        base = characteristic_vector(lattice)
        index = signature(lattice).index
        for _ in range(2500):
            spin_c = add(base, scale(random_vector(rng, lattice.rank, -3, 3), 2))
            delta = random_vector(rng, lattice.rank)
            assert chi_line(lattice, spin_c, delta, index).denominator == 1


def test_chi_line_warns_on_non_characteristic():
    lattice = diagonal_lattice([1, -1])
    with pytest.warns(NonCharacteristicWarning):
        chi_line(lattice, (1, 0), (0, 0))


def test_chi_line_warns_on_fractional_value():
    lattice = diagonal_lattice([2])
    with pytest.warns(NonIntegralIndexWarning):
        value = chi_line(lattice, (0,), (0,))
    assert value == Fraction(-1, 8)


# -- chi_rank2

def test_chi_rank2_barlow(barlow_lattice, barlow_k, barlow_spin):
    bundle = BundleTopology(barlow_k, 1)
    assert bundle.p1(barlow_lattice) == -3
    assert chi_rank2(barlow_lattice, barlow_spin, bundle, -7) == 1


def test_chi_rank2_additive_over_splittings(barlow_lattice, barlow_k, barlow_spin):
    rng = random.Random(7)
    c1 = barlow_k
    for _ in range(1000):
        delta = random_vector(rng, 9)
        c2 = pairing(barlow_lattice, delta, sub(c1, delta))
        lhs = chi_rank2(barlow_lattice, barlow_spin, BundleTopology(c1, c2), -7)
        rhs = chi_line(barlow_lattice, barlow_spin, delta, -7) + chi_line(
            barlow_lattice, barlow_spin, sub(c1, delta), -7
        )
        assert lhs == rhs


def test_chi_rank2_trivial_bundle_doubles_chi_line():
    lattice = hyperbolic_plane()
    for spin_c in [(0, 0), (2, 0), (0, -2), (2, 4)]:
        bundle = BundleTopology((0, 0), 0)
        assert chi_rank2(lattice, spin_c, bundle) == 2 * chi_line(
            lattice, spin_c, (0, 0)
        )


# -- virtual dimensions and codimensions

def test_vcodim_jumping_values():
    assert vcodim_jumping(1, 1) == 0
    assert vcodim_jumping(1, 0) == 2
    assert vcodim_jumping(3, -2) == 30


def test_vcodim_jumping_recurrence():
    for r in range(2, 7):
        for chi in range(-5, 6):
            step = vcodim_jumping(r, chi) - vcodim_jumping(r - 1, chi)
            assert step == 2 * (2 * r - 1) - 2 * chi
    assert vcodim_jumping(1, Fraction(5, 2)) == 2 - 5


def test_vcodim_rejects_bad_level():
    with pytest.raises(ValidationError):
        vcodim_jumping(0, 1)


def test_brill_noether_vcodim():
    assert brill_noether_vcodim(1, 1) == 0
    assert brill_noether_vcodim(0, -7) == 0
    assert brill_noether_vcodim(2, -1) == 6
    with pytest.raises(ValidationError):
        brill_noether_vcodim(-1, 0)


def test_vdim_instanton_plane_conics():
    plane = diagonal_lattice([1])
    dim = vdim_instanton(plane, BundleTopology((0,), 2), b_plus=1)
    assert (dim.vdim, dim.d, dim.even) == (10, 5, True)


def test_vdim_instanton_barlow(barlow_lattice, barlow_k):
    dim = vdim_instanton(barlow_lattice, BundleTopology(barlow_k, 1), b_plus=1)
    assert (dim.vdim, dim.d) == (0, 0)


def test_vdim_instanton_parity_flag():
    plane = diagonal_lattice([1, 1])
    dim = vdim_instanton(plane, BundleTopology((0, 0), 1), b_plus=2)
    assert not dim.even
    assert dim.d is None
    with pytest.raises(ValidationError):
        vdim_instanton(plane, BundleTopology((0, 0), 1), b_plus=0)


def test_vdim_jumping_barlow(barlow_lattice, barlow_k, barlow_spin):
    dim = vdim_jumping(
        barlow_lattice, barlow_spin, BundleTopology(barlow_k, 1), b_plus=1, r=1
    )
    assert (dim.vdim, dim.d, dim.even) == (0, 0, True)


def test_jumping_type_carrier(barlow_lattice, barlow_k, barlow_spin):
    jt = JumpingType(1, SpinCStructure(barlow_spin), BundleTopology(barlow_k, 1))
    assert jt.chi(barlow_lattice, -7) == 1
    assert jt.vcodim(barlow_lattice, -7) == 0
    with pytest.raises(ValidationError):
        JumpingType(0, SpinCStructure(barlow_spin), BundleTopology(barlow_k, 1))


# -- shift

def test_shift_identity_at_zero(barlow_k, barlow_spin):
    assert shift(barlow_k, barlow_spin, zero(9)) == (barlow_k, barlow_spin)


def test_shift_preserves_sum_and_characteristic(barlow_lattice, barlow_k, barlow_spin):
    rng = random.Random(3)
    for _ in range(1000):
        lam = random_vector(rng, 9, -6, 6)
        c1s, spin_s = shift(barlow_k, barlow_spin, lam)
        assert add(c1s, spin_s) == add(barlow_k, barlow_spin)
        assert is_characteristic(barlow_lattice, spin_s)


def test_serre_symmetry_seed(barlow_lattice, barlow_k, barlow_spin):
    # with the anticanonical spin class, the line index is symmetric
    # about half the canonical class: chi(L_d) = chi(L_{K-d})
    rng = random.Random(29)
    for _ in range(300):
        delta = random_vector(rng, 9)
        assert chi_line(barlow_lattice, barlow_spin, delta, -7) == chi_line(
            barlow_lattice, barlow_spin, sub(barlow_k, delta), -7
        )


def test_spin_structure_validation(barlow_lattice):
    with pytest.raises(ValidationError):
        SpinCStructure((1, 0, 0, 0, 0, 0, 0, 0, 0)).validate(barlow_lattice)
