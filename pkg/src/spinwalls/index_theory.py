"""Index arithmetic for coupled Dirac operators on 4-manifolds.

The index of the operator coupled to a line bundle with class d and spin
class C on a manifold of signature index I is

    chi_C(L_d) = (1/2) d.(d+C) + (1/8) (C.C - I),

and for a rank-2 bundle with Chern data (c1, c2),

    chi_C(E) = (1/2) (c1.c1 - 2 c2 + c1.C) + (1/4) (C.C - I).

Both are carried as exact rationals; integrality is asserted, never
assumed.  The rank-2 form is additive over topological splittings:
whenever c2 = d.(c1 - d), it equals chi_C(L_d) + chi_C(L_{c1-d}).
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass
from fractions import Fraction

from .errors import ValidationError
from .lattice import (
    IntegerLattice,
    Vector,
    add,
    is_characteristic,
    lattice_index,
    neg,
    pairing,
    scale,
    sub,
)


class NonCharacteristicWarning(UserWarning):
    """The supplied spin class is not characteristic for the lattice."""


class NonIntegralIndexWarning(UserWarning):
    """An index value that should be an integer came out fractional."""


@dataclass(frozen=True)
class SpinCStructure:
    """An integral lift of the second Stiefel-Whitney class."""

    c: Vector

    def validate(self, lattice: IntegerLattice) -> None:
        if not is_characteristic(lattice, self.c):
            raise ValidationError(f"{self.c} is not characteristic for the lattice")

    @classmethod
    def anticanonical(cls, canonical: Vector) -> "SpinCStructure":
        """The spin structure an algebraic surface carries by default."""
        return cls(neg(canonical))


@dataclass(frozen=True)
class BundleTopology:
    """Topological type of a rank-2 bundle: determinant class and c2."""

    c1: Vector
    c2: int

    def p1(self, lattice: IntegerLattice) -> int:
        return pairing(lattice, self.c1, self.c1) - 4 * self.c2


@dataclass(frozen=True)
class JumpingType:
    """A jumping level together with the spin and bundle data it filters."""

    r: int
    spin: SpinCStructure
    bundle: BundleTopology

    def __post_init__(self) -> None:
        if self.r < 1:
            raise ValidationError(f"jumping level must be >= 1, got {self.r}")

    def chi(self, lattice: IntegerLattice, index: int | None = None) -> Fraction:
        return chi_rank2(lattice, self.spin.c, self.bundle, index)

    def vcodim(self, lattice: IntegerLattice, index: int | None = None) -> Fraction:
        return vcodim_jumping(self.r, self.chi(lattice, index))


def _spin_coeffs(spin_c) -> Vector:
    return spin_c.c if isinstance(spin_c, SpinCStructure) else spin_c


def chi_line(
    lattice: IntegerLattice,
    spin_c: Vector | SpinCStructure,
    delta: Vector,
    index: int | None = None,
) -> Fraction:
    """Index of the Dirac operator coupled to the line bundle with class delta.

    ``index`` may be passed to decouple the computation from the
    signature reduction (e.g. for a hypothetical manifold); it defaults
    to the lattice's signature index.  A non-characteristic spin class
    and a fractional result each raise a warning, but the value is
    computed and returned regardless.
    """
    c = _spin_coeffs(spin_c)
    if index is None:
        index = lattice_index(lattice)
    if not is_characteristic(lattice, c):
        warnings.warn(f"spin class {c} is not characteristic", NonCharacteristicWarning,
                      stacklevel=2)
    value = Fraction(pairing(lattice, delta, add(delta, c)), 2) + Fraction(
        pairing(lattice, c, c) - index, 8
    )
    if value.denominator != 1:
        warnings.warn(f"line index {value} is not an integer", NonIntegralIndexWarning,
                      stacklevel=2)
    return value


def chi_rank2(
    lattice: IntegerLattice,
    spin_c: Vector | SpinCStructure,
    bundle: BundleTopology,
    index: int | None = None,
) -> Fraction:
    """Index of the Dirac operator coupled to a rank-2 bundle."""
    c = _spin_coeffs(spin_c)
    if index is None:
        index = lattice_index(lattice)
    if not is_characteristic(lattice, c):
        warnings.warn(f"spin class {c} is not characteristic", NonCharacteristicWarning,
                      stacklevel=2)
    c1 = bundle.c1
    value = Fraction(
        pairing(lattice, c1, c1) - 2 * bundle.c2 + pairing(lattice, c1, c), 2
    ) + Fraction(pairing(lattice, c, c) - index, 4)
    if value.denominator != 1:
        warnings.warn(f"rank-2 index {value} is not an integer", NonIntegralIndexWarning,
                      stacklevel=2)
    return value


def vcodim_jumping(r: int, chi) -> Fraction:
    """Virtual codimension of the level-r jumping locus: 2r^2 - 2r*chi."""
    if r < 1:
        raise ValidationError(f"jumping level must be >= 1, got {r}")
    return 2 * r * r - 2 * r * Fraction(chi)


def brill_noether_vcodim(h0: int, chi: int) -> int:
    """Virtual codimension of the locus with h^0 sections: h0*(h0 - chi)."""
    if h0 < 0:
        raise ValidationError(f"h0 must be >= 0, got {h0}")
    return h0 * (h0 - chi)


@dataclass(frozen=True)
class VirtualDimension:
    vdim: int | Fraction
    d: int | None  # half the dimension when that is an integer
    even: bool


def vdim_instanton(
    lattice: IntegerLattice, bundle: BundleTopology, b_plus: int
) -> VirtualDimension:
    """Virtual dimension of the instanton space: -2*p1 - 3*(1 + b_plus).

    Assumes a simply connected manifold.  The result must be even when
    b_plus is odd; an odd value is flagged through ``even`` rather than
    rejected, since it signals inconsistent input data.
    """
    if b_plus < 1:
        raise ValidationError(f"b_plus must be >= 1, got {b_plus}")
    vdim = -2 * bundle.p1(lattice) - 3 * (1 + b_plus)
    even = vdim % 2 == 0
    return VirtualDimension(vdim, vdim // 2 if even else None, even)


def vdim_jumping(
    lattice: IntegerLattice,
    spin_c: Vector | SpinCStructure,
    bundle: BundleTopology,
    b_plus: int,
    r: int,
    index: int | None = None,
) -> VirtualDimension:
    """Virtual dimension of the level-r jumping locus, by subtraction.

    No closed form is postulated: the value is the instanton dimension
    minus the virtual codimension of the jumping condition, and
    non-integrality of the half-dimension is flagged instead of hidden.
    """
    total = vdim_instanton(lattice, bundle, b_plus).vdim
    vdim = total - vcodim_jumping(r, chi_rank2(lattice, spin_c, bundle, index))
    if isinstance(vdim, Fraction) and vdim.denominator == 1:
        vdim = int(vdim)
    even = isinstance(vdim, int) and vdim % 2 == 0
    return VirtualDimension(vdim, vdim // 2 if even else None, even)


def shift(c1: Vector, spin_c: Vector, twist: Vector) -> tuple[Vector, Vector]:
    """Twist by a line bundle: (c1, C) -> (c1 + 2t, C - 2t).

    The sum c1 + C is unchanged, and the shifted spin class is
    characteristic whenever the original one was.
    """
    return add(c1, scale(twist, 2)), sub(spin_c, scale(twist, 2))
