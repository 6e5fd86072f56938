"""Chamber combinatorics for stability of pairs, in exact rationals.

The scale parameter sigma sweeps [0, deg(E)/2]; the stability verdict for
any fixed subbundle is constant between consecutive critical values
deg(E)/2 - i, and changes only there.  Everything here is exact; the one
floating-point entry point is the scale conversion from the physical
parameter, and its output is never fed back into the exact predicates.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .errors import ValidationError


def _rational(x, name: str) -> Fraction:
    if isinstance(x, float):
        raise ValidationError(
            f"{name} must be exact (int, Fraction, or 'p/q' string), got float {x!r}"
        )
    try:
        return Fraction(x)
    except (ValueError, TypeError) as exc:
        raise ValidationError(f"bad rational for {name}: {x!r}") from exc


@dataclass(frozen=True)
class PairParameters:
    deg_e: Fraction
    sigma: Fraction

    def __post_init__(self) -> None:
        object.__setattr__(self, "deg_e", _rational(self.deg_e, "deg_e"))
        object.__setattr__(self, "sigma", _rational(self.sigma, "sigma"))

    @property
    def feasible(self) -> bool:
        """Necessary condition for a nonempty moduli space."""
        return Fraction(self.deg_e, 2) >= self.sigma >= 0


@dataclass(frozen=True)
class FlipChain:
    """Ordered chambers (decreasing in sigma) and their interior walls."""

    chambers: tuple[tuple[Fraction, Fraction], ...]
    critical_values: tuple[Fraction, ...]

    @property
    def top_chamber(self) -> tuple[Fraction, Fraction] | None:
        return self.chambers[0] if self.chambers else None

    @property
    def zero_chamber(self) -> tuple[Fraction, Fraction] | None:
        return self.chambers[-1] if self.chambers else None

    def __len__(self) -> int:
        return len(self.chambers)


def sigma_from_tau(tau: float, vol: float, deg_e) -> float:
    """Scale conversion sigma = tau*vol/(4*pi) - deg(E)/2, in floating point.

    Relative error is at most a few ulp (~1e-16); callers doing exact
    chamber work must supply sigma as a rational themselves, since pi
    admits no exact conversion.
    """
    if vol <= 0:
        raise ValidationError(f"volume must be positive, got {vol}")
    deg = _rational(deg_e, "deg_e") if not isinstance(deg_e, float) else Fraction(deg_e)
    return tau * vol / (4 * math.pi) - float(deg) / 2


def is_sigma_stable(deg_l, has_section: bool, deg_e, sigma) -> bool:
    """Per-subbundle stability: deg L < deg(E)/2 - sigma on the section
    side, deg L < deg(E)/2 + sigma otherwise.  Strict in both branches;
    at sigma = 0 the two coincide with slope stability.

    A pair is stable when this holds for every destabilizing candidate;
    supplying the candidates is the caller's business.
    """
    deg_l = _rational(deg_l, "deg_l")
    deg_e = _rational(deg_e, "deg_e")
    sigma = _rational(sigma, "sigma")
    if sigma < 0:
        raise ValidationError(f"sigma must be >= 0, got {sigma}")
    half = Fraction(deg_e, 2)
    if has_section:
        return deg_l < half - sigma
    return deg_l < half + sigma


def nonempty_range(deg_e) -> tuple[Fraction, Fraction] | None:
    """The closed sigma-interval [0, deg(E)/2] a nonempty space requires.

    Degenerates to the single point 0 when deg(E) = 0 and to None (no
    sigma works) when deg(E) < 0.
    """
    deg_e = _rational(deg_e, "deg_e")
    if deg_e < 0:
        return None
    return (Fraction(0), Fraction(deg_e, 2))


def flip_chain(deg_e) -> FlipChain:
    """Chambers (max(0, D-i-1), D-i) for D = deg(E)/2 and i = 0, 1, ...

    Chambers are open, pairwise disjoint, ordered by decreasing sigma,
    and their closures tile (0, D]; consecutive chambers meet at one
    critical value.  Nonpositive degree yields an empty chain.  For
    non-integral degrees the critical set D - Z is used, which restricts
    to the classical description at integer degree.
    """
    deg_e = _rational(deg_e, "deg_e")
    if deg_e <= 0:
        return FlipChain((), ())
    half = Fraction(deg_e, 2)
    chambers = []
    i = 0
    while half - i > 0:
        hi = half - i
        lo = max(Fraction(0), hi - 1)
        chambers.append((lo, hi))
        i += 1
    critical = tuple(chambers[k][1] for k in range(1, len(chambers)))
    return FlipChain(tuple(chambers), critical)
