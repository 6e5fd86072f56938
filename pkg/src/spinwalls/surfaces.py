"""Numerical invariants of algebraic surfaces and their consistency identities.

For a surface with invariants (K^2, c2, p_g, q) the identities in play are

    Noether:    K^2 + c2 = 12*(1 + p_g - q)
    index:      I = (K^2 - 2*c2) / 3
    Betti:      b2+ = 2*p_g + 1,   c2 = 2 - 4q + b2

together with chi(O) = 1 + p_g - q.  Simply connected surfaces with
q = 0 are the default; q is carried as data for generality.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import FormulationDisagreement, ValidationError
from .index_theory import BundleTopology, chi_rank2
from .lattice import (
    IntegerLattice,
    Vector,
    diagonal_lattice,
    neg,
    pairing,
    scale,
    sub,
    vector,
)
from .walls import WallQuery, emptiness_certificate


@dataclass(frozen=True)
class SurfaceInvariants:
    k_square: int
    p_g: int
    q: int = 0
    c2_top: int | None = None  # derived from the Noether identity when omitted

    def __post_init__(self) -> None:
        if self.p_g < 0 or self.q < 0:
            raise ValidationError("p_g and q must be nonnegative")

    @property
    def chi_o(self) -> int:
        return 1 + self.p_g - self.q

    @property
    def b_plus(self) -> int:
        return 2 * self.p_g + 1

    def noether_c2(self) -> int:
        return 12 * self.chi_o - self.k_square


@dataclass(frozen=True)
class ConsistencyReport:
    surface: SurfaceInvariants
    c2_top: int
    chi_o: int
    index: int | Fraction
    b_plus: int
    b_minus: int
    b2: int
    violations: tuple[str, ...]

    @property
    def ok(self) -> bool:
        return not self.violations


def surface_consistency(surface: SurfaceInvariants) -> ConsistencyReport:
    """Derive (c2, I, b2+, b2-, chi(O)) and check every identity among them.

    When c2 was supplied it is checked against the Noether identity
    rather than recomputed; each violated identity is reported by name.
    """
    violations = []
    c2 = surface.c2_top if surface.c2_top is not None else surface.noether_c2()
    if surface.k_square + c2 != 12 * surface.chi_o:
        violations.append(
            f"noether: K^2 + c2 = {surface.k_square + c2} != {12 * surface.chi_o} = 12*chi(O)"
        )
    index = Fraction(surface.k_square - 2 * c2, 3)
    if index.denominator == 1:
        index = int(index)
    else:
        violations.append(f"index-integrality: (K^2 - 2*c2)/3 = {index} is not an integer")
    b_plus = surface.b_plus
    b2 = c2 - 2 + 4 * surface.q
    b_minus = b2 - b_plus
    if b_minus < 0:
        violations.append(f"betti-range: b2- = {b_minus} is negative")
    if isinstance(index, int) and index != b_plus - b_minus:
        violations.append(
            f"signature-mismatch: I = {index} but b2+ - b2- = {b_plus - b_minus}"
        )
    return ConsistencyReport(
        surface=surface,
        c2_top=c2,
        chi_o=surface.chi_o,
        index=index,
        b_plus=b_plus,
        b_minus=b_minus,
        b2=b2,
        violations=tuple(violations),
    )


def spin_invariance_threshold(surface: SurfaceInvariants, r: int) -> bool:
    """True when -K^2 < 8(r-1) - 8*p_g, the metric-independence regime.

    Through the Noether identity this is exactly the condition
    8r > -I, so level r invariants ignore the metric.
    """
    if r < 1:
        raise ValidationError(f"jumping level must be >= 1, got {r}")
    return -surface.k_square < 8 * (r - 1) - 8 * surface.p_g


def riemann_roch_rank2(
    surface: SurfaceInvariants, c1_dot_k: int, c1_square: int, c2: int
) -> int:
    """chi(E) = 2*chi(O) + (c1^2 - c1.K)/2 - c2 for a rank-2 sheaf."""
    if (c1_square - c1_dot_k) % 2 != 0:
        raise ValidationError(
            f"c1^2 - c1.K = {c1_square - c1_dot_k} must be even; on a surface "
            "c1.K and c1^2 always share parity"
        )
    return 2 * surface.chi_o + (c1_square - c1_dot_k) // 2 - c2


def serre_dual_locus(
    picard: IntegerLattice, canonical: Vector, i: int, j: int, c1: Vector, c2: int
) -> tuple[int, int, Vector, int]:
    """The dual cohomology-jump locus: (i,j,c1,c2) -> (j,i,2K-c1,c2-c1.K+K^2).

    The transform is an involution and fixes the Chern data pointwise at
    c1 = K, where the locus is self-dual with the jump indices swapped.
    """
    if i < 0 or j < 0:
        raise ValidationError("cohomology jump indices must be nonnegative")
    canonical = vector(canonical)
    c1 = vector(c1)
    c1_dual = sub(scale(canonical, 2), c1)
    c2_dual = c2 - pairing(picard, c1, canonical) + pairing(picard, canonical, canonical)
    return j, i, c1_dual, c2_dual


@dataclass(frozen=True)
class NormalConeDatum:
    """Cohomology ranks plus the shape of the pairing on middle cohomology."""

    h0: int
    h1: int
    h2: int
    q_nondegenerate: bool
    isotropic_cone_trivial: bool

    @classmethod
    def over_complex_numbers(
        cls, h0: int, h1: int, h2: int, q_nondegenerate: bool
    ) -> "NormalConeDatum":
        """Derive the cone flag from dimension: over C, a nondegenerate form
        in dimension >= 2 always has nonzero isotropic vectors, and in
        dimension <= 1 never does; a degenerate form has its kernel."""
        trivial = h1 == 0 or (h1 == 1 and q_nondegenerate)
        return cls(h0, h1, h2, q_nondegenerate, trivial)


@dataclass(frozen=True)
class MultiplicityVerdict:
    multiplicity: int | None
    status: str  # 'determined' | 'not-determined' | 'out-of-scope'


def normal_cone_multiplicity(datum: NormalConeDatum) -> MultiplicityVerdict:
    """Scheme multiplicity of the jump locus through the isotropy criterion.

    Implemented for the simplest case h0 = 1 only: a normal vector lies
    in the cone exactly when its image is isotropic, so a trivial
    isotropic cone forces the zero cone, the locus fills the ambient
    space as a scheme, and each point carries multiplicity 2.
    """
    if datum.h0 != 1:
        return MultiplicityVerdict(None, "out-of-scope")
    if datum.isotropic_cone_trivial:
        return MultiplicityVerdict(2, "determined")
    return MultiplicityVerdict(None, "not-determined")


BARLOW_CANONICAL: Vector = (3, 1, 1, 1, 1, 1, 1, 1, 1)


def barlow_demo(max_box: int = 10**8) -> dict:
    """The full numerical chain for the Barlow surface, every step checked.

    Starts from (K^2, p_g, q) = (1, 0, 0), derives the topology, counts
    the base points of the bicanonical pencil, settles the rank-2 index
    two independent ways, resolves point multiplicity through the
    isotropy criterion, certifies the level-1 wall system empty, and
    bounds the curve-class sublattice away from full rank.
    """
    surface = SurfaceInvariants(k_square=1, p_g=0, q=0)
    report = surface_consistency(surface)
    if not report.ok:
        raise FormulationDisagreement(f"inconsistent built-in data: {report.violations}")

    lattice = diagonal_lattice([1] + [-1] * 8)
    canonical = BARLOW_CANONICAL
    k_sq = pairing(lattice, canonical, canonical)
    if k_sq != surface.k_square:
        raise FormulationDisagreement("canonical class model has the wrong square")

    base_points = 4 * surface.k_square  # (2K)^2

    chi_sheaf = riemann_roch_rank2(surface, c1_dot_k=1, c1_square=1, c2=1)
    chi_dirac = chi_rank2(
        lattice, neg(canonical), BundleTopology(canonical, 1), report.index
    )
    if chi_sheaf != chi_dirac:
        raise FormulationDisagreement(
            f"sheaf and Dirac indices disagree: {chi_sheaf} vs {chi_dirac}"
        )

    cohomology = (1, 1, 1)
    datum = NormalConeDatum.over_complex_numbers(*cohomology, q_nondegenerate=True)
    verdict = normal_cone_multiplicity(datum)
    if verdict.multiplicity is None:
        raise FormulationDisagreement("multiplicity criterion failed on built-in data")

    gamma0 = base_points * verdict.multiplicity
    spin_gamma0 = 2 * gamma0

    query = WallQuery(
        lattice, c1=canonical, spin_c=neg(canonical), p1=-3, r=1, bound=6
    )
    cert = emptiness_certificate(query, max_box=max_box)

    picard_rank = 9
    generators = 5  # K plus the four rational curves
    span_bound = min(generators, picard_rank)

    return {
        "surface": {
            "K2": surface.k_square,
            "pg": surface.p_g,
            "q": surface.q,
            "c2": report.c2_top,
            "index": report.index,
            "b_plus": report.b_plus,
            "b_minus": report.b_minus,
            "chi_O": report.chi_o,
        },
        "base_points": base_points,
        "cohomology": list(cohomology),
        "chi_E": chi_sheaf,
        "multiplicity": verdict.multiplicity,
        "emptiness": {
            "r": query.r,
            "certificate": cert.status,
            "eight_r": cert.eight_r,
            "minus_index": cert.minus_index,
            "box_bound": query.bound,
            "walls_found": len(cert.search) if cert.search is not None else None,
        },
        "sublattice": {
            "picard_rank": picard_rank,
            "generators": generators,
            "span_rank_at_most": span_bound,
            "proper": span_bound < picard_rank,
        },
        "gamma0": gamma0,
        "spin_gamma0": spin_gamma0,
    }
