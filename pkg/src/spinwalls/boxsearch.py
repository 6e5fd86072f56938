"""Exact bounds for quadratic forms over integer boxes, for branch-and-bound.

Raw enumeration of a coefficient box is hopeless beyond small rank: a
half-width of 6 in rank 10 already holds 13^10 points.  Instead the Gram
form is rewritten, once per lattice, as a weighted sum of squares of
linear forms with exact rational weights,

    x.G.x = sum_k d_k * l_k(x)^2,

by symmetric completion of squares (with a 2x2 hyperbolic step when a
pivot block has zero diagonal).  Clearing denominators turns this into
integer data: M * x.G.x = sum_k D_k * L_k(x)^2 with everything integral.

For an affine image y = base + s*delta with delta confined to a box, each
L_k(y) is an integer constant plus a linear form in delta, whose range
over the remaining sub-box is exact.  Squaring and weighting the ranges
gives sound two-sided bounds for M*q(y) at every node of a depth-first
search over the coordinates of delta.  Squares are peeled from the last
coordinate down, so the k-th linear form is supported on coordinates
0..k whenever no pivot repair was needed; the bound then sharpens by one
full term per assigned coordinate, which makes the pruning exact for
diagonal Gram matrices and Fincke-Pohst-sharp for definite ones.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from math import lcm

from .lattice import IntegerLattice, Vector


def square_decomposition(
    gram: tuple[tuple[int, ...], ...],
) -> list[tuple[Fraction, tuple[Fraction, ...]]]:
    """Write x.G.x as sum_k d_k * l_k(x)^2 over the rationals.

    Returns (d_k, coefficients of l_k) pairs.  Handles indefinite and
    degenerate forms; zero-diagonal pivots are peeled as hyperbolic
    pairs, contributing one positive and one negative square.
    """
    n = len(gram)
    b = [[Fraction(x) for x in row] for row in gram]
    terms: list[tuple[Fraction, tuple[Fraction, ...]]] = []

    def peel_rank1(k: int) -> None:
        d = b[k][k]
        row = b[k][:]
        coeffs = tuple(c / d for c in row)
        terms.append((d, coeffs))
        for i in range(n):
            if row[i]:
                fi = row[i] / d
                for j in range(n):
                    b[i][j] -= fi * row[j]

    def peel_hyperbolic(k: int, j: int) -> None:
        # both diagonal entries vanish; b[k][j] != 0
        p = b[k][j]
        rk = b[k][:]
        rj = b[j][:]
        # x.B.x = (1/2p) * [ (rk+rj)(x)^2 - (rk-rj)(x)^2 ] + residual
        plus = tuple((a + c) / (2 * p) for a, c in zip(rk, rj))
        minus = tuple((a - c) / (2 * p) for a, c in zip(rk, rj))
        terms.append((Fraction(p, 2), plus))
        terms.append((Fraction(-p, 2), minus))
        # residual = B - [rk;rj]^T P^{-1} [rk;rj] with P = [[0,p],[p,0]]
        for a in range(n):
            for c in range(n):
                b[a][c] -= (rk[a] * rj[c] + rj[a] * rk[c]) / p

    while True:
        k = next(
            (i for i in range(n - 1, -1, -1) if any(b[i][j] for j in range(n))),
            None,
        )
        if k is None:
            break
        if b[k][k] != 0:
            peel_rank1(k)
            continue
        j = next(i for i in range(n - 1, -1, -1) if i != k and b[k][i])
        if b[j][j] != 0:
            peel_rank1(j)
        else:
            peel_hyperbolic(k, j)
    return terms


@lru_cache(maxsize=256)
def integer_square_form(
    gram: tuple[tuple[int, ...], ...],
) -> tuple[int, tuple[tuple[int, tuple[int, ...]], ...]]:
    """Integer multiplier M and terms (D_k, L_k) with M*x.G.x = sum D_k L_k(x)^2."""
    cleared = []
    for d, coeffs in square_decomposition(gram):
        m = lcm(*(c.denominator for c in coeffs)) if coeffs else 1
        li = tuple(int(c * m) for c in coeffs)
        cleared.append((d / (m * m), li))
    mult = lcm(*(d.denominator for d, _ in cleared)) if cleared else 1
    terms = tuple((int(d * mult), li) for d, li in cleared)
    return mult, terms


class AffineSquares:
    """Prefix-incremental bounds for M*q(base + s*delta) over an integer box.

    Coordinates of delta are assigned in order 0..n-1; ``partial`` holds
    the running value of each linear form on the assigned prefix, and
    precomputed suffix ranges close the gap to a sound interval.
    """

    __slots__ = ("multiplier", "weights", "consts", "coeffs", "suffix", "rank")

    def __init__(
        self,
        lattice: IntegerLattice,
        base: Vector,
        scale: int,
        lows: Vector,
        highs: Vector,
    ) -> None:
        mult, terms = integer_square_form(lattice.gram)
        n = lattice.rank
        self.rank = n
        self.multiplier = mult
        self.weights = tuple(d for d, _ in terms)
        self.consts = tuple(
            sum(c * b for c, b in zip(coeffs, base)) for _, coeffs in terms
        )
        self.coeffs = tuple(
            tuple(scale * c for c in coeffs) for _, coeffs in terms
        )
        # suffix[t][k] = exact range of sum_{j>=t} coeffs[k][j]*delta_j
        suffix = [[(0, 0)] * len(terms) for _ in range(n + 1)]
        for t in range(n - 1, -1, -1):
            row = []
            for k in range(len(terms)):
                a = self.coeffs[k][t]
                lo, hi = a * lows[t], a * highs[t]
                if lo > hi:
                    lo, hi = hi, lo
                plo, phi = suffix[t + 1][k]
                row.append((plo + lo, phi + hi))
            suffix[t] = row
        self.suffix = suffix

    def start(self) -> list[int]:
        return list(self.consts)

    def advance(self, partial: list[int], depth: int, value: int) -> list[int]:
        return [p + c[depth] * value for p, c in zip(partial, self.coeffs)]

    def bounds(self, partial: list[int], depth: int) -> tuple[int, int]:
        """Sound (lo, hi) for M*q given the assigned prefix of length ``depth``."""
        lo = hi = 0
        for w, p, (slo, shi) in zip(self.weights, partial, self.suffix[depth]):
            a, b = p + slo, p + shi
            if a >= 0:
                sq_lo, sq_hi = a * a, b * b
            elif b <= 0:
                sq_lo, sq_hi = b * b, a * a
            else:
                sq_lo, sq_hi = 0, max(a * a, b * b)
            if w >= 0:
                lo += w * sq_lo
                hi += w * sq_hi
            else:
                lo += w * sq_hi
                hi += w * sq_lo
        return lo, hi

    def value(self, partial: list[int]) -> int:
        """Exact M*q once every coordinate is assigned."""
        return sum(w * p * p for w, p in zip(self.weights, partial))
