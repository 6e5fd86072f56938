"""Integer lattices with a symmetric pairing, and exact arithmetic on them.

Everything here is carried out over the integers (or exact rationals for
the signature reduction); no floating point enters at any stage.  Vectors
are plain tuples of ints in the basis fixed by the Gram matrix, so all
outputs are basis-covariant quantities: squares, pairings, and ranks.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, NamedTuple, Sequence

from .errors import ValidationError

Vector = tuple[int, ...]


def vector(coeffs: Iterable[int]) -> Vector:
    """Normalize a coefficient sequence to an integer tuple."""
    out = []
    for c in coeffs:
        if isinstance(c, bool) or not isinstance(c, int):
            raise ValidationError(f"vector coefficients must be integers, got {c!r}")
        out.append(c)
    return tuple(out)


def zero(rank: int) -> Vector:
    return (0,) * rank


def add(u: Vector, v: Vector) -> Vector:
    if len(u) != len(v):
        raise ValidationError(f"vector lengths differ: {len(u)} vs {len(v)}")
    return tuple(a + b for a, b in zip(u, v))


def sub(u: Vector, v: Vector) -> Vector:
    if len(u) != len(v):
        raise ValidationError(f"vector lengths differ: {len(u)} vs {len(v)}")
    return tuple(a - b for a, b in zip(u, v))


def scale(v: Vector, k: int) -> Vector:
    return tuple(k * a for a in v)


def neg(v: Vector) -> Vector:
    return tuple(-a for a in v)


class Signature(NamedTuple):
    b_plus: int
    b_minus: int
    index: int


@dataclass(frozen=True)
class IntegerLattice:
    """A finite-rank free abelian group with a nondegenerate symmetric pairing.

    Lattices are value-identified by their Gram matrix; no isometry
    testing is attempted.  Unimodularity is available on demand through
    :attr:`is_unimodular` but is not required.
    """

    gram: tuple[tuple[int, ...], ...]
    determinant: int = field(init=False, compare=False)

    def __post_init__(self) -> None:
        gram = tuple(vector(row) for row in self.gram)
        n = len(gram)
        if n == 0:
            raise ValidationError("lattice rank must be positive")
        for row in gram:
            if len(row) != n:
                raise ValidationError("Gram matrix must be square")
        for i in range(n):
            for j in range(i + 1, n):
                if gram[i][j] != gram[j][i]:
                    raise ValidationError(
                        f"Gram matrix must be symmetric: entry ({i},{j}) != ({j},{i})"
                    )
        det = _bareiss_determinant(gram)
        if det == 0:
            raise ValidationError("Gram matrix is degenerate (determinant 0)")
        object.__setattr__(self, "gram", gram)
        object.__setattr__(self, "determinant", det)

    @property
    def rank(self) -> int:
        return len(self.gram)

    @property
    def is_unimodular(self) -> bool:
        return abs(self.determinant) == 1

    @property
    def is_even(self) -> bool:
        """True when every vector has even square, i.e. the diagonal is even."""
        return all(self.gram[i][i] % 2 == 0 for i in range(self.rank))

    def basis_vector(self, i: int) -> Vector:
        if not 0 <= i < self.rank:
            raise ValidationError(f"basis index {i} out of range for rank {self.rank}")
        return tuple(1 if j == i else 0 for j in range(self.rank))


def _bareiss_determinant(gram: Sequence[Sequence[int]]) -> int:
    """Fraction-free Gaussian elimination; exact for integer matrices."""
    m = [list(row) for row in gram]
    n = len(m)
    sign = 1
    prev = 1
    for k in range(n - 1):
        if m[k][k] == 0:
            for i in range(k + 1, n):
                if m[i][k] != 0:
                    m[k], m[i] = m[i], m[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) // prev
        prev = m[k][k]
    return sign * m[n - 1][n - 1]


def _check_compatible(lattice: IntegerLattice, v: Vector) -> None:
    if len(v) != lattice.rank:
        raise ValidationError(
            f"vector of length {len(v)} incompatible with lattice of rank {lattice.rank}"
        )


def pairing(lattice: IntegerLattice, u: Vector, v: Vector) -> int:
    """Evaluate the symmetric pairing u.G.v exactly."""
    _check_compatible(lattice, u)
    _check_compatible(lattice, v)
    gram = lattice.gram
    return sum(ui * sum(g * vj for g, vj in zip(row, v)) for ui, row in zip(u, gram))


def is_characteristic(lattice: IntegerLattice, v: Vector) -> bool:
    """True when v.x = x.x mod 2 for every basis vector x.

    The condition is tested on the basis and extends bilinearly, so it
    holds for all lattice vectors when it holds on the basis.
    """
    _check_compatible(lattice, v)
    gram = lattice.gram
    for i in range(lattice.rank):
        dot = sum(g * vj for g, vj in zip(gram[i], v))
        if (dot - gram[i][i]) % 2 != 0:
            return False
    return True


def characteristic_vector(lattice: IntegerLattice) -> Vector | None:
    """A characteristic vector, or None when the lattice admits none.

    Solves G.v = diag(G) over F_2; any two solutions differ by 2L.
    """
    n = lattice.rank
    rows = [[lattice.gram[i][j] % 2 for j in range(n)] + [lattice.gram[i][i] % 2]
            for i in range(n)]
    r = 0
    pivots = []
    for c in range(n):
        piv = next((i for i in range(r, n) if rows[i][c]), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        for i in range(n):
            if i != r and rows[i][c]:
                rows[i] = [(a + b) % 2 for a, b in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
    for i in range(r, n):
        if rows[i][n]:
            return None
    v = [0] * n
    for i, c in enumerate(pivots):
        v[c] = rows[i][n]
    return tuple(v)


def signature(lattice: IntegerLattice) -> Signature:
    """Counts of positive and negative squares, and their difference.

    Computed by exact symmetric Gaussian reduction over the rationals.
    Zero pivots are repaired by a basis permutation when some later
    diagonal entry is nonzero, and otherwise by adding a row and column
    that make the pivot nonzero; nondegeneracy guarantees one exists.
    """
    n = lattice.rank
    a = [[Fraction(x) for x in row] for row in lattice.gram]
    pos = neg_count = 0
    for k in range(n):
        if a[k][k] == 0:
            piv = next((i for i in range(k + 1, n) if a[i][i] != 0), None)
            if piv is not None:
                a[k], a[piv] = a[piv], a[k]
                for row in a:
                    row[k], row[piv] = row[piv], row[k]
            else:
                j = next((i for i in range(k + 1, n) if a[i][k] != 0), None)
                if j is None:
                    raise ValidationError("degenerate form in signature reduction")
                for c in range(n):
                    a[k][c] += a[j][c]
                for r in range(n):
                    a[r][k] += a[r][j]
        p = a[k][k]
        if p > 0:
            pos += 1
        else:
            neg_count += 1
        col = [a[i][k] for i in range(n)]
        row = a[k]
        for i in range(k + 1, n):
            if col[i]:
                f = col[i] / p
                for j in range(k + 1, n):
                    a[i][j] -= f * row[j]
    return Signature(pos, neg_count, pos - neg_count)


def hermite_normal_form(rows: Sequence[Sequence[int]]) -> list[Vector]:
    """Row-style Hermite normal form over the integers; zero rows dropped.

    Pivots are positive and entries above each pivot are reduced into
    [0, pivot).  The nonzero rows are a canonical basis of the row span.
    """
    work = [list(vector(r)) for r in rows]
    if not work:
        return []
    ncols = len(work[0])
    for r in work:
        if len(r) != ncols:
            raise ValidationError("rows must all have the same length")
    r = 0
    m = len(work)
    for c in range(ncols):
        if r == m:
            break
        while True:
            nz = [i for i in range(r, m) if work[i][c] != 0]
            if not nz:
                break
            i0 = min(nz, key=lambda i: abs(work[i][c]))
            work[r], work[i0] = work[i0], work[r]
            reduced = True
            for i in range(r + 1, m):
                if work[i][c] != 0:
                    q = work[i][c] // work[r][c]
                    work[i] = [a - q * b for a, b in zip(work[i], work[r])]
                    if work[i][c] != 0:
                        reduced = False
            if reduced:
                break
        if work[r][c] != 0:
            if work[r][c] < 0:
                work[r] = [-a for a in work[r]]
            for i in range(r):
                q = work[i][c] // work[r][c]
                if q:
                    work[i] = [a - q * b for a, b in zip(work[i], work[r])]
            r += 1
    return [tuple(row) for row in work[:r]]


def span_rank(lattice: IntegerLattice, vectors: Sequence[Vector]) -> int:
    """Rank of the subgroup generated by the vectors, by exact row reduction.

    A sublattice is proper exactly when this is smaller than the lattice
    rank.
    """
    for v in vectors:
        _check_compatible(lattice, v)
    return len(hermite_normal_form(list(vectors)))


# ---------------------------------------------------------------------------
# constructors

def from_gram(rows: Sequence[Sequence[int]]) -> IntegerLattice:
    return IntegerLattice(tuple(tuple(r) for r in rows))


def diagonal_lattice(entries: Sequence[int]) -> IntegerLattice:
    n = len(entries)
    return from_gram([[entries[i] if i == j else 0 for j in range(n)] for i in range(n)])


def hyperbolic_plane() -> IntegerLattice:
    return from_gram([[0, 1], [1, 0]])


_E8_EDGES = ((1, 3), (3, 4), (4, 5), (5, 6), (6, 7), (7, 8), (2, 4))


def e8_lattice(sign: int = 1) -> IntegerLattice:
    """The E8 root lattice with pairing scaled by +1 or -1."""
    if sign not in (1, -1):
        raise ValidationError("E8 sign must be +1 or -1")
    g = [[0] * 8 for _ in range(8)]
    for i in range(8):
        g[i][i] = 2 * sign
    for a, b in _E8_EDGES:
        g[a - 1][b - 1] = g[b - 1][a - 1] = -sign
    return from_gram(g)


def direct_sum(*lattices: IntegerLattice) -> IntegerLattice:
    if not lattices:
        raise ValidationError("direct sum of no lattices")
    total = sum(latt.rank for latt in lattices)
    g = [[0] * total for _ in range(total)]
    offset = 0
    for latt in lattices:
        n = latt.rank
        for i in range(n):
            for j in range(n):
                g[offset + i][offset + j] = latt.gram[i][j]
        offset += n
    return from_gram(g)


# ---------------------------------------------------------------------------
# the lattice spec mini-language
#
#   blocks separated by ',' or '+' at top level, each one of
#       1    -1    H    E8(+1)    E8(-1)    gram:[[...]]
#   with an optional repetition suffix xN, e.g. "1,-1x8" or "E8(-1)+Hx3".

def _split_blocks(text: str) -> list[str]:
    blocks = []
    depth = 0
    cur = []
    for ch in text:
        if ch in "[(":
            depth += 1
        elif ch in "])":
            depth -= 1
            if depth < 0:
                raise ValidationError(f"unbalanced brackets in lattice spec {text!r}")
        if ch in ",+" and depth == 0:
            blocks.append("".join(cur))
            cur = []
        else:
            cur.append(ch)
    if depth != 0:
        raise ValidationError(f"unbalanced brackets in lattice spec {text!r}")
    blocks.append("".join(cur))
    return [b.strip() for b in blocks]


def _parse_block(block: str) -> IntegerLattice:
    if block.startswith("gram:"):
        payload = block[len("gram:"):].strip()
        try:
            rows = json.loads(payload)
        except json.JSONDecodeError as exc:
            raise ValidationError(f"bad gram payload {payload!r}: {exc}") from exc
        if not isinstance(rows, list) or not all(isinstance(r, list) for r in rows):
            raise ValidationError(f"gram payload must be a list of lists: {payload!r}")
        return from_gram(rows)
    if block == "1":
        return diagonal_lattice([1])
    if block == "-1":
        return diagonal_lattice([-1])
    if block == "H":
        return hyperbolic_plane()
    if block == "E8(+1)":
        return e8_lattice(1)
    if block == "E8(-1)":
        return e8_lattice(-1)
    raise ValidationError(f"unknown lattice block {block!r}")


def parse_lattice_spec(text: str) -> IntegerLattice:
    """Build a lattice from the mini-language, e.g. "1,-1x8" or "E8(-1)+Hx3"."""
    if not text or not text.strip():
        raise ValidationError("empty lattice spec")
    parts: list[IntegerLattice] = []
    for block in _split_blocks(text):
        if not block:
            raise ValidationError(f"empty block in lattice spec {text!r}")
        count = 1
        base = block
        head, sep, tail = block.rpartition("x")
        if sep and tail.isdigit() and head and not head.startswith("gram:"):
            base = head.strip()
            count = int(tail)
            if count < 1:
                raise ValidationError(f"repetition count must be >= 1 in {block!r}")
        piece = _parse_block(base)
        parts.extend([piece] * count)
    return direct_sum(*parts)


@lru_cache(maxsize=256)
def _cached_index(gram: tuple[tuple[int, ...], ...]) -> int:
    return signature(IntegerLattice(gram)).index


def lattice_index(lattice: IntegerLattice) -> int:
    """The signature index, cached per Gram matrix."""
    return _cached_index(lattice.gram)
