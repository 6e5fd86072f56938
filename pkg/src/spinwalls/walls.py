"""Wall predicates and certified bounded enumeration of wall classes.

A class delta is a wall class for data (c1, C, p1, r) when

    1)  0 >= (c1 - 2*delta)^2 >= p1, and
    2)  chi_C(L_delta) >= r,

with the mirror clause chi_C(L_{c1-delta}) >= r defining the opposite
orientation of the same geometric wall.  Three arithmetically equivalent
formulations of the predicate are evaluated side by side on every call;
any disagreement is reported as an implementation bug, never swallowed.

Wall sets in indefinite lattices can be infinite, so enumeration is
confined to a coefficient box and every report carries the box bound:
results are certified only within the box.  The search itself is a
depth-first scan with exact interval pruning (see ``boxsearch``), which
is what makes rank-10 boxes with half-width 6 feasible; in the matched
case c1 = -C both wall conditions constrain the same quadratic and the
combined window is intersected before searching, so the emptiness
theorem manifests as an immediate prune.
"""

from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction

from .boxsearch import AffineSquares
from .errors import FormulationDisagreement, ValidationError
from .index_theory import chi_line
from .lattice import (
    IntegerLattice,
    Vector,
    add,
    lattice_index,
    neg,
    pairing,
    scale,
    sub,
    vector,
    zero,
)

DEFAULT_MAX_BOX = 10**8


@dataclass(frozen=True)
class WallQuery:
    """Search data: lattice, determinant class c1, spin class, p1, level, box."""

    lattice: IntegerLattice
    c1: Vector
    spin_c: Vector
    p1: int
    r: int
    bound: int
    center: Vector | None = None

    def __post_init__(self) -> None:
        object.__setattr__(self, "c1", vector(self.c1))
        object.__setattr__(self, "spin_c", vector(self.spin_c))
        n = self.lattice.rank
        if len(self.c1) != n or len(self.spin_c) != n:
            raise ValidationError("c1 and the spin class must match the lattice rank")
        if self.center is not None:
            object.__setattr__(self, "center", vector(self.center))
            if len(self.center) != n:
                raise ValidationError("box center must match the lattice rank")
        if self.r < 1:
            raise ValidationError(f"jumping level must be >= 1, got {self.r}")
        if self.bound < 0:
            raise ValidationError(f"box bound must be >= 0, got {self.bound}")
        c1_sq = pairing(self.lattice, self.c1, self.c1)
        if (c1_sq - self.p1) % 4 != 0:
            raise ValidationError(
                f"p1 = {self.p1} is not congruent to c1^2 = {c1_sq} mod 4; "
                "no integer c2 realizes it"
            )

    @classmethod
    def from_c2(cls, lattice, c1, spin_c, c2, r, bound, center=None) -> "WallQuery":
        p1 = pairing(lattice, vector(c1), vector(c1)) - 4 * c2
        return cls(lattice, c1, spin_c, p1, r, bound, center)

    @property
    def index(self) -> int:
        return lattice_index(self.lattice)

    @property
    def matched(self) -> bool:
        """True in the case c1 = -C, where the emptiness theorem applies."""
        return self.c1 == neg(self.spin_c)

    @property
    def box_center(self) -> Vector:
        return self.center if self.center is not None else zero(self.lattice.rank)

    def box_volume(self) -> int:
        return (2 * self.bound + 1) ** self.lattice.rank


@dataclass(frozen=True)
class WallClass:
    """One oriented wall record.

    ``chi`` is the line index of the component whose clause fired:
    chi_C(L_delta) for orientation '+', chi_C(L_{c1-delta}) for '-'.
    """

    delta: Vector
    e: Vector
    Delta: Vector
    e_square: int
    chi: int | Fraction
    orientation: str


@dataclass(frozen=True)
class WallSearchResult:
    walls: tuple[WallClass, ...]
    box_bound: int
    center: Vector
    candidates_examined: int
    complete_within_box: bool = True

    def __iter__(self):
        return iter(self.walls)

    def __len__(self) -> int:
        return len(self.walls)


# ---------------------------------------------------------------------------
# the wall predicate, in its three equivalent formulations

def _wall_direct(query: WallQuery, delta: Vector) -> bool:
    e = sub(query.c1, scale(delta, 2))
    e_sq = pairing(query.lattice, e, e)
    if not (0 >= e_sq >= query.p1):
        return False
    w = add(query.spin_c, scale(delta, 2))
    return pairing(query.lattice, w, w) >= 8 * query.r + query.index


def _wall_inequalities(query: WallQuery, delta: Vector) -> bool:
    latt = query.lattice
    c1_sq = pairing(latt, query.c1, query.c1)
    mid = pairing(latt, query.c1, delta) - pairing(latt, delta, delta)
    if not (Fraction(c1_sq, 4) <= mid <= Fraction(c1_sq - query.p1, 4)):
        return False
    c_sq = pairing(latt, query.spin_c, query.spin_c)
    lhs = -pairing(latt, query.spin_c, delta) - pairing(latt, delta, delta)
    return lhs <= Fraction(c_sq - query.index, 4) - 2 * query.r


def _wall_shifted(query: WallQuery, delta: Vector) -> bool:
    big_delta = neg(add(query.spin_c, scale(delta, 2)))
    s = add(big_delta, add(query.c1, query.spin_c))
    s_sq = pairing(query.lattice, s, s)
    if not (0 >= s_sq >= query.p1):
        return False
    return pairing(query.lattice, big_delta, big_delta) >= 8 * query.r + query.index


def is_wall_class(query: WallQuery, delta: Vector) -> bool:
    """Wall predicate for delta, cross-checked across all three formulations."""
    delta = vector(delta)
    if len(delta) != query.lattice.rank:
        raise ValidationError("delta must match the lattice rank")
    verdicts = (
        _wall_direct(query, delta),
        _wall_inequalities(query, delta),
        _wall_shifted(query, delta),
    )
    if len(set(verdicts)) != 1:
        raise FormulationDisagreement(
            f"wall formulations disagree at delta={delta}: "
            f"direct={verdicts[0]}, inequalities={verdicts[1]}, shifted={verdicts[2]}"
        )
    return verdicts[0]


def is_hurdle_class(query: WallQuery, e: Vector) -> bool:
    """True when e is congruent to c1 mod 2 and e^2 equals p1 exactly.

    This is the strict splitting condition; the wall predicate relaxes
    the equality to p1 <= e^2 <= 0.
    """
    e = vector(e)
    if len(e) != query.lattice.rank:
        raise ValidationError("e must match the lattice rank")
    if any((a - b) % 2 for a, b in zip(e, query.c1)):
        return False
    return pairing(query.lattice, e, e) == query.p1


def _wall_record(query: WallQuery, delta: Vector, orientation: str) -> WallClass:
    e = sub(query.c1, scale(delta, 2))
    comp = delta if orientation == "+" else sub(query.c1, delta)
    chi = chi_line(query.lattice, query.spin_c, comp, query.index)
    if chi.denominator == 1:
        chi = int(chi)
    return WallClass(
        delta=delta,
        e=e,
        Delta=neg(add(query.spin_c, scale(delta, 2))),
        e_square=pairing(query.lattice, e, e),
        chi=chi,
        orientation=orientation,
    )


# ---------------------------------------------------------------------------
# enumeration

def _slice_walls(
    query: WallQuery, first: int, max_box: int
) -> tuple[list[WallClass], int]:
    """Enumerate the box slice with delta_0 = first, in lexicographic order."""
    latt = query.lattice
    n = latt.rank
    center = query.box_center
    lows = tuple(c - query.bound for c in center)
    highs = tuple(c + query.bound for c in center)
    threshold = 8 * query.r + query.index

    trk_e = AffineSquares(latt, query.c1, -2, lows, highs)
    mult = trk_e.multiplier
    if query.matched:
        # both clauses reduce to e^2 >= 8r + I; intersect with condition 1
        e_lo = mult * max(query.p1, threshold)
        e_hi = 0
        others: list[AffineSquares] = []
    else:
        e_lo, e_hi = mult * query.p1, 0
        trk_w = AffineSquares(latt, query.spin_c, 2, lows, highs)
        trk_wm = AffineSquares(
            latt, add(query.spin_c, scale(query.c1, 2)), -2, lows, highs
        )
        others = [trk_w, trk_wm]
    w_min = mult * threshold
    if e_lo > e_hi:
        # the required window for e^2 is empty, so no wall class can exist;
        # in the matched case this is exactly how the emptiness theorem bites
        return [], 0

    hits: list[WallClass] = []
    nodes = 0

    def feasible(pe, pos, depth) -> bool:
        lo, hi = trk_e.bounds(pe, depth)
        if lo > e_hi or hi < e_lo:
            return False
        if not others:
            return True
        return any(t.bounds(p, depth)[1] >= w_min for t, p in zip(others, pos))

    def descend(depth, pe, pos, prefix) -> None:
        nonlocal nodes
        if depth == n:
            q_e = trk_e.value(pe)
            if not (e_lo <= q_e <= e_hi):
                return
            delta = tuple(prefix)
            if query.matched:
                plus = minus = q_e >= w_min
            else:
                plus = others[0].value(pos[0]) >= w_min
                minus = others[1].value(pos[1]) >= w_min
            if plus:
                _verify_hit(query, delta, delta)
                hits.append(_wall_record(query, delta, "+"))
            if minus:
                _verify_hit(query, delta, sub(query.c1, delta))
                hits.append(_wall_record(query, delta, "-"))
            return
        lo_t, hi_t = (first, first) if depth == 0 else (lows[depth], highs[depth])
        for value in range(lo_t, hi_t + 1):
            nodes += 1
            if nodes > max_box:
                raise ValidationError(
                    f"box search budget exceeded: more than {max_box} candidates "
                    f"(raw box volume {query.box_volume()}); raise the cap to proceed"
                )
            pe2 = trk_e.advance(pe, depth, value)
            pos2 = [t.advance(p, depth, value) for t, p in zip(others, pos)]
            prefix.append(value)
            if feasible(pe2, pos2, depth + 1):
                descend(depth + 1, pe2, pos2, prefix)
            prefix.pop()

    descend(0, trk_e.start(), [t.start() for t in others], [])
    return hits, nodes


def _verify_hit(query: WallQuery, delta: Vector, component: Vector) -> None:
    # independent re-derivation of each emitted record through all three
    # formulations; a mismatch with the search arithmetic is a bug
    if not is_wall_class(query, component):
        raise FormulationDisagreement(
            f"search emitted delta={delta} but the wall predicate rejects "
            f"component {component}"
        )


def _slice_task(args):
    query, first, max_box = args
    return _slice_walls(query, first, max_box)


def enumerate_walls(
    query: WallQuery, workers: int = 1, max_box: int = DEFAULT_MAX_BOX
) -> WallSearchResult:
    """All wall classes inside the coefficient box, both orientations.

    Records are sorted lexicographically by delta, '+' before '-'.  The
    search fans out over slices of the first coordinate when ``workers``
    exceeds one; output is identical for every worker count.  Results
    are complete within the box and say nothing beyond it.  The budget
    caps candidates actually examined, so sharply pruned searches may
    legitimately cover boxes whose raw volume exceeds it.
    """
    if workers < 1:
        raise ValidationError(f"workers must be >= 1, got {workers}")
    if max_box < 1:
        raise ValidationError(f"max_box must be >= 1, got {max_box}")
    c0 = query.box_center[0]
    firsts = range(c0 - query.bound, c0 + query.bound + 1)
    if workers == 1 or len(firsts) == 1:
        slices = [_slice_walls(query, f, max_box) for f in firsts]
    else:
        tasks = [(query, f, max_box) for f in firsts]
        with ProcessPoolExecutor(max_workers=workers) as pool:
            slices = list(pool.map(_slice_task, tasks))
    walls: list[WallClass] = []
    nodes = 0
    for hit_list, node_count in slices:
        walls.extend(hit_list)
        nodes += node_count
    return WallSearchResult(
        walls=tuple(walls),
        box_bound=query.bound,
        center=query.box_center,
        candidates_examined=nodes,
    )


# ---------------------------------------------------------------------------
# the emptiness certificate

@dataclass(frozen=True)
class EmptinessCertificate:
    """Outcome of the matched-case emptiness test, with its derivation.

    ``status`` is 'valid' when 8r > -I so the wall system is provably
    empty, 'theorem-silent' when 8r <= -I (the box search alone then
    decides, within the box), and 'not-applicable' when c1 != -C.
    """

    status: str
    eight_r: int
    minus_index: int
    derivation: tuple[str, ...] = ()
    search: WallSearchResult | None = None


def emptiness_certificate(
    query: WallQuery, workers: int = 1, max_box: int = DEFAULT_MAX_BOX
) -> EmptinessCertificate:
    eight_r = 8 * query.r
    minus_index = -query.index
    if not query.matched:
        return EmptinessCertificate("not-applicable", eight_r, minus_index)
    search = enumerate_walls(query, workers=workers, max_box=max_box)
    if eight_r > minus_index:
        derivation = (
            "condition 1 gives (1/4)c1^2 <= c1.delta - delta^2",
            "with C = -c1, condition 2 gives c1.delta - delta^2 <= (1/4)c1^2 - (1/4)I - 2r",
            "together: 2r <= -(1/4)I, i.e. 8r <= -I",
            f"but 8r = {eight_r} > {minus_index} = -I, a contradiction: no wall class exists",
        )
        if len(search) != 0:
            raise FormulationDisagreement(
                "emptiness certificate valid but the box search found walls: "
                f"{search.walls[:3]}..."
            )
        return EmptinessCertificate("valid", eight_r, minus_index, derivation, search)
    derivation = (
        f"8r = {eight_r} <= {minus_index} = -I: the theorem is silent, "
        "only the box search below applies",
    )
    return EmptinessCertificate(
        "theorem-silent", eight_r, minus_index, derivation, search
    )


# ---------------------------------------------------------------------------
# witness search and polarization arithmetic

@dataclass(frozen=True)
class WitnessReport:
    status: str  # 'found' | 'none-in-box' | 'hypothesis-unmet'
    delta: Vector | None = None
    value: int | None = None  # delta.(delta - K) at the witness


def witness_search(
    picard: IntegerLattice,
    canonical: Vector,
    r: int,
    bound: int,
    max_box: int = DEFAULT_MAX_BOX,
) -> WitnessReport:
    """First delta (lexicographically) with delta.(delta - K) >= 2(r-1).

    Applies under the hypothesis -K^2 < 8(r-1); otherwise reports
    'hypothesis-unmet' without searching.  The inequality is searched
    through its completed-square form (2*delta - K)^2 >= K^2 + 8(r-1),
    which reuses the exact interval pruning.
    """
    canonical = vector(canonical)
    if len(canonical) != picard.rank:
        raise ValidationError("canonical class must match the lattice rank")
    if r < 1:
        raise ValidationError(f"jumping level must be >= 1, got {r}")
    if bound < 0:
        raise ValidationError(f"box bound must be >= 0, got {bound}")
    k_sq = pairing(picard, canonical, canonical)
    if not (-k_sq < 8 * (r - 1)):
        return WitnessReport("hypothesis-unmet")
    n = picard.rank
    lows = (-bound,) * n
    highs = (bound,) * n
    tracker = AffineSquares(picard, neg(canonical), 2, lows, highs)
    need = tracker.multiplier * (k_sq + 8 * (r - 1))
    nodes = 0

    def descend(depth, partial, prefix):
        nonlocal nodes
        if depth == n:
            if tracker.value(partial) >= need:
                return tuple(prefix)
            return None
        for value in range(-bound, bound + 1):
            nodes += 1
            if nodes > max_box:
                raise ValidationError(
                    f"box search budget exceeded: more than {max_box} candidates "
                    f"(raw box volume {(2 * bound + 1) ** n})"
                )
            nxt = tracker.advance(partial, depth, value)
            if tracker.bounds(nxt, depth + 1)[1] >= need:
                prefix.append(value)
                found = descend(depth + 1, nxt, prefix)
                if found is not None:
                    return found
                prefix.pop()
        return None

    delta = descend(0, tracker.start(), [])
    if delta is None:
        return WitnessReport("none-in-box")
    value = pairing(picard, delta, sub(delta, canonical))
    if value < 2 * (r - 1):
        raise FormulationDisagreement(
            f"witness search accepted delta={delta} but the direct pairing "
            f"gives {value} < {2 * (r - 1)}"
        )
    return WitnessReport("found", delta, value)


def polarization_check(
    picard: IntegerLattice, delta: Vector, canonical: Vector, polarization: Vector
) -> bool:
    """Strict inequality 2*(delta.H) < K.H for the given polarization H."""
    return 2 * pairing(picard, delta, polarization) < pairing(
        picard, canonical, polarization
    )
