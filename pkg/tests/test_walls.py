"""Wall predicates, bounded enumeration, certificates, and witness search."""

import random
from fractions import Fraction
from itertools import product

import pytest

from spinwalls import (
    BundleTopology,
    FormulationDisagreement,
    ValidationError,
    WallQuery,
    add,
    chi_line,
    chi_rank2,
    diagonal_lattice,
    e8_lattice,
    emptiness_certificate,
    enumerate_walls,
    hyperbolic_plane,
    is_hurdle_class,
    is_wall_class,
    neg,
    pairing,
    polarization_check,
    scale,
    shift,
    sub,
    witness_search,
    zero,
)

RANK2 = diagonal_lattice([1, -1])


def engineered_query(**overrides):
    kwargs = dict(
        lattice=RANK2, c1=(1, 1), spin_c=(1, 1), p1=-4, r=1, bound=6, center=None
    )
    kwargs.update(overrides)
    return WallQuery(**kwargs)


# -- query validation

def test_query_rejects_bad_p1_parity():
    with pytest.raises(ValidationError):
        WallQuery(RANK2, (1, 1), (1, 1), p1=-3, r=1, bound=2)


def test_query_rejects_bad_level_and_bound():
    with pytest.raises(ValidationError):
        engineered_query(r=0)
    with pytest.raises(ValidationError):
        engineered_query(bound=-1)


def test_query_rejects_rank_mismatch():
    with pytest.raises(ValidationError):
        WallQuery(RANK2, (1, 1, 1), (1, 1), p1=-4, r=1, bound=2)


def test_query_from_c2():
    q = WallQuery.from_c2(RANK2, (1, 1), (1, 1), c2=1, r=1, bound=2)
    assert q.p1 == -4
    assert q.matched is False
    assert engineered_query(spin_c=(-1, -1)).matched is True


# -- hurdle predicate

def test_hurdle_at_delta_zero():
    q = WallQuery(RANK2, (1, 1), (1, 1), p1=0, r=1, bound=2)
    assert is_hurdle_class(q, (1, 1))


def test_hurdle_rejects_wrong_parity():
    q = engineered_query()
    assert not is_hurdle_class(q, (0, 1))


def test_hurdle_barlow_square_unreachable(barlow_lattice, barlow_k, barlow_spin):
    # all-odd vectors have e^2 = 1 mod 8, so e^2 = -3 has no solution;
    # the bounded search must come back empty
    q = WallQuery(barlow_lattice, barlow_k, barlow_spin, p1=-3, r=1, bound=2)
    found = []
    for delta in product(range(-2, 3), repeat=2):
        e = sub(barlow_k, scale(delta + (0,) * 7, 2))
        if is_hurdle_class(q, e):
            found.append(e)
    rng = random.Random(2)
    for _ in range(4000):
        delta = tuple(rng.randint(-2, 2) for _ in range(9))
        e = sub(barlow_k, scale(delta, 2))
        assert not is_hurdle_class(q, e)
        assert (pairing(barlow_lattice, e, e) - 1) % 8 == 0
    assert found == []


def test_hurdle_positive_case_rank2():
    lattice = RANK2
    q = WallQuery(lattice, (1, 0), (1, 1), p1=-3, r=1, bound=3)
    hits = [
        sub((1, 0), scale(delta, 2))
        for delta in product(range(-3, 4), repeat=2)
        if is_hurdle_class(q, sub((1, 0), scale(delta, 2)))
    ]
    assert (1, 2) in hits
    assert all(pairing(lattice, e, e) == -3 for e in hits)


# -- the wall predicate and its three formulations

def test_wall_predicate_trivial_rejections():
    q = engineered_query()
    assert not is_wall_class(q, (0, 0))  # c1^2 = 0 but chi too small
    q2 = WallQuery(diagonal_lattice([1, 1]), (1, 1), (1, 1), p1=-2, r=1, bound=2)
    assert not is_wall_class(q2, (0, 0))  # condition 1 fails: c1^2 = 2 > 0


def test_wall_predicate_known_wall():
    assert is_wall_class(engineered_query(), (1, 0))


def test_formulation_disagreement_is_trapped(monkeypatch):
    import spinwalls.walls as walls_mod

    monkeypatch.setattr(walls_mod, "_wall_shifted", lambda q, d: True)
    with pytest.raises(FormulationDisagreement):
        is_wall_class(engineered_query(), (0, 0))


def brute_force_walls(query):
    """The definitional oracle: try every point of the box directly."""
    center = query.box_center
    ranges = [range(c - query.bound, c + query.bound + 1) for c in center]
    out = []
    for delta in product(*ranges):
        if is_wall_class(query, delta):
            out.append((delta, "+"))
        if is_wall_class(query, sub(query.c1, delta)):
            out.append((delta, "-"))
    return sorted(out)


def test_enumerate_matches_brute_force_oracle():
    q = engineered_query()
    result = enumerate_walls(q)
    got = [(w.delta, w.orientation) for w in result.walls]
    assert got == brute_force_walls(q)
    assert len(result) == 12
    assert result.complete_within_box


def test_enumerate_mixed_gram_against_oracle():
    lattice = hyperbolic_plane()
    q = WallQuery(lattice, (1, 1), (2, 0), p1=-2, r=1, bound=4)
    result = enumerate_walls(q)
    assert [(w.delta, w.orientation) for w in result.walls] == brute_force_walls(q)


def test_enumerate_bound_zero_tests_only_origin():
    q = WallQuery(RANK2, (0, 0), (2, 0), p1=0, r=1, bound=0)
    result = enumerate_walls(q)
    assert result.box_bound == 0
    for w in result.walls:
        assert w.delta == (0, 0)


def test_enumerate_split_walls_and_duality():
    # p1 = 0 makes every wall a genuine splitting (e^2 = p1); the mirror
    # delta -> c1 - delta swaps orientation and negates e
    q = engineered_query(p1=0)
    result = enumerate_walls(q)
    plus = {w.delta: w for w in result.walls if w.orientation == "+"}
    minus = {w.delta: w for w in result.walls if w.orientation == "-"}
    assert sorted(plus) == [(1, 0), (2, -1), (3, -2), (4, -3), (5, -4), (6, -5)]
    assert sorted(minus) == [(-5, 6), (-4, 5), (-3, 4), (-2, 3), (-1, 2), (0, 1)]
    for delta, record in plus.items():
        mirror = sub(q.c1, delta)
        if mirror in minus:
            twin = minus[mirror]
            assert twin.e == neg(record.e)
            assert twin.chi == record.chi
    # rank-2 sheaf index at the split value of c2 is nonpositive here,
    # so at most one side of each splitting has positive line index
    bundle_chi = chi_rank2(q.lattice, q.spin_c, BundleTopology(q.c1, 0), q.index)
    assert bundle_chi <= 0
    for record in result.walls:
        assert record.e_square == q.p1
        chi_self = chi_line(q.lattice, q.spin_c, record.delta, q.index)
        chi_mirror = chi_line(q.lattice, q.spin_c, sub(q.c1, record.delta), q.index)
        assert not (chi_self > 0 and chi_mirror > 0)


def test_enumerate_boundary_theorem_silent():
    # index -8 with r = 1 sits exactly on 8r = -I: walls exist
    lattice = diagonal_lattice([1] + [-1] * 9)
    c1 = (3,) + (1,) * 9
    q = WallQuery(lattice, c1, neg(c1), p1=-4, r=1, bound=1)
    result = enumerate_walls(q)
    assert len(result) == 10240
    keyed = [(w.delta, w.orientation) for w in result.walls]
    assert keyed == sorted(keyed)
    for w in result.walls[:: len(result) // 64]:
        component = w.delta if w.orientation == "+" else sub(c1, w.delta)
        assert is_wall_class(q, component)
        assert w.e == sub(c1, scale(w.delta, 2))
        assert w.Delta == neg(add(q.spin_c, scale(w.delta, 2)))
        assert w.chi >= q.r
    cert = emptiness_certificate(q)
    assert cert.status == "theorem-silent"
    assert len(cert.search) == 10240


def test_enumerate_workers_deterministic():
    q = engineered_query()
    solo = enumerate_walls(q)
    duo = enumerate_walls(q, workers=2)
    assert solo == duo


def test_enumerate_budget_rejected():
    q = engineered_query(bound=6)
    with pytest.raises(ValidationError, match="budget"):
        enumerate_walls(q, max_box=10)


def test_shift_bijection_with_translated_box():
    base = engineered_query(bound=5)
    walls0 = enumerate_walls(base)
    rng = random.Random(19)
    for _ in range(25):
        lam = (rng.randint(-4, 4), rng.randint(-4, 4))
        c1s, spin_s = shift(base.c1, base.spin_c, lam)
        shifted = WallQuery(
            base.lattice, c1s, spin_s, base.p1, base.r, base.bound, center=lam
        )
        walls1 = enumerate_walls(shifted)
        mapped = sorted(
            (add(w.delta, lam), w.orientation, w.e_square, w.chi) for w in walls0.walls
        )
        direct = sorted(
            (w.delta, w.orientation, w.e_square, w.chi) for w in walls1.walls
        )
        assert mapped == direct


# -- emptiness certificates

def test_certificate_barlow_valid(barlow_lattice, barlow_k, barlow_spin):
    q = WallQuery(barlow_lattice, barlow_k, barlow_spin, p1=-3, r=1, bound=6)
    cert = emptiness_certificate(q)
    assert cert.status == "valid"
    assert (cert.eight_r, cert.minus_index) == (8, 7)
    assert len(cert.search) == 0
    assert any("8r" in line for line in cert.derivation)


def test_certificate_not_applicable_when_unmatched():
    cert = emptiness_certificate(engineered_query())
    assert cert.status == "not-applicable"
    assert cert.search is None


def test_certificate_silent_on_e8():
    # index -8, r = 1: the bound 8r > -I just fails, and a wall sits at 0
    lattice = e8_lattice(-1)
    q = WallQuery(lattice, zero(8), zero(8), p1=-4, r=1, bound=2)
    cert = emptiness_certificate(q)
    assert cert.status == "theorem-silent"
    deltas = [w.delta for w in cert.search.walls]
    assert zero(8) in deltas


def test_certificate_valid_on_e8_level_2():
    lattice = e8_lattice(-1)
    q = WallQuery(lattice, zero(8), zero(8), p1=-4, r=2, bound=2)
    cert = emptiness_certificate(q)
    assert cert.status == "valid"
    assert len(cert.search) == 0


# -- witness search

def test_witness_ten_point_blowup_model():
    lattice = diagonal_lattice([1] + [-1] * 10)
    canonical = (-3,) + (1,) * 10
    report = witness_search(lattice, canonical, r=2, bound=3)
    assert report.status == "found"
    assert report.value >= 2
    assert report.delta == (1, -1) + (0,) * 9
    probe = (1,) + (0,) * 10
    assert pairing(lattice, probe, sub(probe, canonical)) >= 2


def test_witness_level_one_trivial():
    lattice = diagonal_lattice([1])
    report = witness_search(lattice, (1,), r=1, bound=1)
    assert report.status == "found"
    assert report.value >= 0


def test_witness_hypothesis_unmet():
    report = witness_search(RANK2, (1, 1), r=1, bound=2)  # K^2 = 0: 0 < 0 fails
    assert report.status == "hypothesis-unmet"
    assert report.delta is None


def test_witness_none_in_box():
    lattice = diagonal_lattice([1, -1])
    canonical = (1, 0)  # K^2 = 1, hypothesis -1 < 8 holds for r = 2
    report = witness_search(lattice, canonical, r=2, bound=0)
    assert report.status == "none-in-box"


# -- polarization comparison

def test_polarization_strict():
    lattice = diagonal_lattice([1] + [-1] * 10)
    canonical = (-3,) + (1,) * 10
    h = (4,) + (1,) * 10
    assert pairing(lattice, canonical, h) == -12 - 10  # sanity: K.H < 0 here
    delta = (1,) + (0,) * 10
    assert polarization_check(lattice, delta, canonical, h) is (2 * 4 < -22)
    # boundary: 2 delta.H == K.H is not a pass
    assert not polarization_check(RANK2, (1, 0), (2, 0), (1, 0))
