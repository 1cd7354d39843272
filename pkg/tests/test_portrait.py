from fractions import Fraction
import random

import pytest
from hypothesis import given, strategies as st

from raylam.circle import Angle, sigma
from raylam.exceptions import (
    InvalidOrbit,
    NotFound,
    NotInjective,
    OrderNotPreserved,
    PrefixTooShort,
    Straddles,
)
from raylam.portrait import (
    Portrait,
    Sector,
    containing_sector,
    dump_orbit,
    first_narrow_time,
    key_inequality_audit,
    load_orbit,
    map_portrait,
    narrow_profile,
    nesting_report,
    sector_image,
    sectors,
)
from oracles import ccw, frac_mod, gaps

RABBIT = Portrait(["1/7", "2/7", "4/7"])


def P(*xs):
    return Portrait([Angle(x) for x in xs])


def orbit_of(T, d, length):
    out = [T]
    for _ in range(length - 1):
        out.append(map_portrait(out[-1], d))
    return out


@pytest.mark.parametrize("T,sizes", [
    (("1/7", "2/7", "4/7"), ["1/7", "2/7", "4/7"]),
    (("0", "1/2"), ["1/2", "1/2"]),
    (("1/3", "2/3", "5/6"), ["1/6", "1/3", "1/2"]),
])
def test_sector_sizes(T, sizes):
    assert [s.annular_size for s in sectors(P(*T))] == [Fraction(x) for x in sizes]


@given(st.lists(st.fractions(min_value=0, max_value=1, max_denominator=90), min_size=2, max_size=6, unique=True))
def test_sector_sizes_match_gaps(xs):
    pts = {frac_mod(x) for x in xs}
    if len(pts) < 2:
        return
    T = Portrait(pts)
    assert [s.annular_size for s in sectors(T)] == sorted(gaps(pts))
    assert sum(s.annular_size for s in sectors(T)) == 1


def test_portrait_validation():
    with pytest.raises(ValueError):
        Portrait([Angle(0)])
    with pytest.raises(ValueError):
        Portrait([Angle(0), Angle(1)])
    assert RABBIT.valence == 3 and RABBIT.is_branched


def test_map_portrait_examples():
    assert map_portrait(RABBIT) == RABBIT
    with pytest.raises(NotInjective):
        map_portrait(P("1/14", "4/7"))
    assert map_portrait(P("1/5", "2/5", "3/5")) == P("2/5", "4/5", "1/5")


def test_map_portrait_order_check():
    # 0, 1/8, 5/8 doubles to 0, 1/4, 1/4 -> collision; use a reversal instead
    with pytest.raises(OrderNotPreserved):
        map_portrait(P("0", "1/3", "2/5", "3/4"), 2)


def test_sector_image_examples():
    S = Sector.between(Angle(4, 7), Angle(1, 7))
    image, count = sector_image(S, RABBIT)
    assert (image.theta_a, image.theta_b, image.annular_size, count) == (Angle(1, 7), Angle(2, 7), Fraction(1, 7), 1)
    image, count = sector_image(Sector.between(Angle(1, 7), Angle(2, 7)), RABBIT)
    assert (image.theta_a, image.theta_b, image.annular_size, count) == (Angle(2, 7), Angle(4, 7), Fraction(2, 7), 0)


def test_sector_image_degenerate_pair():
    T = P("0", "1/2")
    image, count = sector_image(Sector.between(Angle(0), Angle(1, 2)), T)
    assert image.annular_size == 1 and count == 1
    assert image.arc.is_punctured and Angle(0) not in image.arc


def _random_mappable(rng, d):
    while True:
        v = rng.randint(2, 5)
        q = rng.randint(v + 1, 120)
        T = Portrait({Angle(rng.randrange(1, q), q) for _ in range(v)} | {Angle(0)})
        try:
            map_portrait(T, d)
            return T
        except (NotInjective, OrderNotPreserved):
            continue


@given(st.integers(0, 10**6), st.integers(2, 4))
def test_sector_image_identity(seed, d):
    rng = random.Random(seed)
    T = _random_mappable(rng, d)
    total = 0
    for S in sectors(T):
        image, count = sector_image(S, T, d)
        l = S.annular_size
        # oracle: image length from the images of the two end angles
        expected_len = ccw(sigma(S.theta_a, d), sigma(S.theta_b, d))
        assert image.annular_size == expected_len
        assert d * l - image.annular_size == count >= 0
        if l < Fraction(1, d):
            assert count == 0 and image.annular_size == d * l
        total += count
    # every sector count adds up to the d - 1 critical points
    assert total == d - 1


def test_containing_sector_examples():
    s = containing_sector(RABBIT, [Angle(3, 7)])
    assert (s.theta_a, s.theta_b) == (Angle(2, 7), Angle(4, 7))
    with pytest.raises(Straddles):
        containing_sector(RABBIT, [Angle(3, 7), Angle(6, 7)])
    s = containing_sector(RABBIT, [Angle(5, 7), Angle(6, 7)])
    assert (s.theta_a, s.theta_b) == (Angle(4, 7), Angle(1, 7))


def test_nesting_report_rabbit_and_coalpha():
    coalpha = P("1/14", "9/14", "11/14")
    rep = nesting_report(RABBIT, coalpha)
    assert rep["ok"]
    assert (rep["S"].theta_a, rep["S"].theta_b) == (Angle(4, 7), Angle(1, 7))


D3_ORBIT_START = P("0", "1/10", "17/80")


def _narrow_oracle(start, d, eps, k):
    pts = list(start.angles)
    n = 0
    while True:
        if sorted(gaps(pts))[k - 1] < eps:
            return n, sorted(gaps(pts))[k - 1]
        pts = [frac_mod(d * x) for x in pts]
        n += 1


def test_first_narrow_time_constructed_d3():
    orbit = orbit_of(D3_ORBIT_START, 3, 6)
    cert = first_narrow_time(orbit, 3, Fraction(1, 10), 1)
    n, size = _narrow_oracle(D3_ORBIT_START, 3, Fraction(1, 10), 1)
    assert (cert.n, cert.narrow_size) == (n, size) == (2, Fraction(1, 80))
    # the sector of size 27/80 wraps past a critical point onto the narrow one
    assert cert.k0 == 1
    assert cert.source_sector.annular_size == Fraction(27, 80)
    assert cert.critical_value_sector.annular_size == Fraction(1, 80)


def test_first_narrow_time_periodic_not_found():
    with pytest.raises(NotFound):
        first_narrow_time([RABBIT] * 5, 2, Fraction(1, 8), 1)


def test_first_narrow_time_invalid_orbit():
    with pytest.raises(InvalidOrbit):
        first_narrow_time([RABBIT, P("1/7", "2/7", "3/7")], 2, Fraction(1, 8), 1)
    with pytest.raises(ValueError):
        first_narrow_time([RABBIT], 2, Fraction(1, 8), 2)


def test_narrow_profile_tail_maxima():
    prof = narrow_profile(orbit_of(D3_ORBIT_START, 3, 4))
    sizes = [s for s, _ in prof]
    assert [t for _, t in prof] == [max(sizes[i:]) for i in range(len(sizes))]


def test_key_inequality_rabbit_flags_periodic():
    rep = key_inequality_audit([[RABBIT] * 4], 2, Fraction(1, 10))
    assert rep.excess == 1 and rep.bound == 0
    assert not rep.consistent and not rep.wandering
    assert any("periodic" in n for n in rep.notes)
    assert not rep.passed


def test_key_inequality_empty_is_vacuous():
    rep = key_inequality_audit([], 3, Fraction(1, 10))
    assert rep.passed and rep.excess == 0 and rep.bound == 1


def test_key_inequality_constructed_d4():
    orbit = orbit_of(P("0", "19/99", "46/99"), 4, 8)
    rep = key_inequality_audit([orbit], 4, Fraction(1, 8))
    assert rep.passed and rep.consistent and rep.wandering and rep.disjoint
    # the base epsilon witness plus one witness per excess valence unit
    assert len(rep.witnesses) == rep.excess + 1 == 2
    arcs = [str(c.critical_value_sector.arc) for _, c in rep.witnesses]
    assert arcs == ["(76/99, 85/99)", "(0, 7/99)"]
    assert [c.n for _, c in rep.witnesses] == [1, 2]


def test_key_inequality_short_prefix():
    orbit = orbit_of(P("0", "19/99", "46/99"), 4, 2)
    with pytest.raises(PrefixTooShort):
        key_inequality_audit([orbit], 4, Fraction(1, 8))


def test_key_inequality_rejects_shared_angles():
    with pytest.raises(ValueError):
        key_inequality_audit([[RABBIT], [RABBIT]], 2, Fraction(1, 8))


def test_orbit_file_roundtrip():
    orbit = orbit_of(P("0", "19/99", "46/99"), 4, 3)
    text = "# comment\n\n" + dump_orbit(orbit)
    assert load_orbit(text) == orbit
