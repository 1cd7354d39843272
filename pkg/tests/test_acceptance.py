"""Acceptance suite.

Each test checks one acceptance criterion at its stated tolerance and prints
a single ``[n] PASS`` / ``[n] FAIL`` line with the elapsed time.  Run with

    pytest tests/test_acceptance.py

or directly as ``python tests/test_acceptance.py``.
"""

from fractions import Fraction
from math import log, sqrt
import io
import random
import time

import pytest

from raylam.circle import Angle, sigma
from raylam.cli import main
from raylam.critportrait import hat_closure, partition
from raylam.entropy import acc_counts, core_entropy, hdim_growth, pair_graph, spectral_radius
from raylam.itinerary import lamination
from raylam.portrait import Portrait, map_portrait, sector_image, sectors
from raylam.exceptions import NotInjective, OrderNotPreserved
from raylam.quadratic import characteristic_audit, monotonicity_check, precedes
from oracles import ccw, exact_period_angles, largest_real_root, random_critical_classes

LOG2 = log(2)


class Criterion:
    def __init__(self, number, title, budget):
        self.number, self.title, self.budget = number, title, budget

    def __enter__(self):
        self.t0 = time.perf_counter()
        return self

    def __exit__(self, exc_type, exc, tb):
        elapsed = time.perf_counter() - self.t0
        ok = exc_type is None and (self.budget is None or elapsed < self.budget)
        limit = "" if self.budget is None else f" / {self.budget:g}s"
        _emit(f"[{self.number}] {'PASS' if ok else 'FAIL'}  {self.title}  ({elapsed:.2f}s{limit})")
        if exc_type is None:
            assert ok, f"criterion {self.number} over its time budget: {elapsed:.2f}s"
        return False


_capture = None


def _emit(line):
    if _capture is None:
        print(line)
    else:
        with _capture.disabled():
            print("\n" + line)


@pytest.fixture(autouse=True)
def _report(capsys):
    global _capture
    _capture = capsys
    yield
    _capture = None


def test_1_partition_exactness():
    rng = random.Random(20240601)
    cases = []
    for _ in range(50):
        d = rng.choice([2, 3, 4])
        cases.append((d, random_critical_classes(rng, d)))
    with Criterion(1, "partition pieces total exactly 1/d on 50 random portraits", 1.0):
        for d, classes in cases:
            p = partition(hat_closure(classes, d))
            assert len(p.pieces) == d
            assert all(length == Fraction(1, d) for length in p.lengths())


def _random_mappable(rng, d):
    while True:
        v = rng.randint(2, 5)
        q = rng.randint(v + 1, 120)
        pts = {Angle(rng.randrange(q), q) for _ in range(v)}
        if len(pts) < 2:
            continue
        T = Portrait(pts)
        try:
            map_portrait(T, d)
            return T
        except (NotInjective, OrderNotPreserved):
            continue


def test_2_sector_map_identity():
    rng = random.Random(7)
    jobs = []
    while len(jobs) < 1000:
        d = rng.choice([2, 3, 4])
        T = _random_mappable(rng, d)
        jobs.extend((T, S, d) for S in sectors(T))
    jobs = jobs[:1000]
    with Criterion(2, "sector map identity on 1000 random sectors", 1.0):
        for T, S, d in jobs:
            image, count = sector_image(S, T, d)
            l = S.annular_size
            excess = d * l - image.annular_size
            assert excess.denominator == 1 and excess == count >= 0
            assert image.annular_size == ccw(sigma(S.theta_a, d), sigma(S.theta_b, d))
            if l < Fraction(1, d):
                assert count == 0 and image.annular_size == d * l


def test_3_rabbit_landing_classes():
    with Criterion(3, "rabbit classes among denominators 7 and 14", 1.0):
        lam = lamination(Angle(1, 7), 3, 1)
        small = [c for c in lam.classes if all(a.denominator in (7, 14) for a in c) and len(c) > 1]
        assert sorted(small) == [tuple(Angle(x, 14) for x in (1, 9, 11)), tuple(Angle(x, 7) for x in (1, 2, 4))]
        assert len({lam.class_of(Angle(x, 7)) for x in (3, 5, 6)}) == 3
        assert all(len(lam.class_of(Angle(x, 7))) == 1 for x in (3, 5, 6))


def test_4_lamination_invariants():
    with Criterion(4, "unlinked and forward invariant classes at period <= 8", 10.0):
        for theta, pre in (("1/7", 0), ("1/3", 0), ("3/7", 0), ("1/2", 1)):
            lam = lamination(Angle(theta), 8, pre, check=False)
            lam.check_invariants()


GOLDEN = (1 + sqrt(5)) / 2


@pytest.mark.parametrize("theta,expected", [
    ("1/2", LOG2),
    ("1/7", 0.0),
    ("1/3", 0.0),
    ("3/7", log(largest_real_root([1, -1, -1]))),
])
def test_5_core_entropy_values(theta, expected):
    with Criterion(5, f"h({theta}) two-method agreement within 1e-9", 1.0):
        m = pair_graph(Angle(theta)).matrix
        exact = max(log(spectral_radius(m, "exact")), 0.0)
        power = max(log(spectral_radius(m, "power")), 0.0)
        assert abs(exact - power) <= 1e-9
        assert abs(exact - expected) <= 1e-9
        assert abs(core_entropy(Angle(theta)) - expected) <= 1e-9
    if theta == "3/7":
        assert abs(expected - log(GOLDEN)) < 1e-12


def test_6_growth_dimension():
    with Criterion(6, "growth-rate dimension at n_max = 14", 60.0):
        for theta in ("1/2", "3/7"):
            dim = hdim_growth(Angle(theta), 14)
            h = core_entropy(Angle(theta))
            assert abs(dim * LOG2 - h) / LOG2 <= 0.1, (theta, dim, h)
        counts = acc_counts(Angle(1, 7), 14)
        g = hdim_growth(Angle(1, 7), 14, counts) * LOG2
        assert g < 0.05, g


def _periodic_upto(n):
    return [Angle(x) for k in range(1, n + 1) for x in exact_period_angles(k)]


def test_7_monotonicity():
    rng = random.Random(11)
    pool = _periodic_upto(6)
    pairs = [(a, b) for a in pool for b in pool if a != b and precedes(a, b)]
    sample = rng.sample(pairs, 100)
    with Criterion(7, "chain and 100 precedes-pairs monotone at period bound 10", 120.0):
        chain = [Angle(1, 3), Angle(3, 7), Angle(1, 2)]
        for a, b in zip(chain, chain[1:]):
            assert monotonicity_check(a, b, 10).passed
        for a, b in sample:
            rep = monotonicity_check(a, b, 10, 1e-9)
            assert rep.acc_included, (a, b, rep.violations)
            assert rep.entropy_a <= rep.entropy_b + 1e-9, (a, b)


def test_8_characteristic_audit():
    thetas = [t for t in _periodic_upto(6) if t != 0]
    with Criterion(8, f"characteristic arc audit on {len(thetas)} periodic parameters", 30.0):
        for t in thetas:
            rep = characteristic_audit(t)
            assert rep.applicable and rep.passed, rep.to_dict()
            assert rep.clauses["length_below_half"] and rep.clauses["halving"]
            assert rep.clauses["pairing_first"] and rep.clauses["pairing_second"]


CLI_COMMANDS = [
    ["partition", "--theta", "1/7"],
    ["partition", "--classes", "1/9,4/9;5/9,8/9", "--degree", "3"],
    ["lamination", "--theta", "1/7", "--period", "3", "--preperiod", "1"],
    ["entropy", "--theta", "1/2", "1/7", "1/3", "3/7"],
    ["char-arc", "--theta", "1/7", "1/3", "1/2"],
    ["monotone", "--from", "1/3", "--to", "3/7", "--period", "10"],
    ["monotone", "--from", "3/7", "--to", "1/2", "--period", "10"],
    ["audit", "characteristic", "--max-period", "6"],
    ["sweep", "--max-period", "4", "--max-preperiod", "1"],
]


def _run(argv):
    out = io.StringIO()
    code = main(argv, out=out)
    return code, out.getvalue().encode()


def test_9_cli_determinism():
    with Criterion(9, "CLI acceptance commands byte-identical across runs", None):
        for argv in CLI_COMMANDS:
            first, second = _run(argv), _run(argv)
            assert first == second, argv
            assert first[0] == 0, argv


if __name__ == "__main__":
    import sys
    sys.exit(pytest.main([__file__, "-q"]))
