"""Itineraries relative to a partition and the landing equivalence they induce.

Two rational angles are declared equivalent when their symbol sequences
agree at every index.  For angles whose orbit lands on the partition
boundary the symbol is ambiguous; three readings are supported:

* ``side=None``: the boundary symbol is the set of adjacent pieces and two
  symbols agree when the sets intersect.  Correct when the boundary angles
  land together at a critical point in the Julia set (strictly preperiodic
  ``theta_c`` in degree two).
* ``side="left"`` / ``"right"``: the boundary symbol is the piece just
  clockwise / counterclockwise of the angle.  For periodic ``theta_c`` the
  critical leaf crosses a Fatou component, its endpoints land at distinct
  points, and the correct one-sided reading is the one that places the
  parameter just inside its own wake.  :func:`boundary_side` picks it.
"""

from dataclasses import dataclass, field
from functools import lru_cache
from math import gcd
from collections import Counter

from ._unionfind import UnionFind
from .circle import Angle, orbit, sigma, unlinked
from .critportrait import partition, piece_of, quadratic_portrait
from .exceptions import InvariantViolation

__all__ = [
    "Itinerary",
    "itinerary",
    "same_itinerary",
    "first_split",
    "boundary_side",
    "lands_together",
    "Lamination",
    "enumerate_angles",
    "lamination",
    "lamination_from_partition",
    "valence_histogram",
    "branched_classes",
]


def _lcm(a, b):
    return a * b // gcd(a, b)


@dataclass(frozen=True)
class Itinerary:
    """Eventually periodic sequence of symbol sets.

    ``symbols`` stores indices ``0 .. preperiod + period - 1``; later
    indices repeat the last ``period`` entries.
    """

    symbols: tuple
    preperiod: int
    period: int

    def __getitem__(self, n):
        if n < len(self.symbols):
            return self.symbols[n]
        return self.symbols[self.preperiod + (n - self.preperiod) % self.period]

    def __len__(self):
        return len(self.symbols)

    @property
    def is_exact(self):
        """True when no symbol is ambiguous."""
        return all(len(s) == 1 for s in self.symbols)

    def canonical(self):
        """Minimal ``(prefix, cycle)`` form; equal sequences give equal keys.

        Only meaningful for exact itineraries.
        """
        flat = [next(iter(s)) for s in self.symbols]
        pre, per = self.preperiod, self.period
        cycle = flat[pre:]
        for q in range(1, per + 1):
            if per % q == 0 and all(cycle[i] == cycle[i % q] for i in range(per)):
                cycle = cycle[:q]
                break
        prefix = flat[:pre]
        while prefix and prefix[-1] == cycle[-1]:
            prefix.pop()
            cycle = cycle[-1:] + cycle[:-1]
        return tuple(prefix), tuple(cycle)

    def __str__(self):
        def fmt(s):
            return "{" + ",".join(map(str, sorted(s))) + "}"
        head = "".join(fmt(s) for s in self.symbols[:self.preperiod])
        cyc = "".join(fmt(s) for s in self.symbols[self.preperiod:])
        return f"{head}({cyc})^"


def itinerary(theta, p, d=None, side=None):
    """Symbol sets visited by the orbit of ``theta`` under the partition ``p``."""
    d = p.d if d is None else d
    pre, per, points = orbit(theta, d)
    return Itinerary(tuple(piece_of(x, p, side) for x in points), pre, per)


def _split_index(it_a, it_b):
    horizon = max(it_a.preperiod, it_b.preperiod) + _lcm(it_a.period, it_b.period)
    for n in range(horizon):
        if not (it_a[n] & it_b[n]):
            return n
    return None


def first_split(a, b, p, d=None, side=None):
    """First index where the symbol sets of ``a`` and ``b`` are disjoint, or None."""
    return _split_index(itinerary(a, p, d, side), itinerary(b, p, d, side))


def same_itinerary(a, b, p, d=None, side=None):
    """Pointwise-compatible itineraries over the full joint period.

    The pair sequence repeats with preperiod ``max(preperiods)`` and period
    ``lcm(periods)``, so checking that many indices decides the question.
    """
    return first_split(a, b, p, d, side) is None


@lru_cache(maxsize=None)
def _quadratic_partition(theta_c):
    return partition(quadratic_portrait(theta_c))


@lru_cache(maxsize=None)
def boundary_side(theta_c):
    """Boundary reading that makes itinerary equivalence match landing for ``theta_c``.

    ``None`` (set-valued) for strictly preperiodic angles.  For a periodic
    angle of period ``n`` the one-sided reading is chosen under which
    ``theta_c`` shares its itinerary with another angle of period ``n``,
    i.e. the reading in which ``theta_c`` is a boundary angle of its own
    wake; only ``0`` has no such partner, and either side serves.
    """
    theta_c = Angle(theta_c)
    pre, per, _ = orbit(theta_c)
    if pre > 0:
        return None
    p = _quadratic_partition(theta_c)
    q = 2 ** per - 1
    for side in ("left", "right"):
        key = itinerary(theta_c, p, 2, side).canonical()
        for a in range(q):
            other = Angle(a, q)
            if other != theta_c and itinerary(other, p, 2, side).canonical() == key:
                return side
    return "left"


def lands_together(a, b, theta_c):
    """Landing equivalence of two angles for the quadratic parameter ``theta_c``."""
    theta_c = Angle(theta_c)
    return same_itinerary(a, b, _quadratic_partition(theta_c), 2, boundary_side(theta_c))


@dataclass
class Lamination:
    """Equivalence classes of angles whose rays land together."""

    classes: tuple
    degree: int = 2
    theta_c: Angle = None
    bounds: dict = field(default_factory=dict)
    side: str = None

    def __post_init__(self):
        self.classes = tuple(sorted((tuple(sorted(c)) for c in self.classes),
                                    key=lambda c: (c[0], len(c))))
        self._index = {a: i for i, c in enumerate(self.classes) for a in c}

    @property
    def angles(self):
        return sorted(self._index)

    def class_of(self, theta):
        return self.classes[self._index[Angle(theta)]]

    def equivalent(self, a, b):
        return self._index[Angle(a)] == self._index[Angle(b)]

    def nontrivial(self):
        return [c for c in self.classes if len(c) >= 2]

    def to_dict(self):
        return {
            "theta_c": None if self.theta_c is None else str(self.theta_c),
            "degree": self.degree,
            "classes": [[str(a) for a in c] for c in self.classes],
            "bounds": dict(self.bounds),
        }

    def check_invariants(self):
        """Raise :class:`InvariantViolation` on linked classes or broken invariance."""
        big = self.nontrivial()
        for i in range(len(big)):
            for j in range(i + 1, len(big)):
                if not unlinked(big[i], big[j]):
                    raise InvariantViolation(
                        f"classes {big[i]} and {big[j]} are linked", (big[i], big[j]))
        for c in self.classes:
            targets = {self._index[s] for s in (sigma(a, self.degree) for a in c) if s in self._index}
            if len(targets) > 1:
                raise InvariantViolation(
                    f"class {c} maps into {len(targets)} different classes", c)


def enumerate_angles(max_period, max_preperiod=0, d=2):
    """All angles of period <= ``max_period`` and preperiod <= ``max_preperiod``."""
    if max_period < 1 or max_preperiod < 0:
        raise ValueError("need max_period >= 1 and max_preperiod >= 0")
    out = set()
    for n in range(1, max_period + 1):
        q = d ** max_preperiod * (d ** n - 1)
        out.update(Angle(a, q) for a in range(q))
    return sorted(out)


def _compatible(sa, pa, qa, sb, pb, qb):
    horizon = max(pa, pb) + _lcm(qa, qb)
    for n in range(horizon):
        x = sa[n] if n < len(sa) else sa[pa + (n - pa) % qa]
        y = sb[n] if n < len(sb) else sb[pb + (n - pb) % qb]
        if not (x & y):
            return False
    return True


def lamination_from_partition(angles, p, side=None, d=None, check=True, **meta):
    """Group a forward-closed angle set by itinerary equivalence.

    Exact itineraries are bucketed by canonical form; ambiguous ones (only
    possible with ``side=None``) are compared against every bucket and
    merged by transitive closure.
    """
    d = p.d if d is None else d
    angles = [Angle(a) for a in angles]
    pool = set(angles)
    succ = {a: sigma(a, d) for a in angles}
    if any(s not in pool for s in succ.values()):
        raise ValueError("angle set is not closed under the angle map")
    symbol = {a: piece_of(a, p, side) for a in angles}

    uf = UnionFind(angles)
    buckets = {}
    loose = []
    for a in angles:
        seen, seq = {}, []
        x = a
        while x not in seen:
            seen[x] = len(seq)
            seq.append(symbol[x])
            x = succ[x]
        pre = seen[x]
        it = Itinerary(tuple(seq), pre, len(seq) - pre)
        if it.is_exact:
            key = it.canonical()
            if key in buckets:
                uf.union(buckets[key][0], a)
            else:
                buckets[key] = (a, it)
        else:
            loose.append((a, it))

    reps = list(buckets.values()) + loose
    for a, it in loose:
        for b, jt in reps:
            if a != b and _compatible(it.symbols, it.preperiod, it.period,
                                      jt.symbols, jt.preperiod, jt.period):
                uf.union(a, b)

    lam = Lamination(tuple(tuple(g) for g in uf.groups()), d, side=side, **meta)
    if check:
        lam.check_invariants()
    return lam


def lamination(theta_c, max_period, max_preperiod=0, check=True):
    """Landing classes for the quadratic parameter ``theta_c`` over all
    angles up to the given period and preperiod bounds."""
    theta_c = Angle(theta_c)
    angles = enumerate_angles(max_period, max_preperiod)
    return lamination_from_partition(
        angles, _quadratic_partition(theta_c), boundary_side(theta_c), 2, check,
        theta_c=theta_c, bounds={"max_period": max_period, "max_preperiod": max_preperiod})


def valence_histogram(lam):
    """Number of classes of each size, keyed by valence in increasing order."""
    counts = Counter(len(c) for c in lam.classes)
    return dict(sorted(counts.items()))


def branched_classes(lam):
    """Classes of valence >= 3 with the (preperiod, period) of their angles."""
    out = []
    for c in lam.classes:
        if len(c) >= 3:
            pre, per, _ = orbit(c[0], lam.degree)
            out.append({"angles": c, "valence": len(c), "preperiod": pre, "period": per})
    return out
