"""Portraits, sectors and sector maps.

A portrait is a finite set of angles whose rays share a landing point.  Its
sectors correspond one-to-one with the complementary open arcs, and the
annular size of a sector is the length of its arc.  Everything here is exact.
"""

from dataclasses import dataclass, field
from fractions import Fraction
from math import floor
from typing import Optional

from .circle import Angle, Arc, parse_angle, sigma
from .exceptions import (
    InvalidOrbit,
    NotFound,
    NotInjective,
    OrderNotPreserved,
    PrefixTooShort,
    Straddles,
)

__all__ = [
    "Portrait",
    "Sector",
    "sectors",
    "map_portrait",
    "sector_image",
    "containing_sector",
    "nesting_report",
    "first_narrow_time",
    "narrow_profile",
    "key_inequality_audit",
    "load_orbit",
    "dump_orbit",
]


class Portrait:
    """Cyclically sorted set of at least two distinct angles."""

    __slots__ = ("angles",)

    def __init__(self, angles):
        angles = [Angle(a) for a in angles]
        if len(set(angles)) != len(angles):
            raise ValueError(f"portrait angles must be distinct: {angles}")
        if len(angles) < 2:
            raise ValueError("a portrait needs at least two angles")
        object.__setattr__(self, "angles", tuple(sorted(angles)))

    def __setattr__(self, name, value):
        raise AttributeError("Portrait is immutable")

    @property
    def valence(self):
        return len(self.angles)

    @property
    def is_branched(self):
        """Valence at least three; two-angle portraits are accepted but unbranched."""
        return self.valence >= 3

    def __iter__(self):
        return iter(self.angles)

    def __len__(self):
        return len(self.angles)

    def __contains__(self, theta):
        return Angle(theta) in self.angles

    def __eq__(self, other):
        return isinstance(other, Portrait) and self.angles == other.angles

    def __hash__(self):
        return hash(self.angles)

    def __repr__(self):
        return "Portrait({" + ", ".join(map(str, self.angles)) + "})"

    def rotate(self, by):
        return Portrait(a.rotate(by) for a in self.angles)


@dataclass(frozen=True)
class Sector:
    """A sector bounded by the rays at ``theta_a`` and ``theta_b``.

    ``arc`` is the open counterclockwise arc from ``theta_a`` to ``theta_b``.
    """

    theta_a: Angle
    theta_b: Angle
    arc: Arc = field(compare=False)
    annular_size: Fraction = field(compare=False)

    @classmethod
    def between(cls, a, b):
        arc = Arc.open(a, b)
        return cls(Angle(a), Angle(b), arc, arc.length)

    def __str__(self):
        return f"{self.theta_a}->{self.theta_b}"


def sectors(T):
    """Sectors of ``T`` sorted by annular size, ties by left endpoint from 0."""
    if not isinstance(T, Portrait):
        T = Portrait(T)
    n = len(T.angles)
    result = [Sector.between(T.angles[i], T.angles[(i + 1) % n]) for i in range(n)]
    result.sort(key=lambda s: (s.annular_size, s.theta_a))
    return result


def _check_cyclic_order(images):
    n = len(images)
    descents = sum(1 for i in range(n) if images[i] > images[(i + 1) % n])
    return descents == 1


def map_portrait(T, d=2):
    """Image of ``T`` under the angle map, which must be injective and keep cyclic order."""
    if not isinstance(T, Portrait):
        T = Portrait(T)
    images = [sigma(a, d) for a in T.angles]
    if len(set(images)) != len(images):
        collided = sorted(a for a in T.angles if images.count(sigma(a, d)) > 1)
        raise NotInjective(f"angles {', '.join(map(str, collided))} collide under sigma_{d}")
    if not _check_cyclic_order(images):
        raise OrderNotPreserved(f"sigma_{d} does not preserve the cyclic order of {T}")
    return Portrait(images)


def sector_image(S, T, d=2):
    """Image sector of ``S`` and the number of critical points it contains.

    The count is ``d*l(S) - l(image)``.  A two-angle portrait whose angles
    collide is allowed: the image is then the circle punctured at the common
    image angle, and the count is read modulo one, i.e. ``floor(d*l(S))``.
    """
    if not isinstance(T, Portrait):
        T = Portrait(T)
    if S.theta_a not in T or S.theta_b not in T:
        raise ValueError(f"{S} is not a sector of {T}")
    a, b = sigma(S.theta_a, d), sigma(S.theta_b, d)
    scaled = d * S.annular_size
    if T.valence == 2 and a == b:
        image = Sector(a, a, Arc(a, a), Fraction(1))
        return image, floor(scaled)
    T_image = map_portrait(T, d)
    image = next(s for s in sectors(T_image) if s.theta_a == a)
    if image.theta_b != b:
        raise OrderNotPreserved(f"image of {S} is not a sector of {T_image}")
    count = scaled - image.annular_size
    if count.denominator != 1 or count < 0:
        raise AssertionError(f"critical count {count} is not a nonnegative integer")
    return image, int(count)


def containing_sector(T, X):
    """The sector of ``T`` whose arc holds every angle of ``X``."""
    if not isinstance(T, Portrait):
        T = Portrait(T)
    X = [Angle(x) for x in X]
    if not X:
        raise ValueError("X must be nonempty")
    if any(x in T for x in X):
        raise ValueError("X must be disjoint from T")
    for s in sectors(T):
        if all(x in s.arc for x in X):
            return s
    raise Straddles(f"{sorted(X)} meets more than one sector of {T}")


def nesting_report(T, U):
    """Check how two unlinked portraits with distinct base points nest.

    With ``S`` the sector of ``T`` holding ``U`` and ``S2`` the sector of
    ``U`` holding ``T``, every other sector of ``U`` must sit inside ``S`` and
    be strictly shorter than it.  Returns a dict with both sectors and the
    verdict.
    """
    if not isinstance(T, Portrait):
        T = Portrait(T)
    if not isinstance(U, Portrait):
        U = Portrait(U)
    S = containing_sector(T, U.angles)
    S2 = containing_sector(U, T.angles)
    others = [s for s in sectors(U) if s != S2]
    inside = all(S.arc.contains_arc(s.arc) for s in others)
    shorter = all(s.annular_size < S.annular_size for s in others)
    return {"S": S, "S_other": S2, "nested": inside, "shorter": shorter, "ok": inside and shorter}


@dataclass(frozen=True)
class NarrowTime:
    """Certificate for the first time the k-th sector drops below epsilon."""

    n: int
    k: int
    epsilon: Fraction
    narrow_size: Fraction
    next_size: Fraction
    next_wider: bool
    k0: Optional[int] = None
    critical_value_sector: Optional[Sector] = None
    source_sector: Optional[Sector] = None


def _validate_orbit(orbit, d):
    orbit = [T if isinstance(T, Portrait) else Portrait(T) for T in orbit]
    for i in range(len(orbit) - 1):
        try:
            image = map_portrait(orbit[i], d)
        except (NotInjective, OrderNotPreserved) as exc:
            raise InvalidOrbit(f"step {i}: {exc}") from exc
        if image != orbit[i + 1]:
            raise InvalidOrbit(f"step {i}: expected {image}, found {orbit[i + 1]}")
    return orbit


def first_narrow_time(orbit, d, epsilon, k):
    """Least ``n`` with ``l(S_k(orbit[n])) < epsilon``, with a certificate.

    The certificate records whether the next sector is still wider than
    epsilon and, when ``n > 0``, the smallest rank ``k0`` of a narrow sector
    that is the image of a sector containing a critical point.
    """
    orbit = _validate_orbit(orbit, d)
    epsilon = Fraction(epsilon)
    if epsilon <= 0:
        raise ValueError("epsilon must be positive")
    if not orbit:
        raise NotFound("empty orbit prefix")
    v = orbit[0].valence
    if not 1 <= k <= v - 2:
        raise ValueError(f"k must lie in [1, {v - 2}] for valence {v}")
    for n, T in enumerate(orbit):
        ranked = sectors(T)
        if ranked[k - 1].annular_size < epsilon:
            break
    else:
        raise NotFound(f"l(S_{k}) never drops below {epsilon} in {len(orbit)} portraits")

    k0 = cv_sector = source = None
    if n > 0:
        for s in sectors(orbit[n - 1]):
            image, count = sector_image(s, orbit[n - 1], d)
            if count >= 1 and image.annular_size < epsilon:
                rank = next(i for i, r in enumerate(ranked, 1) if r.theta_a == image.theta_a)
                if k0 is None or rank < k0:
                    k0, cv_sector, source = rank, ranked[rank - 1], s
    next_size = ranked[k].annular_size
    return NarrowTime(n, k, epsilon, ranked[k - 1].annular_size, next_size,
                      next_size > epsilon, k0, cv_sector, source)


def narrow_profile(orbit):
    """Sizes ``l(S_{v-2})`` along an orbit prefix with their tail maxima.

    A wandering portrait has these sizes tending to zero; on a finite prefix
    the tail maximum ``max_{m >= n} l(S_{v-2}(T_m))`` is the observable proxy.
    """
    orbit = [T if isinstance(T, Portrait) else Portrait(T) for T in orbit]
    if not orbit:
        return []
    v = orbit[0].valence
    if v < 3:
        raise ValueError("need valence >= 3")
    sizes = [sectors(T)[v - 3].annular_size for T in orbit]
    tail, best = [], Fraction(0)
    for s in reversed(sizes):
        best = max(best, s)
        tail.append(best)
    return list(zip(sizes, reversed(tail)))


@dataclass
class KeyInequalityReport:
    degree: int
    excess: int
    bound: int
    consistent: bool
    wandering: bool
    witnesses: list = field(default_factory=list)
    disjoint: Optional[bool] = None
    notes: list = field(default_factory=list)

    @property
    def passed(self):
        return self.consistent and self.disjoint is not False

    def as_dict(self):
        return {
            "degree": self.degree,
            "excess": self.excess,
            "bound": self.bound,
            "consistent": self.consistent,
            "wandering": self.wandering,
            "disjoint": self.disjoint,
            "passed": self.passed,
            "witnesses": [
                {
                    "orbit": i,
                    "k": cert.k,
                    "n": cert.n,
                    "epsilon": str(cert.epsilon),
                    "k0": cert.k0,
                    "sector": None if cert.critical_value_sector is None
                    else str(cert.critical_value_sector.arc),
                }
                for i, cert in self.witnesses
            ],
            "notes": list(self.notes),
        }


def _is_periodic(orbit):
    return len(set(orbit)) < len(orbit)


def key_inequality_audit(orbits, d, epsilon):
    """Replay the narrow-sector counting argument on orbit prefixes.

    For each branched orbit the k-th narrow times are located at a common
    epsilon (fixed by the first orbit's first narrow time) and the critical
    value sectors they certify are collected.  The sectors must be pairwise
    disjoint, and the total excess valence ``sum(v - 2)`` is compared
    against ``d - 2``.
    """
    epsilon = Fraction(epsilon)
    orbits = [_validate_orbit(o, d) for o in orbits]
    excess = sum(o[0].valence - 2 for o in orbits if o)
    report = KeyInequalityReport(d, excess, d - 2, excess <= d - 2, True)
    if not orbits:
        report.notes.append("no orbits: vacuous")
        return report

    angle_sets = [set().union(*(T.angles for T in o)) for o in orbits]
    for i in range(len(orbits)):
        for j in range(i + 1, len(orbits)):
            if angle_sets[i] & angle_sets[j]:
                raise ValueError(f"orbits {i} and {j} share angles; base orbits must be disjoint")

    periodic = [_is_periodic(o) for o in orbits]
    if any(periodic):
        report.wandering = False
        for i, p in enumerate(periodic):
            if p:
                report.notes.append(f"orbit {i} is periodic, not wandering; the wandering hypothesis fails")
    if not report.consistent:
        report.notes.append(f"sum(v-2) = {excess} exceeds d-2 = {d - 2}")

    branched = [(i, o) for i, o in enumerate(orbits) if o[0].valence >= 3]
    for i, o in enumerate(orbits):
        if o[0].valence < 3:
            report.notes.append(f"orbit {i} has valence {o[0].valence}; skipped")
    if not branched:
        return report

    def locate(i, orbit, eps, k):
        try:
            return first_narrow_time(orbit, d, eps, k)
        except NotFound as exc:
            if periodic[i]:
                report.notes.append(f"orbit {i}, k={k}: sizes recur without dropping below {eps}")
                return None
            raise PrefixTooShort(f"orbit {i}, k={k}: {exc}") from exc

    i0, o0 = branched[0]
    first = locate(i0, o0, epsilon, 1)
    if first is None:
        return report
    report.witnesses.append((i0, first))
    eps = first.narrow_size
    for i, orbit in branched:
        for k in range(1, orbit[0].valence - 1):
            cert = locate(i, orbit, eps, k)
            if cert is None:
                continue
            report.witnesses.append((i, cert))

    found = [c.critical_value_sector for _, c in report.witnesses if c.critical_value_sector is not None]
    missing = len(report.witnesses) - len(found)
    if missing:
        report.notes.append(f"{missing} narrow time(s) at n=0 carry no critical value sector")
    report.disjoint = all(
        not found[a].arc.meets(found[b].arc)
        for a in range(len(found)) for b in range(a + 1, len(found))
    )
    return report


def load_orbit(lines):
    """Parse an orbit prefix: one portrait per line, comma-separated ``p/q``.

    Blank lines and lines starting with ``#`` are skipped.
    """
    if isinstance(lines, str):
        lines = lines.splitlines()
    orbit = []
    for raw in lines:
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        orbit.append(Portrait(parse_angle(tok) for tok in line.split(",")))
    return orbit


def dump_orbit(orbit):
    return "".join(", ".join(map(str, T.angles)) + "\n" for T in orbit)
