"""Characteristic arcs of quadratic parameters and the order they induce.

A parameter with rational external angle ``theta_c`` is either periodic
(a hyperbolic component root, the critical value sits in a Fatou
component) or strictly preperiodic (the critical value is in the Julia
set).  Either way it determines a closed arc of angles; one parameter
precedes another when its arc contains the other's.
"""

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
import json

from .circle import Angle, Arc, orbit
from .entropy import acc_angles, core_entropy
from .exceptions import Degenerate, FullCircle, NotFound, PrecedenceFails
from .itinerary import lamination, lands_together

__all__ = [
    "CharacteristicArc",
    "characteristic_arc",
    "precedes",
    "preimage_arcs",
    "characteristic_audit",
    "escape_time",
    "monotonicity_check",
    "AuditReport",
    "MonotonicityReport",
]

PERIODIC = "periodic"
PERIODIC_FULL = "periodic-full-circle"
PREPERIODIC = "preperiodic"
PREPERIODIC_POINT = "preperiodic-point"


@dataclass(frozen=True)
class CharacteristicArc:
    theta_c: Angle
    case: str
    arc: Arc
    landing_class: tuple

    @property
    def length(self):
        if self.arc.is_point:
            return Fraction(0)
        return self.arc.length

    @property
    def eta(self):
        return self.arc.start

    @property
    def xi(self):
        return self.arc.end

    def to_dict(self):
        return {
            "theta_c": str(self.theta_c),
            "case": self.case,
            "arc": "{" + str(self.arc.start) + "}" if self.arc.is_point else str(self.arc),
            "length": str(self.length),
            "landing_class": [str(a) for a in self.landing_class],
        }


def characteristic_arc(theta_c):
    """The closed arc of angles attached to the parameter ``theta_c``.

    Periodic angle: the landing class of ``theta_c`` is the portrait at the
    root of the critical value component; the arc is the shorter of the two
    complementary arcs adjacent to ``theta_c``, closed.  A lone ray gives the
    whole circle.

    Preperiodic angle: the landing class of ``theta_c`` is the set of rays at
    the critical value; the arc is the closed complement of the open arc that
    contains the rays to the critical point.  A lone ray gives a point.
    """
    return _characteristic_arc(Angle(theta_c))


@lru_cache(maxsize=1024)
def _characteristic_arc(theta_c):
    pre, per, _ = orbit(theta_c)
    lam = lamination(theta_c, per, pre, check=False)
    cls = lam.class_of(theta_c)
    m = len(cls)
    if pre == 0:
        if m == 1:
            return CharacteristicArc(theta_c, PERIODIC_FULL, Arc.circle(), cls)
        i = cls.index(theta_c)
        after = Arc.closed(theta_c, cls[(i + 1) % m])
        before = Arc.closed(cls[i - 1], theta_c)
        arc = after if after.length <= before.length else before
        return CharacteristicArc(theta_c, PERIODIC, arc, cls)
    if m == 1:
        return CharacteristicArc(theta_c, PREPERIODIC_POINT, Arc.point(theta_c), cls)
    crit = theta_c.preimages(2)[0]
    for i in range(m):
        gap = Arc.open(cls[i], cls[(i + 1) % m])
        if crit in gap:
            return CharacteristicArc(theta_c, PREPERIODIC, Arc.closed(gap.end, gap.start), cls)
    raise AssertionError("critical angle not found in any gap")  # pragma: no cover


def precedes(a, b):
    """Whether the arc of ``a`` contains the arc of ``b`` (closed sets).

    The whole circle contains every arc, so ``0`` precedes everything.
    """
    A = characteristic_arc(a).arc
    B = characteristic_arc(b).arc
    return A.contains_arc(B)


def preimage_arcs(I):
    """The two halves of the preimage of a characteristic arc under doubling.

    The first starts at ``eta / 2``; the second is its antipode.  Lengths
    are checked to halve exactly.
    """
    arc = I.arc if isinstance(I, CharacteristicArc) else I
    if arc.full or arc.is_punctured:
        raise FullCircle("the whole circle has no preimage arc pair")
    eta = Angle(Fraction(arc.start) / 2)
    if arc.is_point:
        first = Arc.point(eta)
    else:
        first = Arc.closed(eta, eta.rotate(arc.length / 2))
    second = first.rotate(Fraction(1, 2))
    if not arc.is_point:
        assert first.length == second.length == arc.length / 2
    return first, second


@dataclass
class AuditReport:
    theta_c: Angle
    case: str
    applicable: bool
    clauses: dict = field(default_factory=dict)
    witnesses: dict = field(default_factory=dict)

    @property
    def passed(self):
        return all(self.clauses.values())

    def to_dict(self):
        return {
            "theta_c": str(self.theta_c),
            "case": self.case,
            "applicable": self.applicable,
            "passed": self.passed,
            "clauses": dict(self.clauses),
            "witnesses": {k: [str(a) for a in v] for k, v in self.witnesses.items()},
        }

    def to_json(self):
        return json.dumps(self.to_dict(), indent=2)


def characteristic_audit(theta_c):
    """Check the structural properties of the arc of ``theta_c`` clause by clause.

    Periodic case: ``length_below_half``, ``pairing_first`` / ``pairing_second``
    (each half's start lands with the other half's end) and
    ``preimages_outside`` (the open halves miss the open arc).
    Preperiodic case: ``endpoints_one_class`` (all four preimage endpoints
    land together) and ``preimages_outside``.  Every case also records
    ``halving``.  A whole-circle arc yields an empty, non-applicable report.
    """
    ca = characteristic_arc(theta_c)
    theta_c = ca.theta_c
    if ca.case == PERIODIC_FULL:
        return AuditReport(theta_c, ca.case, False)
    first, second = preimage_arcs(ca)
    eta1, xi1, eta2, xi2 = first.start, first.end, second.start, second.end
    report = AuditReport(theta_c, ca.case, True)
    report.witnesses["preimage_endpoints"] = (eta1, xi1, eta2, xi2)
    if ca.arc.is_point:
        report.clauses["halving"] = first.is_point and second.is_point
    else:
        report.clauses["halving"] = (first.length == second.length == ca.length / 2
                                     and second == first.rotate(Fraction(1, 2)))
    if ca.case == PERIODIC:
        report.clauses["length_below_half"] = ca.length < Fraction(1, 2)
        report.clauses["pairing_first"] = lands_together(eta1, xi2, theta_c)
        report.clauses["pairing_second"] = lands_together(eta2, xi1, theta_c)
        report.witnesses["pairing_first"] = (eta1, xi2)
        report.witnesses["pairing_second"] = (eta2, xi1)
    else:
        ends = (eta1, xi1, eta2, xi2)
        report.clauses["endpoints_one_class"] = all(
            lands_together(ends[0], x, theta_c) for x in ends[1:])
    if not ca.arc.is_point:
        inner = ca.arc.interior()
        report.clauses["preimages_outside"] = not (
            first.interior().meets(inner) or second.interior().meets(inner))
    return report


def escape_time(theta, theta_c, max_iter=10):
    """Least ``N <= max_iter`` after which the orbit of ``theta`` avoids the
    open preimage halves of the arc of ``theta_c``.

    Raises :class:`NotFound` when the periodic part meets the region or the
    preperiod exceeds ``max_iter``, and :class:`Degenerate` when the arc is
    a point or the whole circle.
    """
    ca = characteristic_arc(theta_c)
    if ca.case in (PERIODIC_FULL, PREPERIODIC_POINT):
        raise Degenerate(f"arc of {ca.theta_c} is {ca.arc}; no escape region")
    first, second = preimage_arcs(ca)
    region = (first.interior(), second.interior())
    pre, _, points = orbit(theta)
    inside = [any(x in r for r in region) for x in points]
    if any(inside[pre:]):
        raise NotFound(f"the cycle of {Angle(theta)} enters the region")
    for n in range(min(pre, max_iter) + 1):
        if not any(inside[n:]):
            return n
    raise NotFound(f"orbit of {Angle(theta)} still meets the region after {max_iter} steps")


@dataclass
class MonotonicityReport:
    a: Angle
    b: Angle
    max_period: int
    tol: float
    acc_included: bool
    violations: tuple
    entropy_a: float
    entropy_b: float
    entropy_ok: bool
    preimages_nested: bool
    full_circle: bool

    @property
    def passed(self):
        return self.acc_included and self.entropy_ok and self.preimages_nested

    def to_dict(self):
        return {
            "from": str(self.a),
            "to": str(self.b),
            "max_period": self.max_period,
            "tol": self.tol,
            "acc_included": self.acc_included,
            "violations": [str(x) for x in self.violations],
            "entropy_from": self.entropy_a,
            "entropy_to": self.entropy_b,
            "entropy_ok": self.entropy_ok,
            "preimages_nested": self.preimages_nested,
            "full_circle": self.full_circle,
            "passed": self.passed,
        }


def _halves(theta):
    try:
        return preimage_arcs(characteristic_arc(theta))
    except FullCircle:
        return None


def monotonicity_check(a, b, max_period, tol=1e-9):
    """Compare biaccessible sets and entropies along ``a`` preceding ``b``.

    Raises :class:`PrecedenceFails` unless ``precedes(a, b)``.
    """
    a, b = Angle(a), Angle(b)
    if not precedes(a, b):
        raise PrecedenceFails(f"{a} does not precede {b}")
    acc_a = acc_angles(a, max_period)
    acc_b = set(acc_angles(b, max_period))
    violations = tuple(x for x in acc_a if x not in acc_b)
    h_a, h_b = core_entropy(a, tol), core_entropy(b, tol)

    halves_a, halves_b = _halves(a), _halves(b)
    if halves_a is None:
        nested = True
    elif halves_b is None:
        nested = False
    else:
        nested = all(any(outer.contains_arc(inner) for outer in halves_a) for inner in halves_b)
    return MonotonicityReport(
        a, b, max_period, tol, not violations, violations, h_a, h_b,
        h_a <= h_b + tol, nested, characteristic_arc(a).case == PERIODIC_FULL)
