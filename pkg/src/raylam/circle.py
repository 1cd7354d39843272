"""Exact arithmetic on the circle R/Z.

Angles are rationals reduced modulo one.  Arcs are always oriented
counterclockwise from ``start`` to ``end``; the caller decides which of the
two arcs between a pair of angles is meant.
"""

from dataclasses import dataclass
from fractions import Fraction
from math import floor
import re

__all__ = [
    "Angle",
    "Arc",
    "sigma",
    "orbit",
    "unlinked",
    "crosses",
    "cyclic_sort",
    "parse_angle",
    "parse_arc",
]


class Angle(Fraction):
    """A rational angle in [0, 1), always in lowest terms.

    Accepts anything :class:`fractions.Fraction` accepts (ints, Fractions,
    ``"p/q"`` strings) and reduces it modulo one.  Floats are rejected so
    that inexact values cannot leak in.

    >>> Angle(9, 7)
    Angle('2/7')
    >>> Angle("-1/3")
    Angle('2/3')
    """

    __slots__ = ()

    def __new__(cls, numerator=0, denominator=None):
        if isinstance(numerator, float) or isinstance(denominator, float):
            raise TypeError("angles must be exact; got a float")
        if isinstance(numerator, Angle) and denominator is None:
            return numerator
        value = Fraction(numerator, denominator) if denominator is not None else Fraction(numerator)
        value -= floor(value)
        return super().__new__(cls, value.numerator, value.denominator)

    def __repr__(self):
        return f"Angle('{self}')"

    def __str__(self):
        if self.denominator == 1:
            return str(self.numerator)
        return f"{self.numerator}/{self.denominator}"

    def __reduce__(self):
        return (Angle, (self.numerator, self.denominator))

    def __copy__(self):
        return self

    def __deepcopy__(self, memo):
        return self

    def rotate(self, by):
        return Angle(Fraction(self) + Fraction(by))

    def preimages(self, d=2):
        """All ``d`` angles mapped onto this one by :func:`sigma`."""
        return tuple(Angle((Fraction(self) + k) / d) for k in range(d))


def parse_angle(text):
    """Parse a ``"p/q"`` (or integer) string into an :class:`Angle`."""
    text = text.strip()
    if not re.fullmatch(r"[+-]?\d+(/\d+)?", text):
        raise ValueError(f"not an exact rational angle: {text!r}")
    return Angle(text)


def sigma(theta, d=2):
    """Multiply ``theta`` by ``d`` modulo one."""
    if d < 2:
        raise ValueError(f"degree must be >= 2, got {d}")
    return Angle(d * Fraction(theta))


def orbit(theta, d=2):
    """Forward orbit of a rational angle up to its first repetition.

    Returns ``(preperiod, period, points)`` where ``points`` holds every
    distinct orbit point in order, so ``points[preperiod:]`` is the cycle.
    """
    if d < 2:
        raise ValueError(f"degree must be >= 2, got {d}")
    theta = Angle(theta)
    seen = {}
    points = []
    while theta not in seen:
        seen[theta] = len(points)
        points.append(theta)
        theta = sigma(theta, d)
    preperiod = seen[theta]
    return preperiod, len(points) - preperiod, points


def cyclic_sort(angles):
    return sorted(Angle(a) for a in angles)


def _gap(a, b):
    """Counterclockwise distance from a to b, in [0, 1)."""
    return Angle(Fraction(b) - Fraction(a))


def crosses(chord1, chord2):
    """True when two chords with four distinct endpoints intersect in the disk."""
    a, b = chord1
    c, d = chord2
    span = _gap(a, b)
    inside = sum(1 for x in (c, d) if 0 < _gap(a, x) < span)
    return inside == 1


def unlinked(A, B):
    """True iff the finite angle sets ``A`` and ``B`` lie in disjoint arcs.

    Equivalently the convex hulls of the two point sets on the unit circle
    do not meet.  The sets must be nonempty and disjoint.
    """
    A = {Angle(a) for a in A}
    B = {Angle(b) for b in B}
    if not A or not B:
        raise ValueError("unlinked() needs two nonempty sets")
    if A & B:
        raise ValueError(f"sets overlap in {sorted(A & B)}")
    labels = [x in A for x in sorted(A | B)]
    changes = sum(1 for i in range(len(labels)) if labels[i] != labels[i - 1])
    return changes <= 2


@dataclass(frozen=True)
class Arc:
    """A counterclockwise arc of R/Z from ``start`` to ``end``.

    Conventions for coinciding endpoints: a closed ``[a, a]`` is the single
    angle ``a`` (length 0); any other arc with ``start == end`` is the circle
    punctured at ``a`` (length 1).  ``full=True`` is the whole circle.
    """

    start: Angle
    end: Angle
    start_closed: bool = False
    end_closed: bool = False
    full: bool = False

    def __post_init__(self):
        object.__setattr__(self, "start", Angle(self.start))
        object.__setattr__(self, "end", Angle(self.end))

    @classmethod
    def open(cls, start, end):
        return cls(start, end, False, False)

    @classmethod
    def closed(cls, start, end):
        return cls(start, end, True, True)

    @classmethod
    def point(cls, a):
        return cls(a, a, True, True)

    @classmethod
    def circle(cls):
        return cls(Angle(0), Angle(0), True, True, full=True)

    @property
    def is_point(self):
        return not self.full and self.start == self.end and self.start_closed and self.end_closed

    @property
    def is_punctured(self):
        return not self.full and self.start == self.end and not self.is_point

    @property
    def length(self):
        if self.full or self.is_punctured:
            return Fraction(1)
        return Fraction(_gap(self.start, self.end))

    def __contains__(self, theta):
        theta = Angle(theta)
        if self.full:
            return True
        if self.is_point:
            return theta == self.start
        if self.is_punctured:
            return theta != self.start
        if theta == self.start:
            return self.start_closed
        if theta == self.end:
            return self.end_closed
        return _gap(self.start, theta) < self.length

    def closure(self):
        if self.full or self.is_punctured:
            return Arc.circle()
        return Arc(self.start, self.end, True, True)

    def interior(self):
        if self.full:
            return self
        if self.is_point:
            raise ValueError("a single angle has empty interior")
        return Arc(self.start, self.end, False, False)

    def contains_arc(self, other):
        """Set inclusion ``other`` ⊆ ``self``."""
        if self.full:
            return True
        if other.full:
            return False
        if self.is_punctured:
            return self.start not in other
        if other.is_punctured:
            return False
        L, l = self.length, other.length
        offset = _gap(self.start, other.start)
        if offset + l > L:
            return False
        if other.is_point:
            return other.start in self
        if offset == 0 and other.start_closed and not self.start_closed:
            return False
        if offset + l == L and other.end_closed and not self.end_closed:
            return False
        return True

    def meets(self, other):
        """Whether two arcs share at least one angle."""
        if self.full or other.full:
            return True
        if self.is_point:
            return self.start in other
        if other.is_point:
            return other.start in self
        if self.is_punctured or other.is_punctured:
            # at this point neither is a single angle
            return True
        for x in (self.start, self.end, other.start, other.end):
            if x in self and x in other:
                return True
        a, b = self.interior(), other.interior()
        return other.start in a or self.start in b or self.start == other.start

    def split(self, at):
        """Cut at an interior angle; the cut point goes to neither half."""
        at = Angle(at)
        if self.full or self.is_punctured or self.is_point or at not in self.interior():
            raise ValueError(f"{at} is not an interior point of {self}")
        return (Arc(self.start, at, self.start_closed, False),
                Arc(at, self.end, False, self.end_closed))

    def rotate(self, by):
        if self.full:
            return self
        return Arc(self.start.rotate(by), self.end.rotate(by), self.start_closed, self.end_closed)

    def sample(self, count=5):
        """A few interior angles, evenly spaced; empty for a single point."""
        if self.is_point:
            return []
        L = self.length
        return [self.start.rotate(L * k / (count + 1)) for k in range(1, count + 1)]

    def __str__(self):
        if self.full:
            return "R/Z"
        left = "[" if self.start_closed else "("
        right = "]" if self.end_closed else ")"
        return f"{left}{self.start}, {self.end}{right}"


_ARC_RE = re.compile(r"\s*([\[(])\s*([^,\s]+)\s*,\s*([^\])\s]+)\s*([\])])\s*")


def parse_arc(text):
    """Inverse of ``str(Arc)``: ``"[1/7, 2/7)"`` or ``"R/Z"``."""
    if text.strip() == "R/Z":
        return Arc.circle()
    m = _ARC_RE.fullmatch(text)
    if not m:
        raise ValueError(f"cannot parse arc {text!r}")
    left, a, b, right = m.groups()
    return Arc(parse_angle(a), parse_angle(b), left == "[", right == "]")
