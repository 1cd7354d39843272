"""Critical portraits and the circle partitions they induce.

A critical portrait of degree ``d`` is a family of pairwise unlinked angle
classes, each collapsed to one angle by the angle map, whose sizes satisfy
``sum(|class| - 1) == d - 1``.  Drawing each class as a star of chords cuts
the disk into ``d`` regions; the circle traces of those regions are the
pieces of the partition, each of total length ``1/d``.
"""

from bisect import bisect_left
from dataclasses import dataclass
from fractions import Fraction
import json

from ._unionfind import UnionFind
from .circle import Angle, Arc, parse_angle, parse_arc, sigma, unlinked
from .exceptions import ConditionViolation, InternalInvariant

__all__ = [
    "CriticalPortrait",
    "Partition",
    "hat_closure",
    "partition",
    "quadratic_portrait",
    "piece_of",
]


@dataclass(frozen=True)
class CriticalPortrait:
    classes: tuple
    d: int

    def __post_init__(self):
        classes = tuple(sorted(tuple(sorted(Angle(a) for a in c)) for c in self.classes))
        object.__setattr__(self, "classes", classes)

    @property
    def angles(self):
        return tuple(sorted(a for c in self.classes for a in c))

    def rotate(self, by):
        return CriticalPortrait(tuple(tuple(a.rotate(by) for a in c) for c in self.classes), self.d)

    def to_dict(self):
        return {"d": self.d, "classes": [[str(a) for a in c] for c in self.classes]}

    def to_json(self):
        return json.dumps(self.to_dict())

    @classmethod
    def from_dict(cls, data):
        return hat_closure([[parse_angle(a) for a in c] for c in data["classes"]], int(data["d"]))

    @classmethod
    def from_json(cls, text):
        return cls.from_dict(json.loads(text))


def _check_conditions(classes, d):
    for c in classes:
        images = {sigma(a, d) for a in c}
        if len(images) != 1:
            raise ConditionViolation(3, f"class {list(map(str, c))} maps to {sorted(map(str, images))}")
    for i in range(len(classes)):
        for j in range(i + 1, len(classes)):
            if not unlinked(classes[i], classes[j]):
                raise ConditionViolation(2, f"classes {i} and {j} are linked")
    total = sum(len(c) - 1 for c in classes)
    if total != d - 1:
        raise ConditionViolation(1, f"sum(|class| - 1) = {total}, expected {d - 1}")


def hat_closure(raw, d):
    """Merge chain-connected angle sets and validate the result.

    Sets sharing an angle, directly or through a chain, become one class.
    Raises :class:`ConditionViolation` naming the first failed condition.
    """
    if d < 2:
        raise ValueError(f"degree must be >= 2, got {d}")
    raw = [[Angle(a) for a in s] for s in raw]
    for s in raw:
        if not s:
            raise ValueError("empty angle set")
        if len({sigma(a, d) for a in s}) != 1:
            raise ConditionViolation(3, f"set {list(map(str, s))} is not collapsed by sigma_{d}")
    uf = UnionFind()
    for s in raw:
        for a in s:
            uf.add(a)
        for a in s[1:]:
            uf.union(s[0], a)
    classes = [sorted(g) for g in uf.groups()]
    _check_conditions(classes, d)
    return CriticalPortrait(tuple(tuple(c) for c in classes), d)


@dataclass(frozen=True)
class Partition:
    """The ``d`` pieces cut out of the circle by a critical portrait.

    ``pieces[i]`` is a tuple of open arcs; ``boundary`` holds every class
    angle.  ``gap_piece[j]`` is the 0-based piece of the gap that starts at
    ``boundary[j]``.
    """

    d: int
    pieces: tuple
    boundary: tuple
    gap_piece: tuple
    portrait: CriticalPortrait = None

    def lengths(self):
        return [sum((a.length for a in arcs), Fraction(0)) for arcs in self.pieces]

    def to_dict(self):
        return {
            "d": self.d,
            "boundary": [str(a) for a in self.boundary],
            "pieces": [
                {"index": i + 1, "arcs": [str(a) for a in arcs], "length": str(length)}
                for i, (arcs, length) in enumerate(zip(self.pieces, self.lengths()))
            ],
        }

    def to_json(self):
        return json.dumps(self.to_dict())

    @classmethod
    def from_dict(cls, data):
        pieces = tuple(tuple(parse_arc(a) for a in p["arcs"]) for p in data["pieces"])
        boundary = tuple(sorted(parse_angle(a) for a in data["boundary"]))
        starts = {arc.start: i for i, arcs in enumerate(pieces) for arc in arcs}
        return cls(int(data["d"]), pieces, boundary, tuple(starts[b] for b in boundary))


def partition(cp):
    """Pieces of the circle cut out by the chord stars of ``cp``.

    Combinatorial trace of each disk region: leaving a gap at its right end
    ``b``, the region boundary runs into the star of ``b``'s class and comes
    back out along the previous angle of that class, where the next gap of
    the same region starts.
    """
    boundary = list(cp.angles)
    m = len(boundary)
    index = {b: j for j, b in enumerate(boundary)}
    prev_in_class = {}
    for c in cp.classes:
        for i, a in enumerate(c):
            prev_in_class[a] = c[i - 1]

    gap_region = [None] * m
    regions = []
    for j in range(m):
        if gap_region[j] is not None:
            continue
        region, g = [], j
        while gap_region[g] is None:
            gap_region[g] = len(regions)
            region.append(g)
            g = index[prev_in_class[boundary[(g + 1) % m]]]
        if g != j:
            raise InternalInvariant("gap successor map is not a permutation")
        regions.append(region)

    if len(regions) != cp.d:
        raise InternalInvariant(f"found {len(regions)} regions, expected {cp.d}")

    arcs_of = [sorted((Arc.open(boundary[g], boundary[(g + 1) % m]) for g in r),
                      key=lambda arc: arc.start) for r in regions]
    order = sorted(range(len(regions)), key=lambda r: arcs_of[r][0].start)
    renumber = {old: new for new, old in enumerate(order)}
    pieces = tuple(tuple(arcs_of[r]) for r in order)
    gap_piece = tuple(renumber[gap_region[g]] for g in range(m))

    p = Partition(cp.d, pieces, tuple(boundary), gap_piece, cp)
    target = Fraction(1, cp.d)
    for i, length in enumerate(p.lengths()):
        if length != target:
            raise InternalInvariant(f"piece {i + 1} has length {length}, expected {target}")
    return p


def quadratic_portrait(theta_c):
    """Degree-two portrait made of the diameter through the preimages of ``theta_c``."""
    a, b = Angle(theta_c).preimages(2)
    return CriticalPortrait(((a, b),), 2)


def piece_of(theta, p, side=None):
    """Indices (1-based) of the pieces whose closure contains ``theta``.

    Interior angles get a singleton.  A boundary angle gets every adjacent
    piece unless ``side`` is ``"left"`` (the piece of the arc ending at the
    angle) or ``"right"`` (the arc starting there).
    """
    theta = Angle(theta)
    bd = p.boundary
    m = len(bd)
    j = bisect_left(bd, theta)
    if j < m and bd[j] == theta:
        before, after = p.gap_piece[j - 1] + 1, p.gap_piece[j] + 1
        if side == "left":
            return frozenset((before,))
        if side == "right":
            return frozenset((after,))
        if side is not None:
            raise ValueError(f"side must be None, 'left' or 'right', not {side!r}")
        return frozenset((before, after))
    return frozenset((p.gap_piece[j - 1] + 1,))
