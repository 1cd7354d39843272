"""Core entropy of quadratic parameters with rational external angle.

The entropy is the log of the spectral radius of the transition matrix on
unordered pairs of postcritical angles (Thurston's pair algorithm).  The
radius is computed either exactly (integer characteristic polynomial, Sturm
bisection) or by power iteration on strongly connected blocks; the two
are independent and are cross-checked in the tests.
"""

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import gcd, log
import json
import logging

import numpy as np
from scipy.sparse import csr_matrix
from scipy.sparse.csgraph import connected_components

from .circle import Angle, Arc, orbit, sigma
from .itinerary import lamination

__all__ = [
    "PairGraph",
    "AccSet",
    "pair_graph",
    "charpoly",
    "spectral_radius",
    "core_entropy",
    "acc_angles",
    "acc_counts",
    "hdim_growth",
]

logger = logging.getLogger(__name__)

CHARPOLY_MAX_NODES = 64


@dataclass(frozen=True)
class PairGraph:
    theta_c: Angle
    nodes: tuple
    edges: dict
    separated: frozenset

    @property
    def matrix(self):
        index = {v: i for i, v in enumerate(self.nodes)}
        m = np.zeros((len(self.nodes), len(self.nodes)), dtype=np.int64)
        for v, targets in self.edges.items():
            for w in targets:
                m[index[v], index[w]] += 1
        return m

    def to_dict(self):
        def name(pair):
            return "{" + ", ".join(map(str, pair)) + "}"
        return {
            "theta_c": str(self.theta_c),
            "nodes": [name(v) for v in self.nodes],
            "separated": [name(v) for v in self.nodes if v in self.separated],
            "edges": {name(v): [name(w) for w in self.edges[v]] for v in self.nodes},
            "matrix": self.matrix.tolist(),
        }

    def to_json(self):
        return json.dumps(self.to_dict(), indent=2)


def _pair(a, b):
    return (a, b) if a < b else (b, a)


def pair_graph(theta_c):
    """Transition graph on unordered pairs of postcritical angles.

    A pair is separated when neither angle is on the critical diameter and
    the diameter's endpoints fall on opposite sides of it; a separated pair
    ``{a, b}`` has edges to ``{2a, theta_c}`` and ``{2b, theta_c}``, any
    other pair one edge to ``{2a, 2b}``.  Pairs that collapse to a single
    angle are dropped.
    """
    theta_c = Angle(theta_c)
    _, _, points = orbit(theta_c)
    leaf = theta_c.preimages(2)
    nodes = sorted(_pair(points[i], points[j])
                   for i in range(len(points)) for j in range(i + 1, len(points)))
    edges, separated = {}, set()
    for a, b in nodes:
        arc = Arc.open(a, b)
        split = a not in leaf and b not in leaf and sum(x in arc for x in leaf) == 1
        if split:
            separated.add((a, b))
            candidates = [(sigma(a), theta_c), (sigma(b), theta_c)]
        else:
            candidates = [(sigma(a), sigma(b))]
        edges[(a, b)] = [_pair(x, y) for x, y in candidates if x != y]
    return PairGraph(theta_c, tuple(nodes), edges, frozenset(separated))


def charpoly(matrix):
    """Integer characteristic polynomial coefficients, leading coefficient first.

    Faddeev-LeVerrier; every division is exact over the integers.
    """
    A = np.array(matrix, dtype=object)
    n = A.shape[0]
    coeffs = [1]
    M = np.zeros((n, n), dtype=object)
    ident = np.identity(n, dtype=object)
    for k in range(1, n + 1):
        M = A.dot(M) + coeffs[-1] * ident
        c, r = divmod(-int(np.trace(A.dot(M))), k)
        assert r == 0
        coeffs.append(c)
    return coeffs


# polynomials below are lists of Fractions, lowest degree first

def _trim(p):
    while p and p[-1] == 0:
        p.pop()
    return p


def _divmod_poly(a, b):
    a = list(a)
    q = [Fraction(0)] * max(len(a) - len(b) + 1, 1)
    while len(a) >= len(b) and a:
        shift = len(a) - len(b)
        f = a[-1] / b[-1]
        q[shift] = f
        for i, c in enumerate(b):
            a[i + shift] -= f * c
        _trim(a)
    return q, a


def _gcd_poly(a, b):
    while b:
        _, r = _divmod_poly(a, b)
        a, b = b, r
    return [c / a[-1] for c in a]


def _positive_primitive(p):
    """Scale by a positive rational to integer coefficients (sign preserved)."""
    den = 1
    for c in p:
        den = den * c.denominator // gcd(den, c.denominator)
    ints = [int(c * den) for c in p]
    g = 0
    for c in ints:
        g = gcd(g, c)
    return [c // g for c in ints] if g else ints


def _sturm_chain(p):
    def prim(q):
        return [Fraction(c) for c in _positive_primitive(q)]
    chain = [prim(p), prim(_trim([c * i for i, c in enumerate(p)][1:]))]
    while chain[-1] and len(chain[-1]) > 1:
        _, r = _divmod_poly(chain[-2], chain[-1])
        if not r:
            break
        chain.append(prim([-c for c in r]))
    return [[int(c) for c in q] for q in chain if q]


def _sign_at(poly, num, shift):
    """Sign of an integer polynomial at num / 2**shift."""
    acc = 0
    scale = 1 << shift
    deg = len(poly) - 1
    for i in range(deg, -1, -1):
        acc = acc * num + poly[i] * scale ** (deg - i)
    return (acc > 0) - (acc < 0)


def _variations(chain, num, shift):
    signs = [s for s in (_sign_at(q, num, shift) for q in chain) if s]
    return sum(1 for i in range(1, len(signs)) if signs[i] != signs[i - 1])


def _radius_exact(matrix, tol):
    n = len(matrix)
    if n == 0:
        return 0.0
    coeffs = charpoly(matrix)
    p = _trim([Fraction(c) for c in reversed(coeffs)])
    dp = _trim([c * i for i, c in enumerate(p)][1:])
    g = _gcd_poly(p, dp)
    squarefree, _ = _divmod_poly(p, g) if len(g) > 1 else (p, [])
    squarefree = _trim(squarefree)
    chain = _sturm_chain(squarefree)
    bound = int(max(1, np.abs(np.asarray(matrix)).sum(axis=1).max())) + 1
    shift = 0
    lo, hi = -1, bound
    v_hi = _variations(chain, hi, 0)
    # largest real root: roots in (x, hi] exist iff variations(x) > variations(hi)
    while True:
        if (hi - lo) <= tol * 2 ** shift * 0.25 * max(1.0, lo / 2 ** shift):
            break
        lo, hi, shift = 2 * lo, 2 * hi, shift + 1
        v_hi_scaled = v_hi
        mid = lo + (hi - lo) // 2
        if _variations(chain, mid, shift) > v_hi_scaled:
            lo = mid
        else:
            hi = mid
    rho = (lo + hi) / 2 / 2 ** shift
    return max(rho, 0.0)


def _radius_power(matrix, tol, max_iter=200_000):
    A = np.asarray(matrix, dtype=float)
    n = A.shape[0]
    if n == 0:
        return 0.0
    ncomp, labels = connected_components(csr_matrix(A), directed=True, connection="strong")
    best = 0.0
    for comp in range(ncomp):
        idx = np.flatnonzero(labels == comp)
        block = A[np.ix_(idx, idx)]
        if not block.any():
            continue
        # positive diagonal makes an irreducible block primitive
        B = block + np.identity(len(idx))
        x = np.ones(len(idx))
        for _ in range(max_iter):
            y = B @ x
            ratios = y / x
            lo, hi = ratios.min(), ratios.max()
            if hi - lo <= tol * lo * 0.1:
                break
            x = y / y.max()
        else:
            logger.warning("power iteration did not converge; bracket [%g, %g]", lo, hi)
        best = max(best, (lo + hi) / 2 - 1.0)
    return best


def spectral_radius(matrix, method="auto", tol=1e-12):
    """Perron root of a nonnegative integer matrix.

    ``method`` is ``"exact"`` (characteristic polynomial and Sturm
    bisection), ``"power"`` (Collatz-Wielandt bracketed power iteration per
    strongly connected block) or ``"auto"`` (exact up to 64 rows).
    """
    n = len(matrix)
    if method == "auto":
        method = "exact" if n <= CHARPOLY_MAX_NODES else "power"
    if method == "exact":
        return _radius_exact(matrix, tol)
    if method == "power":
        return _radius_power(matrix, tol)
    raise ValueError(f"unknown method {method!r}")


def core_entropy(theta_c, tol=1e-9, method="auto"):
    """Log of the spectral radius of the pair graph, in ``[0, log 2]``."""
    if tol <= 0:
        raise ValueError("tol must be positive")
    rho = spectral_radius(pair_graph(theta_c).matrix, method, tol * 1e-3)
    return log(rho) if rho > 1 else 0.0


@dataclass(frozen=True)
class AccSet:
    angles: tuple
    bound: int

    def __contains__(self, theta):
        return Angle(theta) in set(self.angles)

    def __len__(self):
        return len(self.angles)

    def __iter__(self):
        return iter(self.angles)

    def issubset(self, other):
        return set(self.angles) <= set(other.angles)


def acc_angles(theta_c, max_period):
    """Periodic angles of period <= ``max_period`` whose ray shares its landing point."""
    if max_period < 1:
        raise ValueError("max_period must be >= 1")
    return AccSet(_acc(Angle(theta_c), max_period), max_period)


@lru_cache(maxsize=512)
def _acc(theta_c, max_period):
    lam = lamination(theta_c, max_period, 0, check=False)
    return tuple(sorted(a for c in lam.nontrivial() for a in c))


def acc_counts(theta_c, n_max):
    """``[|acc_angles(theta_c, n)| for n in 1..n_max]`` from one enumeration.

    Rays landing at a common periodic point share their period, so the
    classes at bound ``n`` are the classes at bound ``n_max`` restricted to
    period ``<= n``.
    """
    acc = acc_angles(theta_c, n_max)
    periods = [orbit(a)[1] for a in acc]
    return [sum(1 for p in periods if p <= n) for n in range(1, n_max + 1)]


def hdim_growth(theta_c, n_max, counts=None):
    """Dimension estimate of the biaccessible set from count growth.

    Fits ``log count(n) ~ g n`` by least squares over the upper half of
    ``1..n_max`` (early counts are dominated by transients) and returns
    ``g / log 2``.  Returns 0.0 when no biaccessible angle is found.
    """
    if n_max < 4:
        raise ValueError("n_max must be >= 4")
    if counts is None:
        counts = acc_counts(theta_c, n_max)
    start = n_max // 2
    xs = [n for n in range(start, n_max + 1) if counts[n - 1] > 0]
    if len(xs) < 2:
        logger.info("degenerate count sequence for %s; dimension 0", theta_c)
        return 0.0
    ys = [log(counts[n - 1]) for n in xs]
    slope = np.polyfit(xs, ys, 1)[0]
    return max(float(slope), 0.0) / log(2)
