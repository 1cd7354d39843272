"""scikit-learn style wrappers.

Angles go in as a 1-D sequence (or a single column) of exact rationals:
ints, Fractions or ``"p/q"`` strings.
"""

import numpy as np
from sklearn.base import BaseEstimator, ClusterMixin, TransformerMixin
from sklearn.utils.validation import check_is_fitted

from .circle import Angle, parse_angle, sigma
from .entropy import core_entropy, hdim_growth
from .itinerary import _quadratic_partition, boundary_side, lamination_from_partition

__all__ = ["check_angles", "LandingClusterer", "CoreEntropyTransformer"]


def check_angles(X):
    """Validate ``X`` and return a list of :class:`Angle`.

    Floats are refused: rounding would change the dynamics.
    """
    if isinstance(X, (str, bytes)):
        raise TypeError("expected a sequence of angles, got a single string")
    arr = np.asarray(X, dtype=object)
    if arr.ndim == 2 and arr.shape[1] == 1:
        arr = arr[:, 0]
    if arr.ndim != 1:
        raise ValueError(f"expected a 1-D sequence of angles, got shape {arr.shape}")
    if arr.size == 0:
        raise ValueError("no angles given")
    out = []
    for x in arr:
        if isinstance(x, str):
            out.append(parse_angle(x))
        elif isinstance(x, (float, np.floating)):
            raise TypeError(f"angle {x!r} is a float; pass an exact rational")
        else:
            out.append(Angle(int(x)) if isinstance(x, np.integer) else Angle(x))
    return out


def _forward_closure(angles):
    seen = set()
    for a in angles:
        while a not in seen:
            seen.add(a)
            a = sigma(a)
    return sorted(seen)


class LandingClusterer(ClusterMixin, BaseEstimator):
    """Group angles by where their rays land for the parameter ``theta_c``.

    ``labels_`` numbers the classes met by the training angles in order of
    first appearance.  ``predict`` returns the label of a fitted class the
    angle lands with, or -1.
    """

    def __init__(self, theta_c="1/7"):
        self.theta_c = theta_c

    def _lamination(self, angles):
        theta_c = parse_angle(self.theta_c) if isinstance(self.theta_c, str) else Angle(self.theta_c)
        return lamination_from_partition(
            _forward_closure(angles), _quadratic_partition(theta_c), boundary_side(theta_c), 2,
            check=False, theta_c=theta_c)

    def fit(self, X, y=None):
        angles = check_angles(X)
        lam = self._lamination(angles)
        ids = {}
        labels = []
        for a in angles:
            key = lam.class_of(a)
            labels.append(ids.setdefault(key, len(ids)))
        self.labels_ = np.array(labels)
        self.representatives_ = [key[0] for key in ids]
        self.classes_ = list(ids)
        return self

    def predict(self, X):
        check_is_fitted(self, "representatives_")
        angles = check_angles(X)
        lam = self._lamination(angles + self.representatives_)
        out = []
        for a in angles:
            label = -1
            for i, r in enumerate(self.representatives_):
                if lam.equivalent(a, r):
                    label = i
                    break
            out.append(label)
        return np.array(out)


class CoreEntropyTransformer(TransformerMixin, BaseEstimator):
    """Map parameter angles to their core entropy.

    With ``with_dimension=True`` a second column holds the growth-rate
    dimension estimate at bound ``n_max``.
    """

    def __init__(self, tol=1e-9, method="auto", with_dimension=False, n_max=10):
        self.tol = tol
        self.method = method
        self.with_dimension = with_dimension
        self.n_max = n_max

    def fit(self, X, y=None):
        check_angles(X)
        if self.tol <= 0:
            raise ValueError("tol must be positive")
        self.n_features_in_ = 1
        return self

    def transform(self, X):
        check_is_fitted(self, "n_features_in_")
        angles = check_angles(X)
        cols = [[core_entropy(a, self.tol, self.method) for a in angles]]
        if self.with_dimension:
            cols.append([hdim_growth(a, self.n_max) for a in angles])
        return np.array(cols, dtype=float).T
