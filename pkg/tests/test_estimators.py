from fractions import Fraction
from math import log

import numpy as np
import pytest
from sklearn.base import clone

from raylam.circle import Angle
from raylam.estimators import CoreEntropyTransformer, LandingClusterer, check_angles


def test_check_angles_accepts_exact_inputs():
    got = check_angles(["1/7", Fraction(2, 7), 0, np.int64(1)])
    assert got == [Angle(1, 7), Angle(2, 7), Angle(0), Angle(0)]
    assert check_angles(np.array([["1/3"], ["2/3"]], dtype=object)) == [Angle(1, 3), Angle(2, 3)]


@pytest.mark.parametrize("bad,exc", [
    ([0.25], TypeError),
    ("1/7", TypeError),
    ([], ValueError),
    ([["1/7", "2/7"]], ValueError),
])
def test_check_angles_rejects(bad, exc):
    with pytest.raises(exc):
        check_angles(bad)


def test_clusterer_params_and_clone():
    est = LandingClusterer(theta_c="3/7")
    assert est.get_params() == {"theta_c": "3/7"}
    assert clone(est).theta_c == "3/7"


def test_clusterer_rabbit():
    X = ["1/7", "2/7", "4/7", "3/7", "1/14", "9/14", "11/14"]
    labels = LandingClusterer("1/7").fit_predict(X)
    assert labels.tolist() == [0, 0, 0, 1, 2, 2, 2]


def test_clusterer_predict():
    est = LandingClusterer("1/3").fit(["1/3", "0"])
    assert est.predict(["2/3", "1/3", "1/7"]).tolist() == [0, 0, -1]


def test_clusterer_predict_before_fit():
    from sklearn.exceptions import NotFittedError
    with pytest.raises(NotFittedError):
        LandingClusterer().predict(["1/7"])


def test_entropy_transformer():
    t = CoreEntropyTransformer()
    out = t.fit_transform(["1/2", "1/7", "3/7"])
    assert out.shape == (3, 1)
    assert np.allclose(out[:, 0], [log(2), 0.0, log((1 + 5 ** 0.5) / 2)], atol=1e-9)
    out = CoreEntropyTransformer(with_dimension=True, n_max=6).fit_transform(["1/7"])
    assert out.shape == (1, 2)
    with pytest.raises(ValueError):
        CoreEntropyTransformer(tol=0).fit(["1/2"])
