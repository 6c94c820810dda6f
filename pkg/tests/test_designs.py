import json
from fractions import Fraction

import numpy as np
import pytest

from kmixture.designs import ComponentBounds, Design, check_point
from kmixture.errors import (
    DesignFormatError,
    DimensionMismatchError,
    InfeasibleBoundsError,
    InvalidDesignError,
)


def test_check_point_tolerances():
    check_point([0.5, 0.5 + 5e-13])
    check_point([1 + 1e-13, -1e-13])
    with pytest.raises(InvalidDesignError):
        check_point([0.5, 0.5 + 1e-11])
    with pytest.raises(InvalidDesignError):
        check_point([1.1, -0.1])


def test_uniform_and_exact():
    d = Design.uniform(np.eye(3))
    assert d.exact_weights == (Fraction(1, 3),) * 3
    assert d.q == 3 and d.n == 3


def test_rejects_bad_weights():
    with pytest.raises(InvalidDesignError):
        Design(np.eye(2), [0.6, 0.6])
    with pytest.raises(InvalidDesignError):
        Design(np.eye(2), [1.5, -0.5])
    with pytest.raises(DimensionMismatchError):
        Design(np.eye(2), [1.0])


def test_rejects_duplicates():
    with pytest.raises(InvalidDesignError, match="coincide"):
        Design([[1, 0], [0.5, 0.5], [1 - 5e-11, 5e-11]], [0.2, 0.3, 0.5])
    Design([[1, 0], [1 - 1e-9, 1e-9]], [0.5, 0.5])


def test_immutable():
    d = Design.uniform(np.eye(2))
    with pytest.raises(ValueError):
        d.weights[0] = 1.0


def test_json_round_trip_keeps_exact_weights():
    d = Design(np.eye(3), [0.5, 0.25, 0.25], (Fraction(1, 2), Fraction(1, 4), Fraction(1, 4)))
    back = Design.from_json(d.to_json())
    np.testing.assert_array_equal(back.points, d.points)
    assert back.exact_weights == d.exact_weights


def test_json_weights_optional():
    d = Design.from_json(json.dumps({"q": 2, "points": [[1, 0], [0, 1]]}))
    np.testing.assert_array_equal(d.weights, [0.5, 0.5])


def test_json_errors():
    with pytest.raises(DesignFormatError):
        Design.from_json("{not json")
    with pytest.raises(DesignFormatError):
        Design.from_json('{"q": 2}')
    with pytest.raises(DimensionMismatchError):
        Design.from_json('{"q": 3, "points": [[1, 0], [0, 1]]}')
    with pytest.raises(InvalidDesignError):
        Design.from_json('{"points": [[1, 0], [0, 1]], "weights": [0.5, 0.5], "weights_exact": ["1/3", "2/3"]}')


def test_csv():
    text = Design.uniform(np.eye(2)).to_csv()
    assert text == "x1,x2,weight\n1,0,0.5\n0,1,0.5\n"


def test_bounds_validation():
    with pytest.raises(InfeasibleBoundsError):
        ComponentBounds([0.5, 0.1], [0.4, 1.0])
    with pytest.raises(InfeasibleBoundsError):
        ComponentBounds([1.0, 0.0], [1.0, 1.0])
    b = ComponentBounds.from_json('{"upper": [0.43, 0.35, 0.5]}')
    np.testing.assert_array_equal(b.lower, [0, 0, 0])
    with pytest.raises(DimensionMismatchError):
        ComponentBounds.from_json('{"lower": [0.1, 0.1]}', q=3)
