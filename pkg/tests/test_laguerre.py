import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from scipy.special import eval_genlaguerre, hyp1f1

from utils.laguerre import genlaguerre_recurrence, kummer_series, kummer_terminating

degrees = st.integers(min_value=0, max_value=10)
shapes = st.floats(min_value=1.0, max_value=8.0)
points = st.floats(min_value=0.0, max_value=10.0)


@given(degrees, shapes, points)
@settings(max_examples=200, deadline=None)
def test_terminating_kummer_consistency(n, b, x):
    # sum of |terms| is bounded by 1F1(n, b, x)
    scale = hyp1f1(n, b, x)
    value = kummer_terminating(n, b, x)
    assert value == pytest.approx(kummer_series(-n, b, x), abs=1e-12 * scale)
    assert value == pytest.approx(hyp1f1(-n, b, x), abs=1e-12 * scale)


@given(degrees, st.floats(min_value=0.0, max_value=7.0), points)
@settings(max_examples=200, deadline=None)
def test_laguerre_recurrence_matches_scipy(n, alpha, x):
    expected = eval_genlaguerre(n, alpha, x)
    scale = max(1.0, abs(expected), eval_genlaguerre(n, alpha, -x))
    assert genlaguerre_recurrence(n, alpha, x) == pytest.approx(expected, abs=1e-12 * scale)


def test_low_degrees():
    x = np.array([0.0, 0.5, 2.0])
    np.testing.assert_allclose(kummer_terminating(0, 3.0, x), 1.0)
    np.testing.assert_allclose(kummer_terminating(1, 3.0, x), 1.0 - x / 3.0)
    np.testing.assert_allclose(kummer_terminating(2, 2.0, x), 1.0 - x + x * x / 6.0)


def test_series_for_non_terminating_argument():
    # 1F1(a, a, x) = e^x
    assert kummer_series(1.5, 1.5, 2.0) == pytest.approx(np.exp(2.0), rel=1e-14)
