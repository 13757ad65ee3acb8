import numpy as np
import pytest

from bergzyg.scale import ScaleFunction
from bergzyg.weights import RadialWeight


@pytest.fixture
def unit_weight():
    return RadialWeight.power(0.0)


@pytest.fixture
def linear_weight():
    return RadialWeight.power(1.0)


@pytest.fixture
def loginvsq_weight():
    return RadialWeight.log_inverse_square()


@pytest.fixture
def const_scale():
    return ScaleFunction.constant(1.0)


@pytest.fixture
def log_scale():
    return ScaleFunction.log_power(1.0)


def make_splice_scale():
    """Non-essentially-monotonic splice: an increasing log power on most of
    the line, a decreasing one on the squared-interval chain (x_n, y_n),
    x_{n+1} = x_n^2, y_{n+1} = y_n^2. Both pieces are square-comparable, the
    splice is not essentially monotone. Tabulated with knots hugging the
    splice points so the diagnostic grid sees both branches."""
    def f_log(x):
        return 8.0 * np.log(np.log(np.e + x))

    def g_log(x):
        return -8.0 * np.log(np.log(np.e + x))

    intervals = []
    x_n, y_n = 4.0, 8.0
    while x_n < 1e12:
        intervals.append((x_n, y_n))
        x_n, y_n = x_n * x_n, y_n * y_n

    knots = list(np.geomspace(1.0, 1e13, 512))
    for lo, hi in intervals:
        knots += [lo * 0.9999, lo * 1.0001, hi * 0.9999, hi * 1.0001]
    knots = np.array(sorted(set(knots)))

    values = np.empty_like(knots)
    for i, x in enumerate(knots):
        inside = any(lo < x < hi for lo, hi in intervals)
        values[i] = g_log(x) if inside else f_log(x)
    return ScaleFunction.from_log_values(knots, values)


@pytest.fixture
def splice_scale():
    return make_splice_scale()


def make_exp_scale():
    """Psi(x) = e^x, tabulated in the log domain: essentially monotone but
    the ratio at x versus x^2 collapses, so it is outside the class."""
    x = np.geomspace(1e-6, 1e12, 768)
    return ScaleFunction.from_log_values(x, x)
