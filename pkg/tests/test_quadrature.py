import math

import numpy as np
import pytest
from scipy.special import gamma, gammainc

from diamond_bath.quadrature import PanelRule, panel_sums, tanh_sinh


@pytest.mark.parametrize(
    "f, exact",
    [
        (lambda x: x ** -0.5, 2.0),
        (np.log, -1.0),
        (np.sqrt, 2.0 / 3.0),
        (lambda x: np.cos(7 * x), math.sin(7) / 7),
        (lambda x: x ** 0.25 * np.exp(-x), gammainc(1.25, 1.0) * gamma(1.25)),
    ],
)
def test_tanh_sinh_endpoint_behaviour(f, exact):
    value, est = tanh_sinh(f, rtol=1e-13)
    assert value == pytest.approx(exact, rel=1e-12)
    assert est < 1e-10


def test_tanh_sinh_reports_unconverged_estimate():
    # Too few levels for an oscillatory integrand: the estimate says so.
    value, est = tanh_sinh(lambda x: np.cos(400 * x), rtol=1e-14, max_level=2)
    assert est > 1e-6


def test_panel_rule_exact_for_polynomials():
    rule = PanelRule(start=1.0, width=0.5, n_panels=6)
    assert rule.end == pytest.approx(4.0)
    value, est = panel_sums(rule, lambda x: x**15)
    assert value == pytest.approx((4.0**16 - 1.0) / 16, rel=1e-13)
    assert est <= 1e-9 * value


def test_panel_rule_half_oscillation_panels():
    t = 37.0
    n = 200
    rule = PanelRule(0.0, math.pi / t, n)
    value, est = panel_sums(rule, lambda x: np.sin(x * t) * np.exp(-x))
    b = rule.end
    exact = (t - math.exp(-b) * (math.sin(t * b) + t * math.cos(t * b))) / (1 + t * t)
    assert value == pytest.approx(exact, rel=1e-12)
    assert abs(value - exact) <= est
