import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from scipy import integrate as sci

from teichpoisson.quadrature import (
    GAUSS_WEIGHTS,
    KRONROD_WEIGHTS,
    NODES,
    McConfig,
    PanelLimitExceeded,
    integrate_circle_pml,
    integrate_interval,
    integrate_real_line,
    mc_integrate,
)
from teichpoisson.surface import HalfPlanePoint

I = HalfPlanePoint(0.0, 1.0)


def test_rule_tables():
    assert math.fsum(KRONROD_WEIGHTS) == pytest.approx(2.0, abs=1e-15)
    assert math.fsum(GAUSS_WEIGHTS) == pytest.approx(2.0, abs=1e-15)
    assert np.allclose(NODES, -NODES[::-1], atol=0)
    # Gauss 7 is exact through degree 13, Kronrod 15 through degree 22
    for k in range(0, 23):
        exact = 0.0 if k % 2 else 2.0 / (k + 1)
        assert KRONROD_WEIGHTS @ NODES ** k == pytest.approx(exact, abs=1e-15)
        if k <= 13:
            assert GAUSS_WEIGHTS @ NODES ** k == pytest.approx(exact, abs=1e-15)


def test_spec_examples():
    assert integrate_interval(lambda t: np.ones_like(t), 0.0, math.pi).value == pytest.approx(math.pi, rel=1e-15)
    assert integrate_interval(lambda t: np.cos(t) ** 2, 0.0, 2 * math.pi).value == pytest.approx(math.pi, rel=1e-14)
    assert integrate_real_line(lambda s: 1.0 / (math.pi * (1 + s * s))).value == pytest.approx(1.0, rel=1e-13)


@given(st.lists(st.floats(-3, 3), min_size=1, max_size=11), st.floats(-2, 0), st.floats(0.1, 2))
@settings(max_examples=100)
def test_polynomials_exact(coeffs, lo, width):
    hi = lo + width
    poly = np.polynomial.Polynomial(coeffs)
    anti = poly.integ()
    res = integrate_interval(poly, lo, hi, 1e-13)
    assert res.panels == 1
    assert res.value == pytest.approx(anti(hi) - anti(lo), abs=1e-13 * max(1.0, np.abs(coeffs).sum()))


@pytest.mark.parametrize("f, lo, hi", [
    (lambda t: np.exp(-t * t), -4.0, 3.0),
    (lambda t: np.sqrt(t), 0.0, 2.0),
    (lambda t: 1.0 / (1.0 + 100.0 * (t - 0.3) ** 2), -1.0, 1.0),
    (lambda t: np.abs(np.sin(5 * t)), 0.0, math.pi),
])
def test_against_quadpack(f, lo, hi):
    ours = integrate_interval(f, lo, hi, 1e-12)
    ref, _ = sci.quad(lambda t: float(f(np.array([t]))[0]), lo, hi, epsabs=1e-13, epsrel=1e-13, limit=500)
    assert ours.value == pytest.approx(ref, abs=1e-11)
    assert ours.error_estimate <= 1e-10


def test_breakpoints_handle_steps():
    step = lambda t: np.where(t < 1.234567, 1.0, -2.0)
    res = integrate_interval(step, 0.0, 2.0, 1e-13, breakpoints=[1.234567])
    assert res.value == pytest.approx(1.234567 - 2 * (2 - 1.234567), abs=1e-13)
    assert res.panels == 2


def test_scalar_integrand_fallback():
    assert integrate_interval(math.sin, 0.0, math.pi).value == pytest.approx(2.0, rel=1e-13)


def test_panel_limit():
    with pytest.raises(PanelLimitExceeded):
        integrate_interval(lambda t: 1.0 / np.abs(t - (math.e - 2)) ** 1.5, 0.0, 1.0, 1e-10, max_panels=500)


def test_rejects_bad_input():
    with pytest.raises(ValueError):
        integrate_interval(np.sin, 1.0, 0.0)
    with pytest.raises(ValueError), np.errstate(divide="ignore"):
        integrate_interval(lambda t: 1.0 / t, -1.0, 1.0)


def test_deterministic():
    f = lambda t: np.exp(np.sin(7 * t))
    a = integrate_interval(f, 0.0, 3.0, 1e-12)
    b = integrate_interval(f, 0.0, 3.0, 1e-12)
    assert a == b


def test_circle_examples():
    x = HalfPlanePoint(0.7, 0.3)
    assert integrate_circle_pml(lambda t: np.ones_like(t), x).value == pytest.approx(1.0, abs=1e-12)
    half = integrate_circle_pml(lambda t: (t <= math.pi / 2).astype(float), I, 1e-12,
                                breakpoints=[math.pi / 2]).value
    assert half == pytest.approx(0.5, abs=1e-13)


def test_mc_constant():
    est, se = mc_integrate(lambda t: np.ones_like(t), I, McConfig(7, 1000))
    assert est == 1.0 and se == 0.0


def test_mc_reproducible_and_worker_independent(monkeypatch):
    f = lambda t: np.sin(t) ** 3
    cfg = McConfig(123, 200_000)
    a = mc_integrate(f, HalfPlanePoint(1.0, 2.0), cfg, workers=1)
    b = mc_integrate(f, HalfPlanePoint(1.0, 2.0), cfg, workers=3)
    monkeypatch.setenv("TEICH_THREADS", "2")
    c = mc_integrate(f, HalfPlanePoint(1.0, 2.0), cfg)
    assert a == b == c
    assert mc_integrate(f, HalfPlanePoint(1.0, 2.0), McConfig(124, 200_000)) != a


def test_mc_unbiased():
    # uniform cone measure at i: E[cos^2 2 theta] = 1/2
    est, se = mc_integrate(lambda t: np.cos(2 * t) ** 2, I, McConfig(99, 400_000))
    assert abs(est - 0.5) < 5 * se
    assert se == pytest.approx(math.sqrt(1 / 8 / 400_000), rel=0.02)


def test_mc_config_validation():
    with pytest.raises(ValueError):
        McConfig(-1, 10)
    with pytest.raises(ValueError):
        McConfig(1, 0)
    with pytest.raises(ValueError):
        McConfig(1, 10, "MT19937")
    assert McConfig(5, 10).metadata()["generator_id"] == "PCG64"
