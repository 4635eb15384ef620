import cmath
import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from scipy.optimize import minimize_scalar

from teichpoisson.surface import (
    HalfPlanePoint,
    Lamination,
    ProjectiveLamination,
    QuadDifferential,
    disk_distance,
    ext_direction,
    extremal_length,
    geodesic_ray,
    hm_differential,
    horizontal_lamination,
    intersection_number,
    lamination_of_angle,
    ray_endpoint,
    teich_distance,
    teichmuller_disk,
    vertical_lamination,
)

I = HalfPlanePoint(0.0, 1.0)

points = st.builds(HalfPlanePoint, st.floats(-5, 5), st.floats(0.05, 20))
nonzero = st.tuples(st.floats(-10, 10), st.floats(-10, 10)).filter(lambda v: math.hypot(*v) > 1e-3)


def kerckhoff_distance(x, y):
    """Half log of the sup over directions of Ext_y / Ext_x, by dense search then refinement."""
    th = np.linspace(0.0, math.pi, 4097)
    ratio = ext_direction(y, th) / ext_direction(x, th)
    k = int(np.argmax(ratio))
    lo, hi = th[max(k - 1, 0)], th[min(k + 1, th.size - 1)]
    res = minimize_scalar(lambda t: -ext_direction(y, t) / ext_direction(x, t), bounds=(lo, hi),
                          method="bounded", options={"xatol": 1e-14})
    return 0.5 * math.log(max(ratio[k], -res.fun))


# --- intersection numbers and extremal length -------------------------------------------------

@pytest.mark.parametrize("l1, l2, expected", [((1, 0), (0, 1), 1.0), ((2, 0), (0, 3), 6.0), ((1, 2), (1, 2), 0.0)])
def test_intersection_examples(l1, l2, expected):
    assert intersection_number(Lamination(*l1), Lamination(*l2)) == expected


@pytest.mark.parametrize("x, lam, expected", [((0, 1), (1, 0), 1.0), ((0, 2), (0, 1), 2.0), ((1, 1), (1, -1), 1.0)])
def test_extremal_length_examples(x, lam, expected):
    assert extremal_length(HalfPlanePoint(*x), Lamination(*lam)) == pytest.approx(expected, rel=1e-15)


def test_bad_inputs_rejected():
    with pytest.raises(ValueError):
        HalfPlanePoint(0.0, 0.0)
    with pytest.raises(ValueError):
        HalfPlanePoint(0.0, -1.0)
    with pytest.raises(ValueError):
        Lamination(0.0, 0.0)
    with pytest.raises(ValueError):
        Lamination.curve(2, 4)


@given(points, nonzero, st.floats(0.01, 100))
def test_extremal_length_is_quadratic(x, pq, t):
    lam = Lamination(*pq)
    assert extremal_length(x, lam.scaled(t)) == pytest.approx(t * t * extremal_length(x, lam), rel=1e-12)


@given(nonzero, nonzero, st.floats(0.01, 100))
def test_intersection_bilinear_and_symmetric(a, b, t):
    la, lb = Lamination(*a), Lamination(*b)
    assert intersection_number(la, lb) == intersection_number(lb, la)
    scale = t * la.mass * lb.mass
    assert intersection_number(la.scaled(t), lb) == pytest.approx(t * intersection_number(la, lb), rel=1e-12,
                                                                  abs=1e-14 * scale)


@given(points, nonzero, nonzero)
def test_minkowski_inequality(x, a, b):
    # i(a, b)^2 <= Ext(a) Ext(b) on the torus
    la, lb = Lamination(*a), Lamination(*b)
    lhs = intersection_number(la, lb) ** 2
    assert lhs <= extremal_length(x, la) * extremal_length(x, lb) * (1 + 1e-12)


# --- Hubbard-Masur differentials -------------------------------------------------------------

def test_hm_differential_square_torus():
    q = hm_differential(I, Lamination(0, 1))
    assert q.w == pytest.approx(1.0, abs=1e-15)
    assert q.norm == pytest.approx(1.0, rel=1e-15)
    q2 = hm_differential(I, Lamination(0, 3))
    assert q2.w == pytest.approx(9.0, rel=1e-15)


def test_vertical_lamination_of_dz2():
    lam = vertical_lamination(QuadDifferential(I, 1.0))
    assert (abs(lam.p), abs(lam.q)) == pytest.approx((0.0, 1.0), abs=1e-15)
    # its transverse measure against test curves: |Re(p' + q' i)| = |p'|
    for p, q in [(1, 0), (0, 1), (1, 1), (3, -2)]:
        assert intersection_number(lam, Lamination(p, q)) == pytest.approx(abs(p), abs=1e-15)


def test_horizontal_is_vertical_of_negative():
    q = hm_differential(HalfPlanePoint(0.3, 1.7), Lamination(1, 2))
    assert horizontal_lamination(q) == vertical_lamination(-q)
    h = horizontal_lamination(q)
    assert intersection_number(h, Lamination(1, 2)) > 0


@given(points, nonzero)
@settings(max_examples=200)
def test_hm_round_trip_and_norm(x, pq):
    lam = Lamination(*pq)
    q = hm_differential(x, lam)
    back = vertical_lamination(q)
    canon = lam.canonical()
    scale = max(abs(canon.p), abs(canon.q))
    assert back.p == pytest.approx(canon.p, abs=1e-9 * scale)
    assert back.q == pytest.approx(canon.q, abs=1e-9 * scale)
    assert q.norm == pytest.approx(extremal_length(x, lam), rel=1e-12)


# --- distances, rays and disks -----------------------------------------------------------------

def test_distance_examples():
    assert teich_distance(I, I) == 0.0
    assert teich_distance(I, HalfPlanePoint(0.0, math.e ** 2)) == pytest.approx(1.0, rel=1e-14)


@pytest.mark.parametrize("x, y", [((0, 1), (0, 7.389056098930650)), ((0.3, 0.4), (-2, 5)), ((1, 0.01), (1.5, 0.02)),
                                  ((-3, 2), (4, 0.5))])
def test_distance_matches_kerckhoff_oracle(x, y):
    x, y = HalfPlanePoint(*x), HalfPlanePoint(*y)
    assert teich_distance(x, y) == pytest.approx(kerckhoff_distance(x, y), rel=1e-9)


@given(points, points)
def test_distance_symmetric(x, y):
    assert teich_distance(x, y) == pytest.approx(teich_distance(y, x), rel=1e-12, abs=1e-15)


@pytest.mark.parametrize("t", [0.0, 0.5, 1.0, 3.0])
def test_ray_examples(t):
    up = geodesic_ray(I, Lamination(1, 0))
    down = geodesic_ray(I, Lamination(0, 1))
    assert up.endpoint == math.inf
    assert down.endpoint == 0.0
    y = up.evaluate(t)
    assert (y.a, y.b) == pytest.approx((0.0, math.exp(2 * t)), rel=1e-14, abs=1e-14)
    y = down.evaluate(t)
    assert (y.a, y.b) == pytest.approx((0.0, math.exp(-2 * t)), rel=1e-14, abs=1e-14)


@pytest.mark.parametrize("lam, end", [((1, 0), math.inf), ((0, 1), 0.0), ((1, 1), -1.0), ((2, -1), 2.0)])
def test_ray_endpoints(lam, end):
    assert ray_endpoint(Lamination(*lam)) == end


@given(points, nonzero, st.floats(0, 8))
@settings(max_examples=200)
def test_ray_laws(x, pq, t):
    lam = Lamination(*pq)
    ray = geodesic_ray(x, lam)
    start = ray.evaluate(0.0)
    assert (start.a, start.b) == pytest.approx((x.a, x.b), rel=1e-14, abs=1e-14)
    y = ray.evaluate(t)
    assert extremal_length(y, lam) == pytest.approx(math.exp(-2 * t) * extremal_length(x, lam), rel=1e-9)
    assert teich_distance(x, y) == pytest.approx(t, abs=1e-9)
    # the horizontal lamination grows at the reciprocal rate
    h = horizontal_lamination(hm_differential(x, lam))
    assert extremal_length(y, h) == pytest.approx(math.exp(2 * t) * extremal_length(x, h), rel=1e-8)


def test_disk_examples():
    q = QuadDifferential(I, 1.0)
    phi = teichmuller_disk(q)
    assert (phi(0).a, phi(0).b) == pytest.approx((0.0, 1.0), abs=1e-15)
    for t in (0.2, 1.0, 2.5):
        y = phi(math.tanh(t))
        assert (y.a, y.b) == pytest.approx((0.0, math.exp(-2 * t)), rel=1e-12, abs=1e-15)
    with pytest.raises(ValueError):
        phi(1.0)


@pytest.mark.parametrize("theta, direction", [(0.0, (0, 1)), (math.pi, (1, 0))])
def test_lamination_of_angle_examples(theta, direction):
    got = lamination_of_angle(QuadDifferential(I, 1.0), theta)
    assert isinstance(got, ProjectiveLamination)
    want = Lamination(*direction).direction()
    assert min(abs(got.theta - want.theta), math.pi - abs(got.theta - want.theta)) < 1e-14


@given(points, st.complex_numbers(max_magnitude=5).filter(lambda w: abs(w) > 1e-3),
       st.floats(0, 2 * math.pi), st.floats(0.01, 4))
@settings(max_examples=200)
def test_disk_matches_rays(x, w, theta, t):
    q = QuadDifferential(x, w)
    y = teichmuller_disk(q)(math.tanh(t) * cmath.exp(1j * theta))
    lam = lamination_of_angle(q, theta).representative()
    z = geodesic_ray(x, lam).evaluate(t)
    assert teich_distance(y, z) < 1e-8


@given(points, st.complex_numbers(max_magnitude=0.95), st.complex_numbers(max_magnitude=0.95))
def test_disk_is_isometric(x, z1, z2):
    phi = teichmuller_disk(QuadDifferential(x, 1.0 + 0.5j))
    assert teich_distance(phi(z1), phi(z2)) == pytest.approx(disk_distance(z1, z2), abs=1e-9)
