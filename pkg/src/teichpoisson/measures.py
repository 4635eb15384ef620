"""Thurston cone measure, pluriharmonic kernel and the measures built from them.

On the torus ``ML = R^2 / +-1`` with Lebesgue measure as the Thurston
measure.  Cutting the unit extremal-length ball into sectors gives, for the
angle ``theta`` in ``[0, pi)``, the density ``1 / (c_x Ext_x(cos, sin))`` with
``c_x`` the cone mass.  Boundary points of the Bers slice are represented by
these angles; rational angles form a null set and are not singled out here.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .quadrature import QuadResult, integrate_interval
from .surface import (
    COMPLEXITY,
    HalfPlanePoint,
    Lamination,
    ProjectiveLamination,
    QuadDifferential,
    angle_directions,
    ext_direction,
    hm_w,
    ray_tau,
)

NORMALIZER_TOL = 1e-12


@lru_cache(maxsize=4096)
def _cone_normalizer(a: float, b: float) -> float:
    x = HalfPlanePoint(a, b)
    return integrate_interval(lambda th: 1.0 / ext_direction(x, th), 0.0, math.pi, NORMALIZER_TOL).value


def cone_mass(x: HalfPlanePoint, tol=NORMALIZER_TOL) -> float:
    """Lebesgue area of ``{lambda : Ext_x(lambda) <= 1}``, by sectors."""
    return integrate_interval(lambda th: 0.5 / ext_direction(x, th), 0.0, 2 * math.pi, tol).value


@dataclass(frozen=True)
class BoundaryMeasure:
    """Probability measure on projective laminations, as a density in ``theta``."""

    basepoint: HalfPlanePoint
    normalization: float

    def density(self, theta):
        return 1.0 / (self.normalization * ext_direction(self.basepoint, theta))

    def mass(self, lo, hi, tol=1e-13) -> float:
        """Measure of the arc ``[lo, hi]`` (``lo <= hi`` within ``[0, pi]``)."""
        if hi <= lo:
            return 0.0
        return integrate_interval(self.density, lo, hi, tol).value

    def integrate(self, f, tol=1e-10, breakpoints=()) -> QuadResult:
        return integrate_interval(lambda th: f(th) * self.density(th), 0.0, math.pi, tol,
                                  breakpoints=breakpoints)

    def bin_masses(self, edges):
        edges = np.asarray(edges, dtype=float)
        return np.array([self.mass(lo, hi) for lo, hi in zip(edges[:-1], edges[1:])])


def thurston_density(x: HalfPlanePoint) -> BoundaryMeasure:
    """Normalized cone measure at ``x`` (the pluriharmonic measure with pole ``x``)."""
    return BoundaryMeasure(x, _cone_normalizer(x.a, x.b))


def change_of_basepoint_density(x: HalfPlanePoint, y: HalfPlanePoint, theta):
    """Radon-Nikodym derivative ``d mu_x / d mu_y = (Ext_y / Ext_x)^xi``."""
    return (ext_direction(y, theta) / ext_direction(x, theta)) ** COMPLEXITY


def pluriharmonic_kernel(x0: HalfPlanePoint, x: HalfPlanePoint, phi, exponent=COMPLEXITY):
    """Poisson kernel ``(Ext_x0 / Ext_x)^xi`` at boundary direction(s) ``phi``.

    ``phi`` is a :class:`ProjectiveLamination` (a curve direction gives 1) or
    an array of angles.  ``exponent`` exists only for negative controls.
    """
    if isinstance(phi, ProjectiveLamination):
        if phi.rational:
            return 1.0
        phi = phi.theta
    if isinstance(phi, Lamination):
        if phi.is_curve:
            return 1.0
        phi = phi.direction().theta
    return (ext_direction(x0, phi) / ext_direction(x, phi)) ** exponent


def angle_of_slope(s, endpoint_sign=-1):
    """Angle whose ray lands at ``s``; inverse of ``s = endpoint_sign * cot(theta)``."""
    s = np.asarray(s, dtype=float)
    return 0.5 * np.pi - endpoint_sign * np.arctan(s)


def boundary_line_density(x: HalfPlanePoint, s, endpoint_sign=-1):
    """Density of the cone measure pushed to the real line by the ray endpoint map.

    ``endpoint_sign=+1`` uses the wrong map ``s = cot(theta)`` and is only
    meant as a negative control.
    """
    s = np.asarray(s, dtype=float)
    theta = angle_of_slope(s, endpoint_sign)
    return thurston_density(x).density(theta) / (1.0 + s * s)


@dataclass(frozen=True)
class SphereMeasure:
    """Cone measure at ``center`` carried to the sphere of radius ``radius`` by rays."""

    center: HalfPlanePoint
    radius: float

    def __post_init__(self):
        if not self.radius > 0:
            raise ValueError("radius must be positive")

    def support(self, theta):
        """Points of ``S(center, radius)`` reached along the directions ``theta``."""
        theta = np.asarray(theta, dtype=float)
        return ray_tau(self.center, np.cos(theta), np.sin(theta), self.radius)

    def integrate(self, f, tol=1e-12) -> QuadResult:
        """``int f d mu_{x;r}`` for a vectorized ``f`` of complex moduli."""
        measure = thurston_density(self.center)
        return measure.integrate(lambda th: f(self.support(th)), tol)


def sphere_measure(x: HalfPlanePoint, r: float) -> SphereMeasure:
    return SphereMeasure(x, float(r))


@dataclass(frozen=True)
class FiberMeasure:
    """Angle measure: push-forward of ``d alpha / 2 pi`` on the circle of rotations of ``q``."""

    differential: QuadDifferential

    def directions(self, alpha):
        """Forward map ``alpha -> [v(exp(-i alpha) q)]`` as angles in ``[0, pi)``."""
        return angle_directions(self.differential, alpha)

    def rotation_of(self, theta):
        """Rotation angle(s) ``alpha`` with ``[v(exp(-i alpha) q)] = theta``.

        ``exp(-i alpha) w`` must be a positive multiple of the Hubbard-Masur
        coefficient of ``(cos theta, sin theta)``.
        """
        theta = np.asarray(theta, dtype=float)
        w_theta = hm_w(self.differential.base, np.cos(theta), np.sin(theta))
        return np.angle(self.differential.w) - np.angle(w_theta)

    def cdf_mass(self, edges):
        """Masses of consecutive direction bins ``[edges[i], edges[i+1]]``.

        The forward map is an increasing bijection from a half-open circle of
        rotations onto the directions, so each bin pulls back to one arc whose
        length is the rotation increment taken mod 2 pi.  Bins are halved first
        so no piece can have full mass, where that increment would read 0.
        """
        edges = np.asarray(edges, dtype=float)
        mids = 0.5 * (edges[:-1] + edges[1:])
        fine = np.empty(2 * edges.size - 1)
        fine[0::2] = edges
        fine[1::2] = mids
        steps = np.mod(np.diff(self.rotation_of(fine)), 2 * np.pi)
        return (steps[0::2] + steps[1::2]) / (2 * np.pi)

    def total_mass(self) -> float:
        return float(self.cdf_mass(np.array([0.0, np.pi]))[0])


def fiber_angle_measure(q: QuadDifferential) -> FiberMeasure:
    return FiberMeasure(q)


def total_variation(m1, m2) -> float:
    return 0.5 * math.fsum(np.abs(np.asarray(m1) - np.asarray(m2)))
