"""Closed-form geometry of the once-punctured torus Teichmüller space.

A point of the space is a modulus ``tau = a + bi`` in the upper half-plane;
the marked torus is ``C / (Z + tau Z)``.  A measured lamination is a nonzero
real pair ``(p, q)`` (the weighted class ``p*[1] + q*[tau]``), taken modulo the
sign ``(p, q) ~ (-p, -q)``.  Everything here is a pure function of floats.

Conventions
-----------
* ``Ext_tau(p, q) = |p + q tau|^2 / Im(tau)``.
* The Teichmüller distance is half the curvature -1 hyperbolic distance of
  the upper half-plane, so a unit-speed ray shrinks the extremal length of
  its lamination by exactly ``exp(-2t)``.
* A projective lamination is the angle ``theta = atan2(q, p) mod pi`` in
  ``[0, pi)``; its ray lands on the real axis at the slope ``-cot(theta)``.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field
from typing import Callable, Protocol

import numpy as np
from scipy.special import expit

#: complexity 3g - 3 + m of the once-punctured torus
COMPLEXITY = 1


@dataclass(frozen=True)
class HalfPlanePoint:
    """A marked torus, given by its modulus ``a + bi`` with ``b > 0``."""

    a: float
    b: float

    def __post_init__(self):
        a, b = float(self.a), float(self.b)
        if not (math.isfinite(a) and math.isfinite(b)):
            raise ValueError(f"non-finite coordinates ({a!r}, {b!r})")
        if not b > 0.0:
            raise ValueError(f"imaginary part must be positive, got {b!r}")
        object.__setattr__(self, "a", a)
        object.__setattr__(self, "b", b)

    @classmethod
    def from_complex(cls, tau: complex) -> "HalfPlanePoint":
        tau = complex(tau)
        return cls(tau.real, tau.imag)

    @property
    def tau(self) -> complex:
        return complex(self.a, self.b)


@dataclass(frozen=True)
class Lamination:
    """Measured lamination ``(p, q)``; ``is_curve`` marks a weighted simple closed curve.

    Build curves with :meth:`curve` so that the rational (non uniquely ergodic)
    directions can be told apart from generic float pairs.
    """

    p: float
    q: float
    is_curve: bool = field(default=False, compare=False)

    def __post_init__(self):
        p, q = float(self.p), float(self.q)
        if not (math.isfinite(p) and math.isfinite(q)):
            raise ValueError(f"non-finite lamination ({p!r}, {q!r})")
        if p == 0.0 and q == 0.0:
            raise ValueError("the zero lamination is not allowed")
        object.__setattr__(self, "p", p)
        object.__setattr__(self, "q", q)

    @classmethod
    def curve(cls, p: int, q: int, weight: float = 1.0) -> "Lamination":
        if int(p) != p or int(q) != q:
            raise ValueError("a simple closed curve needs integer coordinates")
        if math.gcd(int(p), int(q)) != 1:
            raise ValueError(f"({p}, {q}) is not primitive")
        if not weight > 0:
            raise ValueError("weight must be positive")
        return cls(weight * p, weight * q, is_curve=True)

    @classmethod
    def from_angle(cls, theta: float, scale: float = 1.0) -> "Lamination":
        return cls(scale * math.cos(theta), scale * math.sin(theta))

    def scaled(self, t: float) -> "Lamination":
        if not t > 0:
            raise ValueError("scale factor must be positive")
        return Lamination(t * self.p, t * self.q, is_curve=self.is_curve)

    def canonical(self) -> "Lamination":
        """Sign representative whose angle lies in ``[0, pi)``."""
        if self.q < 0 or (self.q == 0 and self.p < 0):
            return Lamination(-self.p, -self.q, is_curve=self.is_curve)
        return self

    def direction(self) -> "ProjectiveLamination":
        return ProjectiveLamination(_angle_mod_pi(self.p, self.q), rational=self.is_curve)

    @property
    def mass(self) -> float:
        """Euclidean size of the pair; positive homogeneous of degree one."""
        return math.hypot(self.p, self.q)


@dataclass(frozen=True)
class ProjectiveLamination:
    """Projective class, stored as the angle ``theta`` in ``[0, pi)``."""

    theta: float
    rational: bool = False

    def __post_init__(self):
        theta = float(self.theta)
        if not math.isfinite(theta):
            raise ValueError("non-finite angle")
        theta = theta % math.pi
        if theta >= math.pi:  # x % pi can round up to pi for tiny negative x
            theta = 0.0
        object.__setattr__(self, "theta", theta)

    def representative(self) -> Lamination:
        return Lamination.from_angle(self.theta)

    @property
    def endpoint(self) -> float:
        return ray_endpoint(self.representative())


@dataclass(frozen=True)
class QuadDifferential:
    """Holomorphic quadratic differential ``w dz^2`` on the torus at ``base``."""

    base: HalfPlanePoint
    w: complex

    def __post_init__(self):
        w = complex(self.w)
        if w == 0 or not cmath.isfinite(w):
            raise ValueError("quadratic differential must be finite and nonzero")
        object.__setattr__(self, "w", w)

    @property
    def norm(self) -> float:
        # |w| times the flat area Im(tau)
        return abs(self.w) * self.base.b

    def rotated(self, theta: float) -> "QuadDifferential":
        """``exp(-i theta) q``."""
        return QuadDifferential(self.base, cmath.exp(-1j * theta) * self.w)

    def __neg__(self) -> "QuadDifferential":
        return QuadDifferential(self.base, -self.w)


@dataclass(frozen=True)
class GeodesicRay:
    """Unit-speed Teichmüller ray from ``origin`` along ``lamination``."""

    origin: HalfPlanePoint
    lamination: Lamination
    endpoint: float

    def tau(self, t):
        """Vectorized modulus of the ray at time(s) ``t >= 0``."""
        return ray_tau(self.origin, self.lamination.p, self.lamination.q, t)

    def evaluate(self, t: float) -> HalfPlanePoint:
        if t < 0:
            raise ValueError("rays are defined for t >= 0")
        return HalfPlanePoint.from_complex(complex(self.tau(t)))


class SurfaceModel(Protocol):
    """What the measure and potential layers need from a Teichmüller space.

    The torus functions of this module are the only implementation; higher
    complexity surfaces have no closed-form extremal length.
    """

    complexity: int

    def extremal_length(self, x, lam) -> float: ...

    def hm_differential(self, x, lam): ...

    def geodesic_ray(self, x, lam): ...


def _angle_mod_pi(p, q):
    theta = math.atan2(q, p) % math.pi
    return 0.0 if theta >= math.pi else theta


def intersection_number(l1: Lamination, l2: Lamination) -> float:
    """Geometric intersection number ``|p1 q2 - p2 q1|``."""
    return abs(l1.p * l2.q - l2.p * l1.q)


def extremal_length(x: HalfPlanePoint, lam: Lamination) -> float:
    return abs(lam.p + lam.q * x.tau) ** 2 / x.b


def ext_tau(tau, p, q):
    """Array version of :func:`extremal_length` over moduli and pairs."""
    tau = np.asarray(tau, dtype=complex)
    return np.abs(p + q * tau) ** 2 / tau.imag


def ext_direction(x: HalfPlanePoint, theta):
    """``Ext_x(cos theta, sin theta)`` for an array of angles."""
    theta = np.asarray(theta, dtype=float)
    return np.abs(np.cos(theta) + np.sin(theta) * x.tau) ** 2 / x.b


def hm_w(x: HalfPlanePoint, p, q):
    """Coefficient ``w`` of the Hubbard-Masur differential of ``(p, q)`` at ``x``.

    Matching ``|Re(sqrt(w) (p' + q' tau))|`` against ``|p q' - q p'|`` for all
    curves ``(p', q')`` forces ``sqrt(w) = -i (p + q conj(tau)) / b`` up to sign.
    """
    z = p + q * np.conj(x.tau)
    return -(z * z) / x.b ** 2


def hm_differential(x: HalfPlanePoint, lam: Lamination) -> QuadDifferential:
    return QuadDifferential(x, complex(hm_w(x, lam.p, lam.q)))


def vertical_lamination(qd: QuadDifferential) -> Lamination:
    """Vertical measured lamination of ``qd``, in canonical sign.

    Its intersection with a curve ``(p', q')`` is ``|Re(sqrt(w) (p' + q' tau))|``.
    """
    c = cmath.sqrt(qd.w)
    return Lamination((c * qd.base.tau).real, -c.real).canonical()


def horizontal_lamination(qd: QuadDifferential) -> Lamination:
    return vertical_lamination(-qd)


def teich_distance(x: HalfPlanePoint, y: HalfPlanePoint) -> float:
    # asinh form keeps full relative accuracy when one point is near the axis
    return math.asinh(abs(x.tau - y.tau) / (2.0 * math.sqrt(x.b * y.b)))


def teich_distance_tau(tau1, tau2):
    tau1 = np.asarray(tau1, dtype=complex)
    tau2 = np.asarray(tau2, dtype=complex)
    return np.arcsinh(np.abs(tau1 - tau2) / (2.0 * np.sqrt(tau1.imag * tau2.imag)))


def disk_distance(z1, z2):
    """Poincaré distance on the unit disk, scaled so that ``d(0, tanh t) = t``."""
    z1 = np.asarray(z1, dtype=complex)
    z2 = np.asarray(z2, dtype=complex)
    return np.arctanh(np.abs(z1 - z2) / np.abs(1 - np.conj(z1) * z2))


def ray_endpoint(lam: Lamination) -> float:
    if lam.q == 0:
        return math.inf
    return -lam.p / lam.q


def ray_tau(x: HalfPlanePoint, p, q, t):
    """Moduli along the Teichmüller ray of ``(p, q)`` from ``x``; broadcasts.

    The affine stretch with Beltrami coefficient ``tanh(t) conj(w)/|w|`` sends
    ``tau`` to ``(tau + k e^{i alpha} conj(tau)) / (1 + k e^{i alpha})``.  Written
    with ``1 - tanh(t)`` taken from ``expit`` the quotient stays accurate for
    large ``t``, where it approaches the endpoint ``-p/q``.
    """
    tau = x.tau
    t = np.asarray(t, dtype=float)
    p = np.asarray(p, dtype=float)
    q = np.asarray(q, dtype=float)
    eps = 2.0 * expit(-2.0 * t)  # 1 - tanh(t)
    z = p + q * tau
    num = 2.0 * p * x.b - 1j * eps * z * np.conj(tau)
    den = -2.0 * q * x.b - 1j * eps * z
    return num / den


def geodesic_ray(x: HalfPlanePoint, lam: Lamination) -> GeodesicRay:
    return GeodesicRay(x, lam, ray_endpoint(lam))


def disk_tau(qd: QuadDifferential, z):
    """Teichmüller disk of ``qd`` evaluated at points ``z`` of the unit disk."""
    z = np.asarray(z, dtype=complex)
    if np.any(np.abs(z) >= 1):
        raise ValueError("Teichmüller disk is defined on |z| < 1")
    tau = qd.base.tau
    zeta = z * np.conj(qd.w) / abs(qd.w)
    return (tau + zeta * np.conj(tau)) / (1 + zeta)


def teichmuller_disk(qd: QuadDifferential) -> Callable[[complex], HalfPlanePoint]:
    def phi(z: complex) -> HalfPlanePoint:
        return HalfPlanePoint.from_complex(complex(disk_tau(qd, z)))

    return phi


def lamination_of_angle(qd: QuadDifferential, theta: float) -> ProjectiveLamination:
    """Projective class of the vertical lamination of ``exp(-i theta) qd``."""
    return vertical_lamination(qd.rotated(theta)).direction()


def angle_directions(qd: QuadDifferential, theta):
    """Array form of :func:`lamination_of_angle`, returning angles in ``[0, pi)``."""
    theta = np.asarray(theta, dtype=float)
    c = np.exp(-0.5j * theta) * cmath.sqrt(qd.w)
    p = (c * qd.base.tau).real
    q = -c.real
    out = np.arctan2(q, p) % np.pi
    return np.where(out >= np.pi, 0.0, out)
