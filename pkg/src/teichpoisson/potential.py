"""Bounded pluriharmonic, holomorphic and psh test functions and the operators on them.

The test families are pulled back from the unit disk by the Cayley map
``C(tau) = (tau - i) / (tau + i)``:

    f(tau) = c0 + c1 * exp(i beta) * prod_j (C(tau) - a_j) / (1 - conj(a_j) C(tau))

Real and imaginary parts of ``f`` are bounded pluriharmonic (harmonic in one
complex variable), and ``|f|**alpha`` is plurisubharmonic with a
plurisubharmonic logarithm.  Every member extends continuously to the real
line and to infinity (``C(inf) = 1``), which gives the closed-form boundary
values used to cross-check the ray-following radial limit.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable, Sequence

import numpy as np
from scipy.special import expit

from .measures import pluriharmonic_kernel, sphere_measure, thurston_density
from .quadrature import integrate_interval
from .surface import (
    COMPLEXITY,
    HalfPlanePoint,
    Lamination,
    ext_direction,
    hm_w,
    ray_endpoint,
    ray_tau,
)

# radial limit evaluator
T_START = 0.5
T_GROWTH = 1.5
T_MAX = 20.0

SPOT_CHECK_DIRECTIONS = 2048
_GRID_RADII = np.concatenate([np.linspace(0.0, 0.99, 34), 1.0 - np.logspace(-2.5, -6, 8)])
_GRID_ANGLES = 256


class NoConvergence(RuntimeError):
    """Values along a ray did not settle before ``T_MAX``."""


class InvalidDecomposition(ValueError):
    """Arcs overlap, leave gaps of positive measure, or carry unusable bounds."""


class BoundViolated(ValueError):
    """A radial limit exceeds the bound its arc was certified with."""


def cayley(tau):
    tau = np.asarray(tau, dtype=complex)
    return (tau - 1j) / (tau + 1j)


def inverse_cayley(z):
    z = np.asarray(z, dtype=complex)
    return 1j * (1 + z) / (1 - z)


def boundary_cayley(s):
    """``C`` on the real line; ``s = +-inf`` maps to 1."""
    s = np.asarray(s, dtype=float)
    finite = np.isfinite(s)
    safe = np.where(finite, s, 0.0)
    return np.where(finite, (safe - 1j) / (safe + 1j), 1.0 + 0j)


@dataclass(frozen=True)
class TestFunction:
    """A member of the closed-form family described in the module docstring.

    ``kind`` is ``"holomorphic"`` (values ``f``), ``"pluriharmonic"`` (``Re f``
    or ``Im f`` by ``part``) or ``"psh"`` (``|f|**alpha``).
    """

    __test__ = False  # not a pytest class

    name: str
    kind: str
    c0: complex = 0j
    c1: complex = 1 + 0j
    zeros: tuple = (0j,)
    rotation: float = 0.0
    part: str = "re"
    alpha: float = 1.0
    bound: float = field(default=0.0)
    log_psh: bool = False

    def __post_init__(self):
        if self.kind not in ("holomorphic", "pluriharmonic", "psh"):
            raise ValueError(f"unknown kind {self.kind!r}")
        if any(abs(a) >= 1 for a in self.zeros):
            raise ValueError("Blaschke zeros must lie in the open disk")
        if self.kind == "pluriharmonic" and self.part not in ("re", "im"):
            raise ValueError("part must be 're' or 'im'")
        if self.kind == "psh" and not self.alpha > 0:
            raise ValueError("alpha must be positive")
        object.__setattr__(self, "zeros", tuple(complex(a) for a in self.zeros))
        object.__setattr__(self, "log_psh", self.kind == "psh")
        certified = abs(self.c0) + abs(self.c1)
        if self.kind == "psh":
            certified = certified ** self.alpha
        object.__setattr__(self, "bound", float(certified))
        z = _GRID_RADII[:, None] * np.exp(2j * np.pi * np.arange(_GRID_ANGLES) / _GRID_ANGLES)
        worst = float(np.max(np.abs(self.on_disk(z))))
        if worst > self.bound * (1 + 1e-12):
            raise ValueError(f"{self.name}: grid value {worst} exceeds bound {self.bound}")

    @property
    def params(self) -> dict:
        return {"c0": self.c0, "c1": self.c1, "zeros": self.zeros, "rotation": self.rotation,
                "part": self.part, "alpha": self.alpha}

    def _finish(self, f):
        if self.kind == "holomorphic":
            return f
        if self.kind == "pluriharmonic":
            return f.real if self.part == "re" else f.imag
        return np.abs(f) ** self.alpha

    def holomorphic_on_disk(self, z):
        z = np.asarray(z, dtype=complex)
        b = np.full(z.shape, np.exp(1j * self.rotation), dtype=complex)
        for a in self.zeros:
            b = b * (z - a) / (1 - np.conj(a) * z)
        return self.c0 + self.c1 * b

    def on_disk(self, z):
        """The function composed with the inverse Cayley map."""
        return self._finish(self.holomorphic_on_disk(z))

    def __call__(self, tau):
        return self.on_disk(cayley(tau))

    def at(self, x: HalfPlanePoint):
        return self(x.tau)[()]

    def boundary(self, s):
        """Continuous extension to the real line (``inf`` allowed)."""
        return self.on_disk(boundary_cayley(s))

    def boundary_of_angle(self, theta):
        """Extension evaluated at the endpoint ``-cot(theta)`` of direction ``theta``."""
        theta = np.asarray(theta, dtype=float)
        # C(-cot theta) = exp(2 i theta)
        return self.on_disk(np.exp(2j * theta))


def builtin_families() -> list[TestFunction]:
    b2 = (0.5 + 0j, -0.25 + 0.4j)
    mob = (0.3 + 0.2j,)
    return [
        TestFunction("cayley_re", "pluriharmonic", part="re"),
        TestFunction("cayley_im", "pluriharmonic", part="im"),
        TestFunction("half_shift_re", "pluriharmonic", c0=0.5, c1=0.5, part="re"),
        TestFunction("mobius_re", "pluriharmonic", zeros=mob, rotation=0.7, part="re"),
        TestFunction("blaschke2_re", "pluriharmonic", zeros=b2, rotation=-0.4, part="re"),
        TestFunction("blaschke2_im", "pluriharmonic", zeros=b2, rotation=-0.4, part="im"),
        TestFunction("mixed_im", "pluriharmonic", c0=0.2 - 0.1j, c1=0.6, zeros=b2 + mob, part="im"),
        TestFunction("constant", "pluriharmonic", c0=0.37, c1=0.0),
        TestFunction("cayley", "holomorphic"),
        TestFunction("half_shift", "holomorphic", c0=0.5, c1=0.5),
        TestFunction("blaschke2", "holomorphic", zeros=b2, rotation=-0.4),
        TestFunction("abs_half_shift", "psh", c0=0.5, c1=0.5),
        TestFunction("abs_cayley", "psh"),
        TestFunction("sqrt_abs_blaschke2", "psh", zeros=b2, rotation=-0.4, alpha=0.5),
        TestFunction("abs_affine_mobius", "psh", c0=0.6, c1=0.4, zeros=mob, rotation=0.7),
        TestFunction("sq_abs_affine", "psh", c0=0.3, c1=-0.7, zeros=b2, alpha=2.0),
    ]


def family(kind: str) -> list[TestFunction]:
    return [u for u in builtin_families() if u.kind == kind]


def get_function(name: str) -> TestFunction:
    for u in builtin_families():
        if u.name == name:
            return u
    raise KeyError(name)


def radial_limits(u, x: HalfPlanePoint, p, q, tol=1e-10, t_max=T_MAX):
    """Radial limits of ``u`` along the rays of the laminations ``(p, q)`` from ``x``.

    ``u`` is any vectorized function of complex moduli.  Values are taken at
    ``t_{n+1} = 1.5 t_n``.  The ray is a Möbius function of
    ``eps = 1 - tanh(t)``, so for the smooth families ``u`` is analytic in
    ``eps``; the last three values are extrapolated to ``eps = 0`` (Richardson,
    quadratic) and a ray is done when two extrapolations agree to ``tol``.
    """
    p = np.atleast_1d(np.asarray(p, dtype=float))
    q = np.atleast_1d(np.asarray(q, dtype=float))
    p, q = np.broadcast_arrays(p, q)
    out = np.full(p.shape, np.nan)
    live = np.ones(p.shape, dtype=bool)
    vals, eps = [], []
    acc_prev = None
    t = T_START
    while True:
        if t > t_max:
            raise NoConvergence(f"{int(live.sum())} ray(s) still moving at t={t_max}")
        vals.append(np.asarray(u(ray_tau(x, p, q, t)), dtype=float))
        eps.append(2.0 * float(expit(-2.0 * t)))
        if len(vals) >= 3:
            e0, e1, e2 = eps[-3:]
            # lagrange weights of the nodes e0, e1, e2 at 0
            w0 = e1 * e2 / ((e0 - e1) * (e0 - e2))
            w1 = e0 * e2 / ((e1 - e0) * (e1 - e2))
            w2 = e0 * e1 / ((e2 - e0) * (e2 - e1))
            acc = w0 * vals[-3] + w1 * vals[-2] + w2 * vals[-1]
            if acc_prev is not None:
                settled = live & (np.abs(acc - acc_prev) < tol)
                out[settled] = acc[settled]
                live &= ~settled
                if not live.any():
                    return out
            acc_prev = acc
        t *= T_GROWTH


def radial_limit(u, lam: Lamination, x: HalfPlanePoint, tol=1e-10) -> float:
    """Limit of ``u`` along the Teichmüller ray of ``lam`` from ``x``."""
    return float(radial_limits(u, x, lam.p, lam.q, tol)[0])


@dataclass(frozen=True)
class BoundaryFunction:
    """An a.e.-defined bounded function of the boundary angle ``theta``.

    ``breakpoints`` lists known jump locations so integrators can split there.
    """

    values: Callable
    label: str = ""
    breakpoints: tuple = ()
    sup: float | None = None

    def __call__(self, theta):
        return self.values(theta)

    @classmethod
    def radial_limit_of(cls, u, x: HalfPlanePoint | None = None, method="ray", tol=1e-11):
        """``u*`` as a function of the direction angle.

        ``method="ray"`` follows Teichmüller rays from ``x``; ``"closed"``
        evaluates the continuous extension at the ray endpoint.
        """
        if method == "closed":
            return cls(lambda th: u.boundary_of_angle(th), f"{getattr(u, 'name', 'u')}*:closed",
                       sup=getattr(u, "bound", None))
        if method != "ray":
            raise ValueError(f"unknown method {method!r}")
        x = x or HalfPlanePoint(0.0, 1.0)

        def values(th):
            th = np.asarray(th, dtype=float)
            flat = radial_limits(u, x, np.cos(th.ravel()), np.sin(th.ravel()), tol)
            return flat.reshape(th.shape)

        return cls(values, f"{getattr(u, 'name', 'u')}*:ray", sup=getattr(u, "bound", None))

    @classmethod
    def step(cls, cuts: Sequence[float], levels: Sequence[float], label="step"):
        """Piecewise constant: ``levels[k]`` on ``[cuts[k-1], cuts[k])`` with implicit 0 and pi ends."""
        cuts = np.asarray(sorted(cuts), dtype=float)
        levels = np.asarray(levels, dtype=float)
        if levels.size != cuts.size + 1:
            raise ValueError("need one more level than cuts")

        def values(th):
            return levels[np.searchsorted(cuts, np.asarray(th, dtype=float), side="right")]

        return cls(values, label, tuple(cuts.tolist()), float(np.max(np.abs(levels))))


def poisson_integral(g, x0: HalfPlanePoint, x: HalfPlanePoint, tol=1e-10, exponent=COMPLEXITY) -> float:
    """``int g(theta) P(x0, x, theta) d mu_x0(theta)``.

    With the true exponent this equals ``int g d mu_x``; ``exponent`` can be
    altered for negative controls.
    """
    m0 = thurston_density(x0)
    breaks = getattr(g, "breakpoints", ())

    def integrand(th):
        return g(th) * pluriharmonic_kernel(x0, x, th, exponent) * m0.density(th)

    return integrate_interval(integrand, 0.0, math.pi, tol, breakpoints=breaks).value


def poisson_gradient(g, x: HalfPlanePoint, x0: HalfPlanePoint | None = None, tol=1e-13):
    """``(d/dtau, d/dconj(tau))`` of the Poisson integral of ``g`` at ``x``.

    Integrates ``xi * kernel * q_lambda / Ext_x(lambda)`` against the cone
    measure at ``x0``.  A quadratic differential ``w dz^2`` at ``tau`` acts as
    the cotangent vector ``(i/2) w dtau``, so that ``dExt = -(i/2) w dtau``.
    """
    x0 = x0 or x
    m0 = thurston_density(x0)
    breaks = getattr(g, "breakpoints", ())

    def weight(th):
        w = hm_w(x, np.cos(th), np.sin(th))
        return (g(th) * COMPLEXITY * pluriharmonic_kernel(x0, x, th) * m0.density(th)
                / ext_direction(x, th)), w

    def re(th):
        c, w = weight(th)
        return c * w.real

    def im(th):
        c, w = weight(th)
        return c * w.imag

    integral = complex(integrate_interval(re, 0.0, math.pi, tol, breakpoints=breaks).value,
                       integrate_interval(im, 0.0, math.pi, tol, breakpoints=breaks).value)
    d10 = 0.5j * integral
    return d10, d10.conjugate()


def finite_difference_gradient(g, x: HalfPlanePoint, x0: HalfPlanePoint | None = None, h=1e-4, tol=1e-13):
    """Central differences of the Poisson integral, one Richardson step; returns ``d/dtau``."""
    x0 = x0 or x

    def central(step):
        da = (poisson_integral(g, x0, HalfPlanePoint(x.a + step, x.b), tol)
              - poisson_integral(g, x0, HalfPlanePoint(x.a - step, x.b), tol)) / (2 * step)
        db = (poisson_integral(g, x0, HalfPlanePoint(x.a, x.b + step), tol)
              - poisson_integral(g, x0, HalfPlanePoint(x.a, x.b - step), tol)) / (2 * step)
        return np.array([da, db])

    grad = (4 * central(h / 2) - central(h)) / 3
    return 0.5 * complex(grad[0], -grad[1])


def mean_value(u, x: HalfPlanePoint, r: float, tol=1e-12) -> float:
    """Average of ``u`` over the Teichmüller sphere ``S(x, r)`` with the ray-pushed cone measure."""
    return sphere_measure(x, r).integrate(u, tol).value


@dataclass(frozen=True)
class Decomposition:
    """Disjoint arcs ``[lo, hi]`` tiling ``[0, pi]`` with limsup bounds ``m_k > 0``.

    A region made of several arcs is listed once per arc with the same bound.
    """

    arcs: tuple
    bounds: tuple

    def __post_init__(self):
        arcs = tuple((float(lo), float(hi)) for lo, hi in self.arcs)
        bounds = tuple(float(m) for m in self.bounds)
        if len(arcs) != len(bounds) or not arcs:
            raise InvalidDecomposition("need one bound per arc")
        order = sorted(range(len(arcs)), key=lambda k: arcs[k])
        arcs = tuple(arcs[k] for k in order)
        bounds = tuple(bounds[k] for k in order)
        for lo, hi in arcs:
            if not (0.0 <= lo < hi <= math.pi + 1e-12):
                raise InvalidDecomposition(f"bad arc [{lo}, {hi}]")
        for (_, hi), (lo, _) in zip(arcs, arcs[1:]):
            if lo < hi - 1e-12:
                raise InvalidDecomposition("arcs overlap")
        covered = math.fsum(hi - lo for lo, hi in arcs)
        if abs(covered - math.pi) > 1e-9:
            raise InvalidDecomposition(f"arcs cover {covered}, not pi")
        if any(not m > 0 for m in bounds):
            raise InvalidDecomposition("bounds must be positive")
        object.__setattr__(self, "arcs", arcs)
        object.__setattr__(self, "bounds", bounds)

    def locate(self, theta):
        """Index of the arc containing each angle."""
        starts = np.array([lo for lo, _ in self.arcs])
        return np.clip(np.searchsorted(starts, np.asarray(theta), side="right") - 1, 0, len(starts) - 1)

    def masses(self, x: HalfPlanePoint):
        m = thurston_density(x)
        return [m.mass(lo, hi) for lo, hi in self.arcs]


def riesz_disk_bound(v, arcs, bounds, masses=None):
    """``(v(0), prod m_k ** Theta(E_k))`` for a subharmonic ``v`` on the unit disk.

    ``arcs`` are ``(lo, hi)`` angle intervals tiling ``[0, 2 pi]``; ``masses``
    defaults to their normalized lengths.
    """
    arcs = sorted((float(lo), float(hi)) for lo, hi in arcs)
    if len(arcs) != len(bounds):
        raise InvalidDecomposition("need one bound per arc")
    for lo, hi in arcs:
        if not (0.0 <= lo < hi <= 2 * math.pi + 1e-12):
            raise InvalidDecomposition(f"bad arc [{lo}, {hi}]")
    for (_, hi), (lo, _) in zip(arcs, arcs[1:]):
        if lo < hi - 1e-12:
            raise InvalidDecomposition("arcs overlap")
    if masses is None:
        masses = [(hi - lo) / (2 * math.pi) for lo, hi in arcs]
    if abs(math.fsum(masses) - 1.0) > 1e-9 or min(masses) < 0:
        raise InvalidDecomposition("masses must be non-negative and sum to 1")
    if any(not m > 0 for m in bounds):
        raise InvalidDecomposition("bounds must be positive")
    lhs = float(np.real(v(0j)))
    rhs = math.exp(math.fsum(t * math.log(m) for t, m in zip(masses, bounds)))
    return lhs, rhs


def spot_check_limits(v, x: HalfPlanePoint, directions=SPOT_CHECK_DIRECTIONS, tol=1e-9):
    theta = (np.arange(directions) + 0.5) * math.pi / directions
    return theta, radial_limits(v, x, np.cos(theta), np.sin(theta), tol)


def riesz_teich_bound(v: TestFunction, x: HalfPlanePoint, dec: Decomposition,
                      spot_check=True, slack=1e-6, limits=None):
    """``(v(x), prod m_k ** mu_x(E_k))`` for a log-psh ``v``.

    The caller certifies each ``m_k``; with ``spot_check`` the radial limits on
    a 2048-direction grid are compared against the bounds.  Precomputed
    ``(theta, limits)`` from :func:`spot_check_limits` may be passed in.
    """
    if getattr(v, "kind", "psh") != "psh" or not getattr(v, "log_psh", True):
        raise ValueError("needs a non-negative psh function with psh logarithm")
    if spot_check:
        theta, vals = limits if limits is not None else spot_check_limits(v, x)
        idx = dec.locate(theta)
        over = vals > np.asarray(dec.bounds)[idx] + slack
        if over.any():
            k = int(np.argmax(over))
            raise BoundViolated(
                f"radial limit {vals[k]:.6g} at theta={theta[k]:.6g} exceeds m={dec.bounds[idx[k]]:.6g}"
            )
    masses = dec.masses(x)
    lhs = float(v.at(x))
    rhs = math.exp(math.fsum(t * math.log(m) for t, m in zip(masses, dec.bounds)))
    return lhs, rhs


def _disk_grid_taus():
    rho = _GRID_RADII[1:]
    z = rho[:, None] * np.exp(2j * np.pi * (np.arange(4096) + 0.5) / 4096)
    return inverse_cayley(z)


def radial_limit_isometry_check(fam, x0: HalfPlanePoint, directions=2048, samples=None, tol=1e-7):
    """Compare interior and boundary sup-norms and the Poisson left inverse.

    Returns one record per function: interior grid sup of ``|u|``, sup of
    ``|u*|`` over the direction grid (ray-following limits from ``x0``), their
    difference, and the worst ``|P(u*)(y) - u(y)|`` over the sample points.
    """
    taus = _disk_grid_taus()
    theta = (np.arange(directions) + 0.5) * math.pi / directions
    samples = samples or [HalfPlanePoint(0.0, 1.0), HalfPlanePoint(-1.0, 0.5), HalfPlanePoint(2.0, 3.0)]
    records = []
    for u in fam:
        sup_in = float(np.max(np.abs(u(taus))))
        star = radial_limits(u, x0, np.cos(theta), np.sin(theta), 1e-10)
        sup_out = float(np.max(np.abs(star)))
        g = BoundaryFunction(lambda th, u=u: u.boundary_of_angle(th), u.name)
        err = max(abs(poisson_integral(g, x0, y, tol) - float(u.at(y))) for y in samples)
        records.append({"name": u.name, "sup_interior": sup_in, "sup_boundary": sup_out,
                        "difference": abs(sup_in - sup_out), "left_inverse_error": err})
    return records


__all__ = [
    "BoundViolated", "BoundaryFunction", "Decomposition", "InvalidDecomposition",
    "NoConvergence", "TestFunction", "builtin_families", "family", "finite_difference_gradient",
    "get_function", "mean_value", "poisson_gradient", "poisson_integral", "radial_limit",
    "radial_limit_isometry_check", "radial_limits", "riesz_disk_bound", "riesz_teich_bound",
    "spot_check_limits", "cayley", "inverse_cayley", "ray_endpoint",
]
