"""Theorem-level checks, each producing a :class:`VerificationReport`.

Every check compares the library against something computed another way:
the classical half-plane Poisson kernel, direct quadrature at a second
basepoint, finite differences, closed-form boundary values.  Negative
controls (a wrong kernel exponent, a wrong endpoint map) are exposed as
parameters so tests can confirm the checks are able to fail.
"""

from __future__ import annotations

import hashlib
import json
import math
import time
from dataclasses import asdict, dataclass, field

import numpy as np
from scipy.optimize import minimize_scalar

from . import measures, potential
from .measures import (
    boundary_line_density,
    change_of_basepoint_density,
    fiber_angle_measure,
    thurston_density,
    total_variation,
)
from .potential import (
    BoundaryFunction,
    Decomposition,
    finite_difference_gradient,
    mean_value,
    poisson_gradient,
    poisson_integral,
    radial_limit_isometry_check,
    radial_limits,
    riesz_disk_bound,
    riesz_teich_bound,
    spot_check_limits,
)
from .quadrature import McConfig, integrate_interval, mc_integrate
from .surface import (
    HalfPlanePoint,
    Lamination,
    disk_distance,
    disk_tau,
    ext_tau,
    extremal_length,
    geodesic_ray,
    hm_differential,
    lamination_of_angle,
    teich_distance_tau,
)

TOLERANCES = {
    "harmonic-measure": 1e-8,
    "poisson": 1e-6,
    "poisson-negative-gap": 1e-3,
    "basepoint": 1e-8,
    "disintegration": 1e-6,
    "rays": 1e-9,
    "mvt": 1e-6,
    "jensen": 1e-9,
    "riesz": 1e-9,
    "gradient": 1e-5,
    "isometry": 1e-3,
    "radial-limit": 1e-10,
    "mc": 0.05,
}

DEFAULT_SEED = 20251016
THETA_GRID = 2048
S_GRID = 512


@dataclass
class VerificationReport:
    check_id: str
    inputs_digest: str
    computed: list
    tolerance: float
    passed: bool
    runtime_ms: int
    metadata: dict = field(default_factory=dict)
    table: list = field(default_factory=list, repr=False)

    def worst(self) -> float:
        """Largest discrepancy among entries held to the report-level tolerance."""
        tols = self.metadata.get("entry_tolerances", {})
        vals = [v for label, v in self.computed
                if isinstance(v, (int, float)) and tols.get(label, self.tolerance) == self.tolerance]
        return max(vals, default=0.0)

    def worst_ratio(self) -> float:
        """Largest discrepancy / tolerance over all entries (passed iff <= 1)."""
        tols = self.metadata.get("entry_tolerances", {})
        ratios = []
        for label, v in self.computed:
            t = tols.get(label, self.tolerance)
            ratios.append(v / t if t > 0 else (math.inf if v > 0 else 0.0))
        return max(ratios, default=0.0)

    def to_dict(self, timing=True) -> dict:
        d = asdict(self)
        d.pop("table")
        d["computed"] = [[label, value] for label, value in self.computed]
        if not timing:
            d["runtime_ms"] = 0
        return d

    def to_json(self, timing=True) -> str:
        return json.dumps(self.to_dict(timing), sort_keys=True)

    def summary(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        return (f"{status} {self.check_id}: worst={self.worst():.3e} tol={self.tolerance:.1e} "
                f"worst/tol={self.worst_ratio():.2e}")


def digest(inputs) -> str:
    blob = json.dumps(inputs, sort_keys=True, default=repr).encode()
    return hashlib.sha256(blob).hexdigest()[:16]


class _Builder:
    """Collects (label, discrepancy, tolerance) entries and times the check."""

    def __init__(self, check_id, tolerance, inputs, metadata=None):
        self.check_id = check_id
        self.tolerance = tolerance
        self.inputs = inputs
        self.metadata = dict(metadata or {})
        self.entries = []
        self.table = []
        self.start = time.perf_counter()

    def add(self, label, discrepancy, tol=None, *, input=None, computed=None, expected=None):
        self.entries.append((label, float(discrepancy), self.tolerance if tol is None else tol))
        if input is not None:
            self.table.append({"input": input, "computed": computed, "expected": expected})

    def build(self, passed=None) -> VerificationReport:
        ok = all(d <= t for _, d, t in self.entries) if passed is None else passed
        extra = {label: t for label, _, t in self.entries if t != self.tolerance}
        if extra:
            self.metadata["entry_tolerances"] = extra
        return VerificationReport(
            check_id=self.check_id,
            inputs_digest=digest(self.inputs),
            computed=[(label, d) for label, d, _ in self.entries],
            tolerance=self.tolerance,
            passed=bool(ok and self.entries),
            runtime_ms=int(round(1000 * (time.perf_counter() - self.start))),
            metadata=self.metadata,
            table=self.table,
        )


def _pt(x: HalfPlanePoint):
    return [x.a, x.b]


def default_points():
    return [HalfPlanePoint(a, b) for a in (-1.0, 0.0, 1.0) for b in (0.5, 1.0, 2.0, 4.0)]


def poisson_grid():
    return [HalfPlanePoint(a, b) for a in (-2.0, -1.0, 0.0, 1.0, 2.0) for b in (0.25, 0.5, 1.0, 2.0, 4.0)]


def random_points(rng, n, a_range=3.0, log_b=math.log(8.0)):
    a = rng.uniform(-a_range, a_range, n)
    b = np.exp(rng.uniform(-log_b, log_b, n))
    return [HalfPlanePoint(float(x), float(y)) for x, y in zip(a, b)]


def chebyshev_slopes(n=S_GRID):
    """Chebyshev-spaced angles in ``(-pi/2, pi/2)`` mapped to slopes by ``tan``."""
    k = np.arange(n)
    psi = 0.5 * np.pi * np.cos((2 * k + 1) * np.pi / (2 * n))
    return np.tan(psi)


def classical_poisson_density(x: HalfPlanePoint, s):
    s = np.asarray(s, dtype=float)
    return x.b / (np.pi * ((s - x.a) ** 2 + x.b ** 2))


def classical_interval_mass(x: HalfPlanePoint, s0, s1):
    return (math.atan((s1 - x.a) / x.b) - math.atan((s0 - x.a) / x.b)) / math.pi


def check_harmonic_measure_identity(points, s_grid=None, tol=TOLERANCES["harmonic-measure"],
                                    endpoint_sign=-1):
    """Push-forward of the cone measure to the real line against ``b / (pi |s - tau|^2)``.

    Besides the densities, the cone-measure mass of the arc over each slope
    interval (adaptive quadrature in ``theta``) is compared with the classical
    arctangent formula.
    """
    s_grid = chebyshev_slopes() if s_grid is None else np.asarray(s_grid, dtype=float)
    rep = _Builder("harmonic-measure", tol,
                   {"points": [_pt(x) for x in points], "s": s_grid.tolist(), "sign": endpoint_sign},
                   {"s_grid": int(s_grid.size), "endpoint_sign": endpoint_sign})
    cuts = np.sort(s_grid)[:: max(1, s_grid.size // 16)]
    for x in points:
        got = boundary_line_density(x, s_grid, endpoint_sign)
        want = classical_poisson_density(x, s_grid)
        rep.add(f"density@({x.a:g},{x.b:g})", np.max(np.abs(got - want)))
        m = thurston_density(x)
        worst = 0.0
        for s0, s1 in zip(cuts[:-1], cuts[1:]):
            th = measures.angle_of_slope(np.array([s0, s1]), endpoint_sign)
            lo, hi = sorted(th.tolist())
            worst = max(worst, abs(m.mass(lo, hi) - classical_interval_mass(x, s0, s1)))
        rep.add(f"arc-mass@({x.a:g},{x.b:g})", worst)
    return rep.build()


def _limits_function(u, x0, method):
    return BoundaryFunction.radial_limit_of(u, x0, method=method)


def check_poisson_formula(grid, family, tol=TOLERANCES["poisson"], x0=None, exponent=1,
                          method="ray", quad_tol=1e-10):
    """``max |u(x) - P(u*)(x)|`` over ``grid`` x ``family``.

    ``u*`` is found by following rays from ``x0`` (``method="ray"``) or from
    the closed-form boundary extension.  ``exponent != 1`` is a negative control.
    """
    x0 = x0 or HalfPlanePoint(0.0, 1.0)
    rep = _Builder("poisson", tol,
                   {"grid": [_pt(x) for x in grid], "family": [u.name for u in family],
                    "x0": _pt(x0), "exponent": exponent, "method": method},
                   {"grid_points": len(grid), "functions": len(family), "kernel_exponent": exponent,
                    "radial_limit": method})
    for u in family:
        g = _limits_function(u, x0, method)
        worst = 0.0
        for x in grid:
            val = poisson_integral(g, x0, x, quad_tol, exponent)
            want = float(u.at(x))
            worst = max(worst, abs(val - want))
            rep.table.append({"input": f"{u.name}@({x.a:g},{x.b:g})", "computed": val, "expected": want})
        rep.add(u.name, worst)
    return rep.build()


def random_arcs(rng, n):
    ends = np.sort(rng.uniform(0.0, math.pi, (n, 2)), axis=1)
    return [(float(lo), float(hi)) for lo, hi in ends]


def check_basepoint_change(pairs, arcs, tol=TOLERANCES["basepoint"]):
    """``mu_x(E)`` directly against ``int_E (Ext_y / Ext_x) d mu_y``, both by quadrature."""
    rep = _Builder("basepoint", tol,
                   {"pairs": [[_pt(x), _pt(y)] for x, y in pairs], "arcs": arcs},
                   {"arcs": len(arcs)})
    worst = 0.0
    for (x, y), (lo, hi) in zip(pairs, arcs):
        direct = thurston_density(x).mass(lo, hi)
        my = thurston_density(y)
        weighted = integrate_interval(lambda th: change_of_basepoint_density(x, y, th) * my.density(th),
                                      lo, hi, 1e-13).value
        worst = max(worst, abs(direct - weighted))
        rep.table.append({"input": f"({x.a:g},{x.b:g})<-({y.a:g},{y.b:g}) [{lo:.6f},{hi:.6f}]",
                          "computed": weighted, "expected": direct})
    rep.add("max_arc_discrepancy", worst)
    return rep.build()


def check_disintegration(points, tol=TOLERANCES["disintegration"], bins=256, reference=(1.0, 0.0)):
    """Binned TV distance between the rotation angle measure and the cone measure."""
    lam = Lamination(*reference)
    edges = np.linspace(0.0, math.pi, bins + 1)
    rep = _Builder("disintegration", tol,
                   {"points": [_pt(x) for x in points], "bins": bins, "reference": list(reference)},
                   {"bins": bins})
    for x in points:
        fiber = fiber_angle_measure(hm_differential(x, lam))
        tv = total_variation(fiber.cdf_mass(edges), thurston_density(x).bin_masses(edges))
        rep.add(f"tv@({x.a:g},{x.b:g})", tv)
        rep.add(f"mass@({x.a:g},{x.b:g})", abs(fiber.total_mass() - 1.0))
    return rep.build()


def check_rays(points, laminations, tol=TOLERANCES["rays"], times=None, thetas=None, disk_times=None):
    """Extremal-length decay, unit speed, and the disk/ray identity."""
    times = np.linspace(0.0, 10.0, 41) if times is None else np.asarray(times)
    thetas = np.arange(32) * math.pi / 16 if thetas is None else np.asarray(thetas)
    disk_times = np.linspace(0.1, 3.0, 30) if disk_times is None else np.asarray(disk_times)
    rep = _Builder("rays", tol,
                   {"points": [_pt(x) for x in points],
                    "laminations": [[l.p, l.q] for l in laminations],
                    "times": times.tolist(), "thetas": thetas.tolist()},
                   {"times": int(times.size), "thetas": int(thetas.size), "disk_times": int(disk_times.size)})
    decay = speed = disk = iso = 0.0
    for x in points:
        for lam in laminations:
            taus = geodesic_ray(x, lam).tau(times)
            e0 = extremal_length(x, lam)
            decay = max(decay, float(np.max(np.abs(ext_tau(taus, lam.p, lam.q) * np.exp(2 * times) / e0 - 1))))
            speed = max(speed, float(np.max(np.abs(teich_distance_tau(x.tau, taus) - times))))
        qd = hm_differential(x, laminations[0])
        for th in thetas:
            lam = lamination_of_angle(qd, th).representative()
            via_disk = disk_tau(qd, np.tanh(disk_times) * np.exp(1j * th))
            via_ray = geodesic_ray(x, lam).tau(disk_times)
            disk = max(disk, float(np.max(np.abs(via_disk - via_ray))))
        z = np.tanh(disk_times[::3]) * np.exp(1j * thetas[: disk_times[::3].size])
        zz = np.roll(z, 1)
        iso = max(iso, float(np.max(np.abs(disk_distance(z, zz)
                                           - teich_distance_tau(disk_tau(qd, z), disk_tau(qd, zz))))))
    rep.add("ext_decay_relative", decay)
    rep.add("unit_speed_absolute", speed)
    rep.add("disk_ray_identity", disk)
    rep.add("disk_isometry", iso)
    return rep.build()


def check_mvt(points, radii, family, tol=TOLERANCES["mvt"], jensen_tol=TOLERANCES["jensen"], paired=False):
    """Mean value equality for pluriharmonic members, Jensen inequality for psh ones.

    Cases are ``points x radii``, or ``zip(points, radii)`` when ``paired``.
    """
    radii = [float(r) for r in radii]
    cases = list(zip(points, radii)) if paired else [(x, r) for x in points for r in radii]
    rep = _Builder("mvt", tol,
                   {"points": [_pt(x) for x in points], "radii": radii, "paired": paired,
                    "family": [u.name for u in family]},
                   {"cases": len(cases), "jensen_tolerance": jensen_tol})
    for u in family:
        worst = 0.0
        for x, r in cases:
            avg = mean_value(u, x, r)
            here = float(u.at(x))
            worst = max(worst, here - avg) if u.kind == "psh" else max(worst, abs(avg - here))
        if u.kind == "psh":
            rep.add(f"jensen_deficit:{u.name}", max(worst, 0.0), jensen_tol)
        else:
            rep.add(f"mean_value:{u.name}", worst)
    return rep.build()


def arc_sup(fn, lo, hi, samples=256):
    """Max of a smooth ``fn`` on ``[lo, hi]``: dense sampling, then a bounded 1-D refinement."""
    th = np.linspace(lo, hi, samples)
    vals = fn(th)
    k = int(np.argmax(vals))
    a, b = th[max(k - 1, 0)], th[min(k + 1, samples - 1)]
    res = minimize_scalar(lambda t: -float(fn(t)), bounds=(a, b), method="bounded",
                          options={"xatol": 1e-13})
    return max(float(vals[k]), -float(res.fun))


def certified_decomposition(v, cuts, samples=256):
    """Arcs between ``cuts`` with bounds from the sup of the boundary values on each arc."""
    edges = [0.0, *sorted(float(c) for c in cuts), math.pi]
    arcs, bounds = [], []
    for lo, hi in zip(edges[:-1], edges[1:]):
        arcs.append((lo, hi))
        bounds.append(arc_sup(v.boundary_of_angle, lo, hi, samples) * (1 + 1e-9) + 1e-15)
    return Decomposition(tuple(arcs), tuple(bounds))


def riesz_documented_example():
    """``|tau/(tau+i)|`` at ``i`` with the endpoints in ``[-1, 1]`` versus the rest."""
    v = potential.get_function("abs_half_shift")
    m1 = 1 / math.sqrt(2)
    q = math.pi / 4
    dec = Decomposition(((0.0, q), (q, 3 * q), (3 * q, math.pi)), (1.0, m1, 1.0))
    return v, HalfPlanePoint(0.0, 1.0), dec


def check_riesz(rng, n_random=50, tol=TOLERANCES["riesz"]):
    """Documented example, random certified decompositions, and the disk lemma."""
    rep = _Builder("riesz", tol, {"n_random": n_random}, {"random_decompositions": n_random,
                                                           "spot_check_directions": potential.SPOT_CHECK_DIRECTIONS})
    v, x, dec = riesz_documented_example()
    lhs, rhs = riesz_teich_bound(v, x, dec)
    rep.add("documented_example", max(lhs - rhs, 0.0), input="abs_half_shift@(0,1)",
            computed=lhs, expected=rhs)
    rep.metadata["documented_lhs"] = lhs
    rep.metadata["documented_rhs"] = rhs
    psh = potential.family("psh")
    cache = {}
    worst = 0.0
    for i in range(n_random):
        v = psh[i % len(psh)]
        x = random_points(rng, 1)[0] if i >= len(psh) else HalfPlanePoint(0.0, 1.0)
        key = (v.name, x)
        if key not in cache:
            cache[key] = spot_check_limits(v, x)
        cuts = rng.uniform(0.0, math.pi, int(rng.integers(1, 7)))
        d = certified_decomposition(v, cuts)
        lhs, rhs = riesz_teich_bound(v, x, d, limits=cache[key])
        worst = max(worst, lhs - rhs)
        rep.table.append({"input": f"{v.name}@({x.a:g},{x.b:g}) cuts={len(cuts)}",
                          "computed": lhs, "expected": rhs})
    rep.add("random_decompositions", max(worst, 0.0))
    # unit disk lemma on Blaschke products with quarter-circle arcs
    disk_worst = 0.0
    for zeros in [(0.5, -0.3j), (0.2 + 0.6j, -0.4 - 0.1j)]:
        for c0, c1 in [(0.0, 1.0), (0.5, 0.5)]:
            def fv(z, zeros=zeros, c0=c0, c1=c1):
                z = np.asarray(z, dtype=complex)
                b = np.ones_like(z)
                for a in zeros:
                    b = b * (z - a) / (1 - np.conj(a) * z)
                return np.abs(c0 + c1 * b)
            arcs = [(k * math.pi / 2, (k + 1) * math.pi / 2) for k in range(4)]
            bounds = [float(np.max(fv(np.exp(1j * np.linspace(lo, hi, 4096))))) * (1 + 1e-9)
                      for lo, hi in arcs]
            lhs, rhs = riesz_disk_bound(fv, arcs, bounds)
            disk_worst = max(disk_worst, lhs - rhs)
    rep.add("disk_lemma", max(disk_worst, 0.0))
    return rep.build()


def random_step_function(rng):
    cuts = np.sort(rng.uniform(0.0, math.pi, int(rng.integers(2, 6))))
    levels = rng.uniform(-1.0, 1.0, cuts.size + 1)
    return BoundaryFunction.step(cuts.tolist(), levels.tolist())


def check_gradient(rng, n=20, tol=TOLERANCES["gradient"]):
    """Gardiner-formula gradient of ``P(g)`` against Richardson central differences."""
    rep = _Builder("gradient", tol, {"n": n}, {"fd_step": 1e-4, "richardson": 1})
    worst = 0.0
    x0 = HalfPlanePoint(0.0, 1.0)
    for _ in range(n):
        g = random_step_function(rng)
        x = random_points(rng, 1, a_range=2.0, log_b=math.log(4.0))[0]
        d10, d01 = poisson_gradient(g, x, x0)
        fd = finite_difference_gradient(g, x, x0)
        err = abs(d10 - fd) / abs(fd)
        err = max(err, abs(d01 - fd.conjugate()) / abs(fd))
        worst = max(worst, err)
        rep.table.append({"input": f"{g.label}@({x.a:.6g},{x.b:.6g})", "computed": repr(d10),
                          "expected": repr(fd)})
    rep.add("max_relative_error", worst)
    return rep.build()


def check_radial_isometry(fam, x0=None, tol=TOLERANCES["isometry"], limit_tol=TOLERANCES["radial-limit"],
                          rng=None, n_independence=20):
    """Interior versus boundary sup-norms, and basepoint independence of limits."""
    x0 = x0 or HalfPlanePoint(0.0, 1.0)
    rng = rng or np.random.default_rng(DEFAULT_SEED)
    rep = _Builder("isometry", tol, {"family": [u.name for u in fam], "x0": _pt(x0)},
                   {"limit_tolerance": limit_tol})
    for rec in radial_limit_isometry_check(fam, x0):
        rep.add(f"sup_gap:{rec['name']}", rec["difference"])
        rep.add(f"left_inverse:{rec['name']}", rec["left_inverse_error"], 1e-6)
    worst = 0.0
    for u in fam:
        theta = rng.uniform(0, math.pi, n_independence)
        x1, x2 = random_points(rng, 2)
        l1 = radial_limits(u, x1, np.cos(theta), np.sin(theta), limit_tol)
        l2 = radial_limits(u, x2, np.cos(theta), np.sin(theta), limit_tol)
        worst = max(worst, float(np.max(np.abs(l1 - l2))))
    rep.add("basepoint_independence", worst, 2 * limit_tol)
    return rep.build()


def check_monte_carlo(seed=DEFAULT_SEED, sizes=(1_000, 10_000, 100_000, 1_000_000), tol=TOLERANCES["mc"]):
    """Fitted log-log slope of the standard error and bit reproducibility across workers."""
    x = HalfPlanePoint(0.0, 1.0)

    def f(th):
        return np.cos(2 * th) ** 2

    rep = _Builder("mc", tol, {"seed": seed, "sizes": list(sizes)},
                   {**McConfig(seed, sizes[0]).metadata(), "sizes": list(sizes)})
    errs = []
    for n in sizes:
        est, se = mc_integrate(f, x, McConfig(seed, n), workers=1)
        errs.append(se)
        rep.add(f"bias_in_stderr_units:n={n}", abs(est - 0.5) / se, 4.0)
    slope = float(np.polyfit(np.log(sizes), np.log(errs), 1)[0])
    rep.metadata["slope"] = slope
    rep.add("slope_deviation", abs(slope + 0.5))
    cfg = McConfig(seed, 300_000)
    one = mc_integrate(f, x, cfg, workers=1)
    four = mc_integrate(f, x, cfg, workers=4)
    again = mc_integrate(f, x, cfg, workers=1)
    rep.add("worker_bit_mismatch", float(one != four or one != again), 0.0)
    return rep.build()


CHECKS = ("poisson", "harmonic-measure", "basepoint", "disintegration", "mvt", "riesz", "gradient",
          "rays", "isometry", "mc")


def run_check(name, seed=DEFAULT_SEED, tol=None):
    """Run one named check with inputs drawn from ``seed``."""
    rng = np.random.default_rng(seed)
    tol = TOLERANCES[name] if tol is None else tol
    if name == "poisson":
        report = check_poisson_formula(poisson_grid(), potential.family("pluriharmonic"), tol)
    elif name == "harmonic-measure":
        report = check_harmonic_measure_identity(random_points(rng, 20), tol=tol)
    elif name == "basepoint":
        pts = random_points(rng, 200)
        report = check_basepoint_change(list(zip(pts[:100], pts[100:])), random_arcs(rng, 100), tol)
    elif name == "disintegration":
        report = check_disintegration(random_points(rng, 10), tol)
    elif name == "mvt":
        fam = potential.family("pluriharmonic") + potential.family("psh")
        pts = random_points(rng, 50)
        radii = list(np.exp(rng.uniform(math.log(0.1), math.log(3.0), 50)))
        # plus the default grid at three fixed radii
        for r in (0.25, 1.0, 2.0):
            pts += default_points()
            radii += [r] * len(default_points())
        report = check_mvt(pts, radii, fam, tol, paired=True)
        report.metadata["random_cases"] = 50
        report.metadata["grid_cases"] = 3 * len(default_points())
    elif name == "riesz":
        report = check_riesz(rng, tol=tol)
    elif name == "gradient":
        report = check_gradient(rng, tol=tol)
    elif name == "rays":
        lams = [Lamination(*rng.normal(size=2)) for _ in range(5)] + [Lamination(1, 0), Lamination(0, 1)]
        report = check_rays(random_points(rng, 5) + [HalfPlanePoint(0, 1)], lams, tol)
    elif name == "isometry":
        report = check_radial_isometry(potential.family("pluriharmonic"), tol=tol, rng=rng)
    elif name == "mc":
        report = check_monte_carlo(seed, tol=tol)
    else:
        raise KeyError(name)
    report.metadata.setdefault("seed", seed)
    return report


def run_all(seed=DEFAULT_SEED, names=CHECKS, tolerances=None):
    tolerances = tolerances or {}
    return [run_check(n, seed, tolerances.get(n)) for n in names]
