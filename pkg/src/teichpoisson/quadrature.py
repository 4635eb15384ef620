"""Deterministic adaptive quadrature and a reproducible Monte-Carlo engine.

The integrator is a Gauss-Kronrod (7, 15) pair.  The Kronrod value is kept
and ``|K - G|`` is the local error estimate.  A panel is accepted once its
estimate is below its share of the tolerance, proportional to its width;
otherwise it is bisected.  All panels of one generation are evaluated in a
single vectorized call, and the final reduction runs in left-to-right panel
order through :func:`math.fsum`, so results never depend on scheduling.
"""

from __future__ import annotations

import math
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

# Gauss-Kronrod 15-point nodes on [-1, 1] (non-negative half, descending) and weights.
_XGK = np.array([
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144845693013,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.000000000000000000000000000000000,
])
_WGK = np.array([
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714,
])
# 7-point Gauss weights sit on the odd-indexed Kronrod nodes.
_WG = np.array([
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327,
])

NODES = np.concatenate([-_XGK[:-1], _XGK[::-1]])
KRONROD_WEIGHTS = np.concatenate([_WGK[:-1], _WGK[::-1]])
GAUSS_WEIGHTS = np.zeros(15)
GAUSS_WEIGHTS[[1, 3, 5]] = _WG[:3]
GAUSS_WEIGHTS[[13, 11, 9]] = _WG[:3]
GAUSS_WEIGHTS[7] = _WG[3]

DEFAULT_MAX_PANELS = 20_000
_ROUNDOFF = 50 * np.finfo(float).eps

GENERATOR_ID = "PCG64"
# fixed multiplier of numpy's PCG64; the increment is derived from the seed
PCG64_MULTIPLIER = "0x2360ed051fc65da44385df649fccf645"
MC_CHUNK = 1 << 16
CDF_TABLE_CELLS = 1 << 14


class PanelLimitExceeded(RuntimeError):
    """Adaptive subdivision hit the panel cap; the integrand is likely not integrable."""


@dataclass(frozen=True)
class QuadResult:
    value: float
    error_estimate: float
    panels: int

    def __float__(self):
        return self.value


@dataclass(frozen=True)
class McConfig:
    """Monte-Carlo configuration. Identical configs give bit-identical streams."""

    seed: int
    samples: int
    generator_id: str = GENERATOR_ID

    def __post_init__(self):
        if not 0 <= int(self.seed) < 2 ** 64:
            raise ValueError("seed must be an unsigned 64-bit integer")
        if int(self.samples) < 1:
            raise ValueError("samples must be >= 1")
        if self.generator_id != GENERATOR_ID:
            raise ValueError(f"unsupported generator {self.generator_id!r}; only {GENERATOR_ID}")

    def metadata(self) -> dict:
        return {
            "seed": int(self.seed),
            "samples": int(self.samples),
            "generator_id": self.generator_id,
            "generator": "128-bit LCG, XSL-RR output",
            "lcg_multiplier": PCG64_MULTIPLIER,
            "chunk": MC_CHUNK,
            "seeding": "numpy SeedSequence(seed).spawn(n_chunks)",
        }


def _evaluate(f, x):
    try:
        y = np.asarray(f(x))
    except TypeError:
        y = None
    if y is None or y.shape != x.shape:
        # scalar-only integrand
        y = np.array([f(float(v)) for v in x.ravel()], dtype=float).reshape(x.shape)
    y = y.astype(float, copy=False)
    if not np.all(np.isfinite(y)):
        raise ValueError("integrand returned non-finite values")
    return y


def gk15_panels(f, lo, hi):
    """Kronrod value, error estimate and ``int |f|`` estimate on each panel ``[lo_i, hi_i]``."""
    lo = np.asarray(lo, dtype=float)
    hi = np.asarray(hi, dtype=float)
    center = 0.5 * (lo + hi)
    half = 0.5 * (hi - lo)
    x = center[:, None] + half[:, None] * NODES[None, :]
    y = _evaluate(f, x)
    kron = half * (y @ KRONROD_WEIGHTS)
    gauss = half * (y @ GAUSS_WEIGHTS)
    absval = half * (np.abs(y) @ KRONROD_WEIGHTS)
    return kron, np.abs(kron - gauss), absval


def integrate_interval(f, lo, hi, tol=1e-10, *, breakpoints=(), max_panels=DEFAULT_MAX_PANELS):
    """Adaptive integral of a vectorized ``f`` over ``[lo, hi]``.

    ``breakpoints`` inside the interval start as panel edges, which is how
    step functions are integrated without chasing their jumps.
    """
    lo, hi = float(lo), float(hi)
    if not lo < hi:
        raise ValueError(f"need lo < hi, got [{lo}, {hi}]")
    if not tol > 0:
        raise ValueError("tol must be positive")
    edges = sorted({lo, hi, *(float(b) for b in breakpoints if lo < b < hi)})
    pend_lo = np.array(edges[:-1])
    pend_hi = np.array(edges[1:])
    length = hi - lo
    done_lo, done_val, done_err = [], [], []
    while pend_lo.size:
        if len(done_lo) + pend_lo.size > max_panels:
            raise PanelLimitExceeded(
                f"more than {max_panels} panels on [{lo}, {hi}] at tol={tol:g}"
            )
        kron, err, absval = gk15_panels(f, pend_lo, pend_hi)
        width = pend_hi - pend_lo
        budget = np.maximum(tol * width / length, _ROUNDOFF * absval)
        ok = (err <= budget) | (width <= 4 * np.finfo(float).eps * np.maximum(1.0, np.abs(pend_lo)))
        done_lo.extend(pend_lo[ok].tolist())
        done_val.extend(kron[ok].tolist())
        done_err.extend(err[ok].tolist())
        mid = 0.5 * (pend_lo[~ok] + pend_hi[~ok])
        pend_lo, pend_hi = (
            np.concatenate([pend_lo[~ok], mid]),
            np.concatenate([mid, pend_hi[~ok]]),
        )
    order = np.argsort(done_lo, kind="stable")
    value = math.fsum(done_val[i] for i in order)
    error = math.fsum(done_err[i] for i in order)
    return QuadResult(value, error, len(done_lo))


def integrate_real_line(f, tol=1e-10, **kw):
    """``int_R f(s) ds`` through the substitution ``s = tan(psi)``."""

    def g(psi):
        c = np.cos(psi)
        return f(np.tan(psi)) / (c * c)

    return integrate_interval(g, -0.5 * math.pi, 0.5 * math.pi, tol, **kw)


def integrate_circle_pml(f, x, tol=1e-10, **kw):
    """``int_0^pi f(theta) dmu_x(theta)`` against the cone measure at ``x``."""
    from .measures import thurston_density

    measure = thurston_density(x)
    return integrate_interval(lambda th: f(th) * measure.density(th), 0.0, math.pi, tol, **kw)


def worker_count(default=None):
    """Worker cap from ``TEICH_THREADS``; defaults to 1."""
    env = os.environ.get("TEICH_THREADS")
    if env:
        return max(1, int(env))
    return default or 1


class InverseCdfSampler:
    """Samples the cone measure at ``x`` by inverting a tabulated CDF.

    Cell masses come from one GK15 panel per cell, so the table is accurate to
    roughly 1e-15; within a cell the CDF is linear.
    """

    def __init__(self, x, cells=CDF_TABLE_CELLS):
        from .measures import thurston_density

        self.measure = thurston_density(x)
        grid = np.linspace(0.0, math.pi, cells + 1)
        mass, _, _ = gk15_panels(self.measure.density, grid[:-1], grid[1:])
        cdf = np.concatenate([[0.0], np.cumsum(mass)])
        self.grid = grid
        self.cdf = cdf / cdf[-1]

    def transform(self, u):
        return np.interp(u, self.cdf, self.grid)


def _chunk_values(f, sampler, seq, n):
    rng = np.random.Generator(np.random.PCG64(seq))
    theta = sampler.transform(rng.random(n))
    return _evaluate(f, theta)


def mc_integrate(f, x, cfg: McConfig, workers=None):
    """Importance-sampled estimate of ``int f dmu_x`` and its standard error.

    Samples are drawn in fixed chunks of ``MC_CHUNK`` with one child seed per
    chunk, so the output bits do not depend on ``workers``.
    """
    n = int(cfg.samples)
    if n < 2:
        raise ValueError("need at least two samples for a standard error")
    sampler = InverseCdfSampler(x)
    n_chunks = -(-n // MC_CHUNK)
    seqs = np.random.SeedSequence(int(cfg.seed)).spawn(n_chunks)
    sizes = [min(MC_CHUNK, n - i * MC_CHUNK) for i in range(n_chunks)]
    workers = worker_count(workers)
    if workers > 1 and n_chunks > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            parts = list(pool.map(lambda a: _chunk_values(f, sampler, *a), zip(seqs, sizes)))
    else:
        parts = [_chunk_values(f, sampler, s, m) for s, m in zip(seqs, sizes)]
    values = np.concatenate(parts)
    mean = math.fsum(values) / n
    var = math.fsum((values - mean) ** 2) / (n - 1)
    return mean, math.sqrt(var / n)
