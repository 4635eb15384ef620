"""Command-line front end.

    teichpoisson verify {poisson|harmonic-measure|basepoint|disintegration|mvt|riesz|gradient|rays|isometry|mc|all}
    teichpoisson kernel-table --x0 0,1 --x 0,2 --grid 16
    teichpoisson measure-table --x 1,2 --grid 32
    teichpoisson ray-trace --x 0,1 --lamination 1,1 --t-max 5 --steps 11
    teichpoisson limit-trace --function cayley_re --x 0,1 --lamination 1,1

Exit status: 0 when every requested check passes, 1 when one fails, 2 on
usage errors.  Floats are written in shortest round-trip form.  A JSON
config file (``--config``) may supply any option; command-line flags win.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import sys

import numpy as np

from . import potential, verify
from .measures import boundary_line_density, pluriharmonic_kernel, thurston_density
from .surface import HalfPlanePoint, Lamination, extremal_length, geodesic_ray, ray_endpoint, teich_distance

BUILTIN_DEFAULTS = {
    "seed": verify.DEFAULT_SEED,
    "format": None,
    "output": None,
    "tol": None,
    "tolerances": None,
    "timing": False,
    "table": None,
    "x0": "0,1",
    "x": "0,1",
    "grid": 16,
    "lamination": "1,0",
    "t_max": 10.0,
    "steps": 11,
    "function": "cayley_re",
}

CONFIG_KEYS = {
    "verify": {"check", "seed", "format", "output", "tol", "tolerances", "timing", "table"},
    "kernel-table": {"x0", "x", "grid", "format", "output"},
    "measure-table": {"x", "grid", "format", "output"},
    "ray-trace": {"x", "lamination", "t_max", "steps", "format", "output"},
    "limit-trace": {"function", "x", "lamination", "format", "output"},
}


class UsageError(Exception):
    pass


def fmt(value):
    if isinstance(value, (float, np.floating)):
        return repr(float(value))
    return value


def parse_point(text) -> HalfPlanePoint:
    try:
        a, b = (float(v) for v in str(text).split(","))
        return HalfPlanePoint(a, b)
    except ValueError as exc:
        raise UsageError(f"bad point {text!r}: expected 'a,b' with b > 0 ({exc})") from None


def parse_lamination(text) -> Lamination:
    try:
        p, q = (float(v) for v in str(text).split(","))
        return Lamination(p, q)
    except ValueError as exc:
        raise UsageError(f"bad lamination {text!r}: expected nonzero 'p,q' ({exc})") from None


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="teichpoisson",
        description="Poisson integral formula and pluriharmonic measure on the punctured-torus "
                    "Teichmüller space: verification suites and data tables.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, default_format):
        p.add_argument("--config", help="JSON file with option values (flags override it)")
        p.add_argument("--output", "-o", help="write to this path instead of stdout")
        p.add_argument("--format", choices=("json", "csv"), help=f"output format (default {default_format})")

    v = sub.add_parser("verify", help="run theorem checks and emit VerificationReport records")
    v.add_argument("check", choices=(*verify.CHECKS, "all"), help="which check to run")
    v.add_argument("--seed", type=int, help=f"seed for random inputs (default {verify.DEFAULT_SEED})")
    v.add_argument("--tol", type=float, help="tolerance override for a single named check")
    v.add_argument("--table", help="also write CSV rows of (check_id, input, computed, expected) here")
    v.add_argument("--timing", action="store_true", default=None,
                   help="record wall-clock runtime_ms (otherwise 0, keeping output reproducible)")
    common(v, "json")

    k = sub.add_parser("kernel-table", help="tabulate P(x0, x, theta_k) on theta_k = k pi / grid")
    k.add_argument("--x0", help="basepoint a,b (default 0,1)")
    k.add_argument("--x", help="evaluation point a,b (default 0,1)")
    k.add_argument("--grid", type=int, help="number of directions (default 16)")
    common(k, "csv")

    m = sub.add_parser("measure-table", help="tabulate the cone measure density and its boundary push-forward")
    m.add_argument("--x", help="basepoint a,b (default 0,1)")
    m.add_argument("--grid", type=int, help="number of directions (default 16)")
    common(m, "csv")

    r = sub.add_parser("ray-trace", help="sample a Teichmüller ray")
    r.add_argument("--x", help="origin a,b (default 0,1)")
    r.add_argument("--lamination", help="lamination p,q (default 1,0)")
    r.add_argument("--t-max", type=float, help="last time (default 10)")
    r.add_argument("--steps", type=int, help="number of samples (default 11)")
    common(r, "csv")

    lt = sub.add_parser("limit-trace", help="follow a builtin test function along a ray to its radial limit")
    lt.add_argument("--function", help="builtin function name (default cayley_re)")
    lt.add_argument("--x", help="origin a,b (default 0,1)")
    lt.add_argument("--lamination", help="lamination p,q (default 1,0)")
    common(lt, "csv")
    return parser


def resolve(args) -> dict:
    """Merge builtin defaults, the config file, then explicit flags."""
    opts = dict(BUILTIN_DEFAULTS)
    if args.config:
        try:
            with open(args.config) as fh:
                cfg = json.load(fh)
        except (OSError, json.JSONDecodeError) as exc:
            raise UsageError(f"cannot read config {args.config}: {exc}") from None
        if not isinstance(cfg, dict):
            raise UsageError("config file must hold a JSON object")
        cfg = {k.replace("-", "_"): v for k, v in cfg.items()}
        unknown = set(cfg) - CONFIG_KEYS[args.command]
        if unknown:
            raise UsageError(f"unknown config keys for {args.command}: {', '.join(sorted(unknown))}")
        opts.update(cfg)
    for key, value in vars(args).items():
        if value is not None:
            opts[key] = value
    return opts


def _write(text, path):
    if path:
        with open(path, "w", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _csv(header, rows) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    for row in rows:
        w.writerow([fmt(v) for v in row])
    return buf.getvalue()


def _table(header, rows, opts):
    if (opts["format"] or "csv") == "csv":
        return _csv(header, rows)
    records = [dict(zip(header, (float(v) if isinstance(v, np.floating) else v for v in row))) for row in rows]
    return json.dumps(records, indent=2) + "\n"


def cmd_verify(opts) -> int:
    names = verify.CHECKS if opts["check"] == "all" else (opts["check"],)
    tolerances = dict(opts["tolerances"] or {})
    unknown = set(tolerances) - set(verify.CHECKS)
    if unknown:
        raise UsageError(f"unknown checks in tolerances: {', '.join(sorted(unknown))}")
    if opts["tol"] is not None:
        if opts["check"] == "all":
            raise UsageError("--tol needs a single check; use a config 'tolerances' map for 'all'")
        tolerances[opts["check"]] = opts["tol"]
    seed = int(opts["seed"])
    if not 0 <= seed < 2 ** 64:
        raise UsageError("seed must be an unsigned 64-bit integer")
    reports = verify.run_all(seed, names, tolerances)
    timing = bool(opts["timing"])
    if (opts["format"] or "json") == "json":
        text = json.dumps([r.to_dict(timing) for r in reports], indent=2, sort_keys=True) + "\n"
    else:
        rows = []
        for r in reports:
            tols = r.metadata.get("entry_tolerances", {})
            for label, value in r.computed:
                t = tols.get(label, r.tolerance)
                rows.append((r.check_id, label, value, t, value <= t))
        text = _csv(("check_id", "label", "value", "tolerance", "passed"), rows)
    summary_stream = sys.stdout if opts["output"] else sys.stderr
    _write(text, opts["output"])
    if opts["table"]:
        rows = [(r.check_id, row["input"], row["computed"], row["expected"])
                for r in reports for row in r.table]
        _write(_csv(("check_id", "input", "computed", "expected"), rows), opts["table"])
    for r in reports:
        print(r.summary(), file=summary_stream)
    return 0 if all(r.passed for r in reports) else 1


def _angles(opts):
    n = int(opts["grid"])
    if n < 1:
        raise UsageError("--grid must be >= 1")
    return np.arange(n) * math.pi / n


def cmd_kernel_table(opts) -> int:
    x0, x = parse_point(opts["x0"]), parse_point(opts["x"])
    rows = []
    for th in _angles(opts):
        lam = Lamination.from_angle(th)
        p, q = (1.0, 0.0) if th == 0 else (lam.p, lam.q)
        rows.append((th, p, q, ray_endpoint(Lamination(p, q)), float(pluriharmonic_kernel(x0, x, th))))
    _write(_table(("theta", "p", "q", "endpoint", "kernel"), rows, opts), opts["output"])
    return 0


def cmd_measure_table(opts) -> int:
    x = parse_point(opts["x"])
    m = thurston_density(x)
    rows = []
    for th in _angles(opts):
        s = -math.cos(th) / math.sin(th) if th > 0 else -math.inf
        line = float(boundary_line_density(x, s)) if math.isfinite(s) else 0.0
        classical = float(verify.classical_poisson_density(x, s)) if math.isfinite(s) else 0.0
        rows.append((th, float(m.density(th)), s, line, classical))
    _write(_table(("theta", "density", "endpoint", "line_density", "poisson_density"), rows, opts),
           opts["output"])
    return 0


def cmd_ray_trace(opts) -> int:
    x, lam = parse_point(opts["x"]), parse_lamination(opts["lamination"])
    steps = int(opts["steps"])
    if steps < 2 or not float(opts["t_max"]) > 0:
        raise UsageError("need --steps >= 2 and --t-max > 0")
    ray = geodesic_ray(x, lam)
    e0 = extremal_length(x, lam)
    rows = []
    for t in np.linspace(0.0, float(opts["t_max"]), steps):
        y = ray.evaluate(float(t))
        e = extremal_length(y, lam)
        rows.append((float(t), y.a, y.b, e, e * math.exp(2 * t) / e0, teich_distance(x, y)))
    _write(_table(("t", "a", "b", "ext", "ext_ratio_scaled", "distance"), rows, opts), opts["output"])
    return 0


def cmd_limit_trace(opts) -> int:
    x, lam = parse_point(opts["x"]), parse_lamination(opts["lamination"])
    try:
        u = potential.get_function(opts["function"])
    except KeyError:
        names = ", ".join(f.name for f in potential.builtin_families())
        raise UsageError(f"unknown function {opts['function']!r}; choose from {names}") from None
    ray = geodesic_ray(x, lam)
    rows = []
    t = potential.T_START
    while t <= potential.T_MAX:
        rows.append((t, float(np.real(u(ray.tau(t))))))
        t *= potential.T_GROWTH
    limit = potential.radial_limit(u, lam, x)
    closed = float(np.real(u.boundary(ray_endpoint(lam))))
    rows.append(("limit", limit))
    rows.append(("boundary_value", closed))
    _write(_table(("t", "value"), rows, opts), opts["output"])
    return 0


COMMANDS = {
    "verify": cmd_verify,
    "kernel-table": cmd_kernel_table,
    "measure-table": cmd_measure_table,
    "ray-trace": cmd_ray_trace,
    "limit-trace": cmd_limit_trace,
}


def run(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        opts = resolve(args)
        return COMMANDS[args.command](opts)
    except UsageError as exc:
        print(f"teichpoisson: error: {exc}", file=sys.stderr)
        return 2


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
