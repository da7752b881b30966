"""Command-line front end.

Subcommands: invariants, push, traj, validate, converge.  The CLI owns
all unit conversion: a signed charge q (in units of the elementary
charge) maps proper time to the scaled time xi_eff = -q*tau/(m*c).  The
core formulas assume q = -e, so the default charge is -1 and, in the
default natural units (e = m = c = 1), xi = tau.

Run configuration can come from a flat key=value file (--config); flags
override file values.  Exit codes: 0 success, 1 validation/runtime
failure, 2 usage error.
"""
from __future__ import annotations

import argparse
import json
import sys

import numpy as np

from .exact import push_constant
from .fields import linear_gradient_model, load_grid_field, uniform_model
from .splitting import (
    SCHEME_NAMES,
    ParticleState,
    integrate,
    scheme,
    split_step_constant,
)
from .oracle import rk_integrate
from .types import (
    NULL_EPS,
    FourVelocity,
    SpaceTimePoint,
    UniformField,
    field_invariants,
    minkowski_norm,
)
from .validate import DEFAULT_TOL, rel_dev, run_all

CSV_COLUMNS = ("tau", "xi", "x0", "x1", "x2", "x3",
               "u0", "u1", "u2", "u3", "norm_err")


class UsageError(Exception):
    pass


def _parse_vec(text, n=3):
    parts = [p for chunk in str(text).split(",") for p in chunk.split()]
    if len(parts) != n:
        raise UsageError(f"expected {n} comma-separated values, got '{text}'")
    return np.array([float(p) for p in parts])


_DEFAULTS = {
    "charge": -1.0, "mass": 1.0, "c": 1.0,
    "efield": "0,0,0", "bfield": "0,0,0",
    "u0": 1.0, "u": "0,0,0", "x0": 0.0, "x": "0,0,0",
    "tau": 1.0, "steps": 100, "scheme": "strang_kdk", "model": "uniform",
    "out": None, "format": "csv", "seed": 1, "tol": DEFAULT_TOL,
    "jac_e": "0,0,0,0,0,0,0,0,0", "jac_b": "0,0,0,0,0,0,0,0,0",
}


def _load_config(path):
    values = {}
    with open(path) as fh:
        for lineno, raw in enumerate(fh, 1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            if "=" not in line:
                raise UsageError(f"{path}:{lineno}: expected key=value, got '{raw.strip()}'")
            key, val = line.split("=", 1)
            values[key.strip()] = val.strip()
    return values


def _resolve(args):
    """Merge defaults, config file and explicit flags into one namespace."""
    cfg = dict(_DEFAULTS)
    if getattr(args, "config", None):
        file_values = _load_config(args.config)
        unknown = set(file_values) - set(cfg)
        if unknown:
            raise UsageError(f"unknown config keys: {', '.join(sorted(unknown))}")
        cfg.update(file_values)
    for key in cfg:
        flag = getattr(args, key, None)
        if flag is not None:
            cfg[key] = flag
    ns = argparse.Namespace(
        charge=float(cfg["charge"]), mass=float(cfg["mass"]), c=float(cfg["c"]),
        efield=_parse_vec(cfg["efield"]), bfield=_parse_vec(cfg["bfield"]),
        u0=float(cfg["u0"]), u=_parse_vec(cfg["u"]),
        x0=float(cfg["x0"]), x=_parse_vec(cfg["x"]),
        tau=float(cfg["tau"]), steps=int(cfg["steps"]),
        scheme=str(cfg["scheme"]), model=str(cfg["model"]),
        out=cfg["out"], format=str(cfg["format"]),
        seed=int(cfg["seed"]), tol=float(cfg["tol"]),
        jac_e=_parse_vec(cfg["jac_e"], 9).reshape(3, 3),
        jac_b=_parse_vec(cfg["jac_b"], 9).reshape(3, 3),
    )
    if ns.mass <= 0 or ns.c <= 0:
        raise UsageError("mass and c must be positive")
    if ns.steps < 1:
        raise UsageError("steps must be >= 1")
    if ns.format not in ("csv", "json"):
        raise UsageError(f"unknown output format '{ns.format}'")
    return ns


def _xi_end(cfg) -> float:
    # core convention is q = -e; a general signed charge flips/stretches xi
    return -cfg.charge * cfg.tau / (cfg.mass * cfg.c)


def _build_model(cfg):
    name = cfg.model
    base = UniformField(cfg.efield, cfg.bfield)
    if name == "uniform":
        return uniform_model(base)
    if name == "gradient":
        return linear_gradient_model(base, cfg.jac_e, cfg.jac_b)
    path = name[5:] if name.startswith("grid:") else name
    return load_grid_field(path)


def _regime_label(field: UniformField) -> str:
    inv = field_invariants(field)
    if inv.kappa <= NULL_EPS * field.magnitude_scale:
        return "null"
    if inv.e_prime ** 2 <= NULL_EPS * inv.kappa:
        return "magnetic-dominated"
    if inv.b_prime ** 2 <= NULL_EPS * inv.kappa:
        return "electric-dominated"
    return "generic"


def cmd_invariants(args):
    cfg = _resolve(args)
    field = UniformField(cfg.efield, cfg.bfield)
    inv = field_invariants(field)
    print(f"kappa1  = {inv.kappa1:.17g}")
    print(f"kappa2  = {inv.kappa2:.17g}")
    print(f"kappa   = {inv.kappa:.17g}")
    print(f"E_prime = {inv.e_prime:.17g}")
    print(f"B_prime = {inv.b_prime:.17g}")
    print(f"regime  = {_regime_label(field)}")
    return 0


def cmd_push(args):
    cfg = _resolve(args)
    if cfg.model != "uniform":
        raise UsageError("push handles uniform fields only; use 'traj' for "
                         "non-uniform models")
    field = UniformField(cfg.efield, cfg.bfield)
    u_in = FourVelocity(cfg.u0, cfg.u)
    xi = _xi_end(cfg)
    u_out = push_constant(u_in, field, xi)
    norm_err = abs(minkowski_norm(u_out) - minkowski_norm(u_in))
    print(f"xi      = {xi:.17g}")
    print(f"u0      = {u_out.u0:.17g}")
    print("u       = " + " ".join(f"{v:.17g}" for v in u_out.u))
    print(f"norm_err= {norm_err:.3g}")
    return 0


def _records(cfg, samples):
    xi_end = _xi_end(cfg)
    n = len(samples) - 1
    norm0 = minkowski_norm(samples[0].u)
    for k, state in enumerate(samples):
        frac = k / n if n else 1.0
        yield {
            "tau": cfg.tau * frac,
            "xi": xi_end * frac,
            "x0": state.x.x0, "x1": state.x.x[0],
            "x2": state.x.x[1], "x3": state.x.x[2],
            "u0": state.u.u0, "u1": state.u.u[0],
            "u2": state.u.u[1], "u3": state.u.u[2],
            "norm_err": abs(minkowski_norm(state.u) - norm0),
        }


def _write_records(records, out, fmt):
    fh = open(out, "w") if out else sys.stdout
    try:
        if fmt == "csv":
            fh.write(",".join(CSV_COLUMNS) + "\n")
            for rec in records:
                fh.write(",".join(f"{rec[c]:.17g}" for c in CSV_COLUMNS) + "\n")
        else:
            json.dump(list(records), fh, indent=1)
            fh.write("\n")
    finally:
        if out:
            fh.close()


def cmd_traj(args):
    cfg = _resolve(args)
    model = _build_model(cfg)
    state = ParticleState(SpaceTimePoint(cfg.x0, cfg.x),
                          FourVelocity(cfg.u0, cfg.u))
    samples = integrate(state, model, _xi_end(cfg), cfg.steps,
                        scheme(cfg.scheme))
    _write_records(_records(cfg, samples), cfg.out, cfg.format)
    return 0


def cmd_validate(args):
    cfg = _resolve(args)
    count = args.count
    if count < 1:
        raise UsageError("count must be >= 1")
    results = run_all(cfg.seed, count, cfg.tol)
    failed = False
    for res in results:
        status = "PASS" if res.passed else "FAIL"
        failed = failed or not res.passed
        print(f"{status}  {res.name:<40s} max_dev={res.deviation:.3e} "
              f"tol={res.tol:.1e}")
    print(("FAILED" if failed else "OK") + f"  ({len(results)} checks, "
          f"count={count}, seed={cfg.seed})")
    return 1 if failed else 0


def cmd_converge(args):
    cfg = _resolve(args)
    if args.doublings < 2:
        raise UsageError("doublings must be >= 2")
    model = _build_model(cfg)
    xi_end = _xi_end(cfg)
    s = scheme(cfg.scheme)
    x_init = SpaceTimePoint(cfg.x0, cfg.x)
    u_init = FourVelocity(cfg.u0, cfg.u)

    uniform = cfg.model == "uniform"
    if uniform:
        # rotation/boost product approximation against the exact push
        field = UniformField(cfg.efield, cfg.bfield)
        truth_u = push_constant(u_init, field, xi_end)
    else:
        ref = rk_integrate(x_init, u_init, model, xi_end, args.ref_steps,
                           record_every=args.ref_steps)
        truth_x, truth_u = ref[-1]

    steps_list = [args.min_steps * 2 ** k for k in range(args.doublings)]
    errors = []
    print(f"{'steps':>9s}  {'error':>12s}")
    for n in steps_list:
        if uniform:
            u = u_init
            for _ in range(n):
                u = split_step_constant(u, field, xi_end / n, s)
            err = rel_dev(u, truth_u)
        else:
            end = integrate(ParticleState(x_init, u_init), model, xi_end, n, s)[-1]
            xs = max(1.0, float(np.max(np.abs(truth_x.as_array()))))
            err = max(rel_dev(end.u, truth_u),
                      float(np.max(np.abs(
                          end.x.as_array() - truth_x.as_array()))) / xs)
        errors.append(max(err, 1e-300))
        print(f"{n:>9d}  {err:>12.5e}")
    logs = np.log2(np.maximum(errors, 1e-300))
    slope = -np.polyfit(np.log2(steps_list), logs, 1)[0]
    print(f"scheme={cfg.scheme} design_order={s.order} fitted_slope={slope:.3f}")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="relpush",
        description="Relativistic charged-particle propagation in "
                    "electromagnetic fields")
    sub = parser.add_subparsers(dest="command", required=True)

    def add_common(p):
        p.add_argument("--config", help="flat key=value run configuration file")
        p.add_argument("--charge", type=float, help="charge in units of e (default -1)")
        p.add_argument("--mass", type=float)
        p.add_argument("--c", type=float)
        p.add_argument("--efield", help="Ex,Ey,Ez")
        p.add_argument("--bfield", help="Bx,By,Bz")
        p.add_argument("--u0", type=float, help="initial time component of u")
        p.add_argument("--u", help="initial spatial ux,uy,uz")
        p.add_argument("--x0", type=float)
        p.add_argument("--x", help="initial position x,y,z")
        p.add_argument("--tau", type=float, help="proper-time span")
        p.add_argument("--steps", type=int)
        p.add_argument("--scheme", choices=SCHEME_NAMES)
        p.add_argument("--model", help="uniform | gradient | grid file path")
        p.add_argument("--out", help="output path (default stdout)")
        p.add_argument("--format", choices=("csv", "json"))
        p.add_argument("--seed", type=int)
        p.add_argument("--tol", type=float)

    p = sub.add_parser("invariants", help="field invariants and regime label")
    add_common(p)
    p.set_defaults(func=cmd_invariants)

    p = sub.add_parser("push", help="exact constant-field push of u")
    add_common(p)
    p.set_defaults(func=cmd_push)

    p = sub.add_parser("traj", help="splitting-integrator trajectory")
    add_common(p)
    p.set_defaults(func=cmd_traj)

    p = sub.add_parser("validate", help="randomized cross-validation suite")
    add_common(p)
    p.add_argument("--count", type=int, default=1000,
                   help="random instances per check")
    p.set_defaults(func=cmd_validate)

    p = sub.add_parser("converge", help="step-doubling convergence study")
    add_common(p)
    p.add_argument("--min-steps", dest="min_steps", type=int, default=16)
    p.add_argument("--doublings", type=int, default=5)
    p.add_argument("--ref-steps", dest="ref_steps", type=int, default=1000000,
                   help="RK4 reference resolution for non-uniform models")
    p.set_defaults(func=cmd_converge)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else 2
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
