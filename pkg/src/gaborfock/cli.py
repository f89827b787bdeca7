"""Command-line front end: one subcommand per operation, files out.

Every run writes its result (``<subcommand>.csv`` or ``.json``) and a
``run.json`` manifest echoing the resolved configuration into ``--out``.
Angles are radians; point lists are comma-separated ``x:y`` pairs.
"""
from __future__ import annotations

import argparse
import math
import re
import sys
from pathlib import Path

import numpy as np

from . import bargmann_fock, gabor_core, indicator_lab, phase_space, special_functions
from .catalog import (EntireFunction, ExpQuadratic, Gaussian, MittagLefflerHalf, Monomial,
                      MonomialGaussian, One, Product, QuotientByLinear, SFunction,
                      ShiftedGaussian, TimeFunction)
from .io import read_csv, write_csv, write_json
from .phase_space import PhasePoint, PointSetSpec

__version__ = "0.1.0"


# ---------------------------------------------------------------- argument types

def _arg_error(func):
    def wrapped(text):
        try:
            return func(text)
        except (ValueError, TypeError, KeyError, IndexError) as exc:
            raise argparse.ArgumentTypeError(f"{text!r}: {exc}") from None
    wrapped.__name__ = func.__name__
    return wrapped


@_arg_error
def real_list(text: str) -> list[float]:
    """``a,b,c`` or an inclusive range ``start:stop:step``."""
    if ":" in text:
        a, b, step = (float(v) for v in text.split(":"))
        n = int(round((b - a) / step))
        return [a + k * step for k in range(n + 1)]
    return [float(v) for v in text.split(",") if v]


@_arg_error
def complex_list(text: str) -> list[complex]:
    return [complex(v.replace(" ", "")) for v in text.split(",") if v]


@_arg_error
def point_set(text: str) -> PointSetSpec:
    """``axes`` | ``lattice:A,B`` | ``lattice-minus:A,B,X:Y`` | ``explicit:X:Y,X:Y,...``."""
    kind, _, rest = text.partition(":")
    if kind == "axes" and not rest:
        return PointSetSpec.axes()
    if kind == "lattice":
        a, b = rest.split(",")
        return PointSetSpec.lattice(float(a), float(b))
    if kind == "lattice-minus":
        a, b, p = rest.split(",")
        return PointSetSpec.lattice_minus(float(a), float(b), PhasePoint.parse(p))
    if kind == "explicit":
        return PointSetSpec.explicit([PhasePoint.parse(p) for p in rest.split(",")])
    raise ValueError("expected axes, lattice:A,B, lattice-minus:A,B,X:Y or explicit:X:Y,...")


def _factor(tok: str) -> EntireFunction:
    tok = tok.strip()
    if tok == "one":
        return One()
    if tok == "s":
        return SFunction()
    m = re.fullmatch(r"z\^(\d+)", tok)
    if m:
        return Monomial(int(m.group(1)))
    if tok.startswith("expq:"):
        return ExpQuadratic(complex(tok[5:]))
    if tok.startswith("mlf:"):
        return MittagLefflerHalf(float(tok[4:]))
    raise ValueError(f"unknown factor {tok!r}")


@_arg_error
def entire_function(text: str) -> EntireFunction:
    """``FACTOR[*FACTOR...][/ROOT]`` with FACTOR in one, s, z^n, expq:C, mlf:SCALE."""
    body, _, root = text.partition("/")
    body = body.strip()
    if body.startswith("(") and body.endswith(")"):
        body = body[1:-1]
    factors = [_factor(t) for t in body.split("*")]
    F = factors[0] if len(factors) == 1 else Product(tuple(factors))
    return QuotientByLinear(F, complex(root)) if root else F


@_arg_error
def time_function(text: str) -> TimeFunction:
    """``gaussian`` | ``shifted:X:Y`` | ``monomial:K`` (unnormalised t^K g)."""
    kind, _, rest = text.partition(":")
    if kind == "gaussian" and not rest:
        return Gaussian()
    if kind == "shifted":
        x, y = rest.split(":")
        return ShiftedGaussian(float(x), float(y))
    if kind == "monomial":
        return MonomialGaussian(int(rest))
    raise ValueError("expected gaussian, shifted:X:Y or monomial:K")


@_arg_error
def nonneg_int(text: str) -> int:
    v = int(text)
    if v < 0:
        raise ValueError("must be nonnegative")
    return v


# ---------------------------------------------------------------- handlers
# Each handler returns (payload, extra_files); payload is a list of rows
# (tabular) or a dict (record).

def _points(a):
    pts = phase_space.generate_points(a.set, a.radius)
    return [{"xi": p.xi, "eta": p.eta, "modulus": p.modulus(), "angle": p.angle()} for p in pts], {}


def _count(a):
    return [phase_space.count_sector(a.set, a.r, a.theta, a.vartheta).row()], {}


def _density(a):
    est = phase_space.angular_density(a.set, a.theta, a.vartheta, a.r)
    return est.rows(), {}


def _invsq(a):
    return [{"r": a.r, "sum": phase_space.inverse_square_partial_sum(a.set, a.r)}], {}


def _eval_s(a):
    z = np.array(a.z)
    return [{"z": w, "s": special_functions.eval_s(w), "log_abs_s": float(special_functions.log_abs_s(w))}
            for w in z], {}


def _mlf(a):
    rows = []
    for w in a.z:
        lg = complex(special_functions.log_mittag_leffler_half(w))
        try:
            val = special_functions.mittag_leffler_half(w)
        except special_functions.RangeError:
            val = complex(math.nan, math.nan)
        rows.append({"z": w, "value": val, "log_abs": lg.real,
                     "remainder": special_functions.mittag_leffler_half_remainder(w)})
    return rows, {}


def _growth_scan(a):
    rep = special_functions.growth_ratio_scan(a.r, a.theta_count, a.epsilon)
    summary = {"min_ratio": rep.min_ratio, "max_ratio": rep.max_ratio,
               "excluded": rep.excluded, "epsilon": rep.epsilon}
    return rep.rows(), {"growth-scan.summary.json": summary}


def _shift(a):
    return [{"t": t, "value": gabor_core.tf_shift_eval(a.x, a.y, t)} for t in a.t], {}


def _gram(a):
    sec = gabor_core.gram_section(a.set, a.radius)
    extra = {}
    if a.full_matrix:
        n = len(sec.points)
        extra["gram-matrix.csv"] = [{"i": i, "j": j, "entry": sec.entries[i, j]}
                                    for i in range(n) for j in range(n)]
    return sec.summary(), extra


def _biorth(a):
    return gabor_core.biorthogonal_residual(a.set, a.radius, a.regularization).summary(), {}


def _complete(a):
    target = a.target
    if isinstance(target, MonomialGaussian):
        target = target.normalized()
    res = gabor_core.completeness_residual(target, a.set, a.r, a.regularization)
    return res.rows(), {}


def _bargmann(a):
    vals = bargmann_fock.bargmann_transform(a.target, np.array(a.z))
    return [{"z": w, "value": v} for w, v in zip(a.z, np.atleast_1d(vals))], {}


def _fock_norm(a):
    return [{"R": a.R, "norm_squared": bargmann_fock.fock_norm_truncated(a.func, a.R)}], {}


def _fock_probe(a):
    return bargmann_fock.fock_membership_probe(a.func, a.R).to_json(), {}


def _growth_check(a):
    chk = bargmann_fock.fock_growth_check(a.func, a.r, a.theta_count)
    summary = {"r": chk.r_list, "maxima": chk.maxima}
    return chk.rows(), {"growth-check.summary.json": summary}


def _indicator(a):
    return indicator_lab.estimate_indicator(a.func, a.theta_count, a.r).rows(), {}


def _profile_from(a) -> indicator_lab.IndicatorProfile:
    if a.profile is not None:
        rows = read_csv(a.profile)
        return indicator_lab.IndicatorProfile.from_values([r["h"] for r in rows])
    if a.func is None:
        raise SystemExit("one of --profile or --func is required")
    return indicator_lab.estimate_indicator(a.func, a.theta_count, a.r)


def _levin(a):
    return {"density": indicator_lab.levin_density(_profile_from(a))}, {}


def _jensen(a):
    return indicator_lab.jensen_check(a.func, a.r).to_json(), {}


def _envelope(a):
    dirs = indicator_lab.DirectionSet.of(a.dirs)
    if a.integrate:
        return {"integral": indicator_lab.envelope_integral(dirs)}, {}
    th = a.theta if a.theta is not None else list(2 * np.pi * np.arange(256) / 256)
    return [{"theta": t, "H": indicator_lab.h_envelope(dirs, t)} for t in th], {}


def _level_check(a):
    if a.dirs is not None:
        return indicator_lab.level_inequality_check(indicator_lab.DirectionSet.of(a.dirs)).to_json(), {}
    rng = np.random.default_rng(a.seed)
    rows = []
    for k in range(a.random):
        d = indicator_lab.random_direction_set(rng)
        chk = indicator_lab.level_inequality_check(d)
        rows.append({"index": k, "n_directions": len(d.angles), "integral": chk.integral,
                     "passes": chk.passes})
    return rows, {}


def _convexity(a):
    return {"worst_margin": indicator_lab.convexity_floor_check(_profile_from(a))}, {}


# subcommand -> (operation, handler); the coverage test walks this table
COMMANDS = {
    "points": (phase_space.generate_points, _points),
    "count": (phase_space.count_sector, _count),
    "density": (phase_space.angular_density, _density),
    "invsq": (phase_space.inverse_square_partial_sum, _invsq),
    "eval-s": (special_functions.eval_s, _eval_s),
    "mlf": (special_functions.mittag_leffler_half, _mlf),
    "growth-scan": (special_functions.growth_ratio_scan, _growth_scan),
    "shift": (gabor_core.tf_shift_eval, _shift),
    "gram": (gabor_core.gram_section, _gram),
    "biorth": (gabor_core.biorthogonal_residual, _biorth),
    "complete": (gabor_core.completeness_residual, _complete),
    "bargmann": (bargmann_fock.bargmann_transform, _bargmann),
    "fock-norm": (bargmann_fock.fock_norm_truncated, _fock_norm),
    "fock-probe": (bargmann_fock.fock_membership_probe, _fock_probe),
    "growth-check": (bargmann_fock.fock_growth_check, _growth_check),
    "indicator": (indicator_lab.estimate_indicator, _indicator),
    "levin": (indicator_lab.levin_density, _levin),
    "jensen": (indicator_lab.jensen_check, _jensen),
    "envelope": (indicator_lab.h_envelope, _envelope),
    "level-check": (indicator_lab.level_inequality_check, _level_check),
    "convexity": (indicator_lab.convexity_floor_check, _convexity),
}


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--out", type=Path, default=Path("."), help="output directory")
    common.add_argument("--format", choices=("csv", "json"), default=None,
                        help="result format (default: csv for tables, json for records)")
    common.add_argument("--seed", type=int, default=0)

    p = argparse.ArgumentParser(prog="gaborfock", description=__doc__.splitlines()[0])
    p.add_argument("--version", action="version", version=__version__)
    sub = p.add_subparsers(dest="command", metavar="SUBCOMMAND")

    def cmd(name, help_):
        return sub.add_parser(name, parents=[common], help=help_)

    two_pi = 2 * math.pi

    s = cmd("points", "generate a point set inside a disk")
    s.add_argument("--set", type=point_set, required=True)
    s.add_argument("--radius", type=float, required=True)

    s = cmd("count", "sector count n(r, theta, vartheta)")
    s.add_argument("--set", type=point_set, required=True)
    s.add_argument("--r", type=float, required=True)
    s.add_argument("--theta", type=float, default=0.0)
    s.add_argument("--vartheta", type=float, default=two_pi)

    s = cmd("density", "count/(pi r^2) along a radius ladder")
    s.add_argument("--set", type=point_set, required=True)
    s.add_argument("--r", type=real_list, required=True)
    s.add_argument("--theta", type=float, default=0.0)
    s.add_argument("--vartheta", type=float, default=two_pi)

    s = cmd("invsq", "partial sum of lambda^-2")
    s.add_argument("--set", type=point_set, required=True)
    s.add_argument("--r", type=float, required=True)

    s = cmd("eval-s", "evaluate s(z)")
    s.add_argument("--z", type=complex_list, required=True)

    s = cmd("mlf", "evaluate E_1/2(z)")
    s.add_argument("--z", type=complex_list, required=True)

    s = cmd("growth-scan", "|s| against exp((pi/2) r^2 |sin 2theta|) on a polar grid")
    s.add_argument("--r", type=real_list, required=True)
    s.add_argument("--theta-count", type=int, default=256)
    s.add_argument("--epsilon", type=float, default=special_functions.DEFAULT_EPSILON)

    s = cmd("shift", "evaluate rho_{x,y} g at times t")
    s.add_argument("--x", type=float, required=True)
    s.add_argument("--y", type=float, required=True)
    s.add_argument("--t", type=real_list, required=True)

    s = cmd("gram", "Gram section summary")
    s.add_argument("--set", type=point_set, required=True)
    s.add_argument("--radius", type=float, required=True)
    s.add_argument("--full-matrix", action="store_true", help="also dump the matrix as CSV")

    s = cmd("biorth", "biorthogonality residual of a finite section")
    s.add_argument("--set", type=point_set, required=True)
    s.add_argument("--radius", type=float, required=True)
    s.add_argument("--regularization", type=float, default=0.0)

    s = cmd("complete", "distance from a target to the truncated spans")
    s.add_argument("--target", type=time_function, required=True)
    s.add_argument("--set", type=point_set, required=True)
    s.add_argument("--r", type=real_list, required=True)
    s.add_argument("--regularization", type=float, default=None)

    s = cmd("bargmann", "Bargmann transform of a catalog function")
    s.add_argument("--target", type=time_function, required=True)
    s.add_argument("--z", type=complex_list, required=True)

    s = cmd("fock-norm", "truncated squared Fock norm")
    s.add_argument("--func", type=entire_function, required=True)
    s.add_argument("--R", type=float, required=True)

    s = cmd("fock-probe", "Fock membership probe on a radius ladder")
    s.add_argument("--func", type=entire_function, required=True)
    s.add_argument("--R", type=real_list, required=True)

    s = cmd("growth-check", "grid maxima of |F| exp(-(pi/2)|z|^2)")
    s.add_argument("--func", type=entire_function, required=True)
    s.add_argument("--r", type=real_list, required=True)
    s.add_argument("--theta-count", type=int, default=256)

    for name, help_ in (("indicator", "estimate the order-2 indicator"),
                        ("levin", "density from an indicator profile"),
                        ("convexity", "worst margin of the trigonometric-convexity floor")):
        s = cmd(name, help_)
        if name == "indicator":
            s.add_argument("--func", type=entire_function, required=True)
        else:
            s.add_argument("--func", type=entire_function, default=None)
            s.add_argument("--profile", type=Path, default=None, help="indicator CSV to read")
        s.add_argument("--theta-count", type=int, default=256)
        s.add_argument("--r", type=real_list, default=real_list("10:25:1"))

    s = cmd("jensen", "both sides of Jensen's formula")
    s.add_argument("--func", type=entire_function, required=True)
    s.add_argument("--r", type=float, required=True)

    s = cmd("envelope", "envelope H(theta; dirs); sectors split at midpoints between directions")
    s.add_argument("--dirs", type=real_list, required=True)
    s.add_argument("--theta", type=real_list, default=None)
    s.add_argument("--integrate", action="store_true")

    s = cmd("level-check", "integral of H against 2pi")
    g = s.add_mutually_exclusive_group(required=True)
    g.add_argument("--dirs", type=real_list)
    g.add_argument("--random", type=nonneg_int, help="number of seeded random admissible sets")
    return p


def run(argv: list[str] | None = None) -> int:
    parser = build_parser()
    argv = list(sys.argv[1:] if argv is None else argv)
    if not argv:
        parser.print_usage(sys.stderr)
        print("gaborfock: error: a subcommand is required", file=sys.stderr)
        return 2
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    if args.command is None:
        parser.print_usage(sys.stderr)
        return 2

    _, handler = COMMANDS[args.command]
    try:
        payload, extra = handler(args)
    except SystemExit as exc:
        print(f"gaborfock {args.command}: {exc}", file=sys.stderr)
        return 2
    except (ValueError, ArithmeticError, NotImplementedError, RuntimeError) as exc:
        print(f"gaborfock {args.command}: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 1

    out: Path = args.out
    out.mkdir(parents=True, exist_ok=True)
    fmt = args.format or ("csv" if isinstance(payload, list) else "json")
    main_name = f"{args.command}.{fmt}"
    if fmt == "csv":
        rows = payload if isinstance(payload, list) else [
            {k: v for k, v in payload.items() if not isinstance(v, (list, dict))}]
        write_csv(out / main_name, rows)
    else:
        write_json(out / main_name, payload)
    for name, obj in extra.items():
        (write_csv if name.endswith(".csv") else write_json)(out / name, obj)

    params = {k: _manifest_value(v) for k, v in sorted(vars(args).items())
              if k not in ("out", "format", "seed", "command")}
    write_json(out / "run.json", {"subcommand": args.command, "argv": argv, "params": params,
                                  "format": fmt, "seed": args.seed, "version": __version__,
                                  "outputs": [main_name, *extra]})
    return 0


def _manifest_value(v):
    if hasattr(v, "describe"):
        return v.describe()
    if isinstance(v, Path):
        return str(v)
    if isinstance(v, list):
        return [_manifest_value(x) for x in v]
    return v


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
