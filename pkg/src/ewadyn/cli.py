"""Command-line front end.

Every analysis operation is one subcommand.  Tabular results are CSV with a
self-describing header (`# key = value` lines echoing every effective
parameter, defaults included), scalar results are JSON with the same
parameter echo; re-running a command with the parameters found in a file's
header reproduces the file byte for byte.  Floats are serialized as their
shortest round-trip decimal.

Exit codes: 0 success, 1 internal numerical failure, 2 usage error.
"""

from __future__ import annotations

import argparse
import json
import math
import sys

from .acceptance import CRITERIA, run_criterion
from .dynamics import Params, potential
from .equilibrium import solve_fixed_point
from .orbits import (
    DEFAULT_MAX_PERIOD,
    DEFAULT_PERIOD_TOL,
    DEFAULT_TRANSIENT,
    DEFAULT_X0,
    certify_chaos,
    detect_period,
    detect_period_multiseed,
    iterate,
    lyapunov_estimate,
    verify_period2_trap,
)
from .stability import boundary_curves, regime, threshold_a0, universal_threshold_astar
from .sweep import Axis, bifurcation_diagram, cobweb_trace, period_diagram, regime_map

__all__ = ["main", "build_parser"]


class UsageError(Exception):
    """Out-of-range or inconsistent parameters; maps to exit code 2."""


# ---------------------------------------------------------------------------
# argument types

def _positive_float(s: str) -> float:
    v = float(s)
    if not (math.isfinite(v) and v > 0.0):
        raise argparse.ArgumentTypeError(f"must be > 0 and finite, got {s}")
    return v


def _open_unit(s: str) -> float:
    v = float(s)
    if not 0.0 < v < 1.0:
        raise argparse.ArgumentTypeError(f"must lie in (0,1), got {s}")
    return v


def _closed_unit(s: str) -> float:
    v = float(s)
    if not 0.0 <= v <= 1.0:
        raise argparse.ArgumentTypeError(f"must lie in [0,1], got {s}")
    return v


def _sigma_below_one(s: str) -> float:
    v = float(s)
    if not 0.0 <= v < 1.0:
        raise argparse.ArgumentTypeError(f"must lie in [0,1), got {s}")
    return v


def _nonneg_int(s: str) -> int:
    v = int(s)
    if v < 0:
        raise argparse.ArgumentTypeError(f"must be >= 0, got {s}")
    return v


def _positive_int(s: str) -> int:
    v = int(s)
    if v < 1:
        raise argparse.ArgumentTypeError(f"must be >= 1, got {s}")
    return v


def _any_float(s: str) -> float:
    return float(s)


# ---------------------------------------------------------------------------
# output encoding

def _fmt(v) -> str:
    if isinstance(v, bool):
        return "true" if v else "false"
    if isinstance(v, float):
        return repr(v)
    return str(v)


def _csv_text(command: str, params: list[tuple[str, object]],
              columns: list[str], rows) -> str:
    lines = [f"# ewadyn {command}"]
    for key, value in params:
        lines.append(f"# {key} = {_fmt(value)}")
    lines.append(f"# columns: {','.join(columns)}")
    for row in rows:
        lines.append(",".join(_fmt(v) for v in row))
    return "\n".join(lines) + "\n"


def _json_safe(v):
    if isinstance(v, float) and not math.isfinite(v):
        return None
    if isinstance(v, tuple):
        return [_json_safe(x) for x in v]
    if isinstance(v, list):
        return [_json_safe(x) for x in v]
    if isinstance(v, dict):
        return {k: _json_safe(x) for k, x in v.items()}
    return v


def _json_text(command: str, params: list[tuple[str, object]], result) -> str:
    doc = {"command": command, "params": dict(params), "result": _json_safe(result)}
    return json.dumps(doc, indent=2, sort_keys=True) + "\n"


def _emit(text: str, out: str | None) -> None:
    if out is None or out == "-":
        sys.stdout.write(text)
    else:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text)


# ---------------------------------------------------------------------------
# handlers: each returns (text or None, exit code)

def _cmd_fixpoint(args):
    result = solve_fixed_point(Params(args.a, args.b, args.sigma))
    params = [("a", args.a), ("b", args.b), ("sigma", args.sigma)]
    return _json_text("fixpoint", params, {
        "xbar": result.xbar, "residual": result.residual, "bracket": result.bracket,
    }), 0


def _cmd_threshold(args):
    a0 = threshold_a0(args.b, args.sigma)
    params = [("b", args.b), ("sigma", args.sigma)]
    return _json_text("threshold", params, {"a0": a0}), 0


def _cmd_astar(args):
    astar = universal_threshold_astar(args.sigma)
    return _json_text("astar", [("sigma", args.sigma)], {"a_star": astar}), 0


def _cmd_regime(args):
    label = regime(args.b, args.sigma)
    params = [("b", args.b), ("sigma", args.sigma)]
    return _json_text("regime", params, {"label": label}), 0


def _cmd_boundary(args):
    flip_min = 4.0 * (2.0 - args.sigma)
    if args.a_min < flip_min:
        raise UsageError(f"--a-min must be >= 4*(2-sigma) = {flip_min}")
    if not args.a_min < args.a_max:
        raise UsageError("--a-min must be below --a-max")
    grid = Axis("a", args.a_min, args.a_max, args.a_steps).values()
    bb = boundary_curves(args.sigma, grid)
    params = [("sigma", args.sigma), ("a_min", args.a_min), ("a_max", args.a_max),
              ("a_steps", args.a_steps)]
    rows = zip(bb.a_values, bb.x1, bb.x2, bb.b1, bb.b2)
    return _csv_text("boundary", params, ["a", "xbar1", "xbar2", "b1", "b2"], rows), 0


def _cmd_orbit(args):
    trace = iterate(Params(args.a, args.b, args.sigma), args.x0, args.transient, args.samples)
    params = [("a", args.a), ("b", args.b), ("sigma", args.sigma), ("x0", args.x0),
              ("transient", args.transient), ("samples", args.samples)]
    rows = enumerate(trace.samples)
    return _csv_text("orbit", params, ["n", "x"], rows), 0


def _cmd_period(args):
    p = Params(args.a, args.b, args.sigma)
    if args.multi_seed:
        report = detect_period_multiseed(p, transient=args.transient,
                                         max_period=args.max_period, tol=args.tol)
    else:
        report = detect_period(p, x0=args.x0, transient=args.transient,
                               max_period=args.max_period, tol=args.tol)
    params = [("a", args.a), ("b", args.b), ("sigma", args.sigma), ("x0", args.x0),
              ("transient", args.transient), ("max_period", args.max_period),
              ("tol", args.tol), ("multi_seed", args.multi_seed)]
    return _json_text("period", params, {
        "period": report.period, "orbit": list(report.orbit),
        "multiplier": report.multiplier, "label": report.label,
    }), 0


def _cmd_certify_chaos(args):
    p = Params(args.a, args.b, args.sigma)
    if args.sigma >= 1.0 or args.a <= 4.0 * (1.0 - args.sigma):
        raise UsageError("certificate needs sigma < 1 and a > 4*(1-sigma)")
    cert = certify_chaos(p)
    params = [("a", args.a), ("b", args.b), ("sigma", args.sigma)]
    witness = {
        "x0": cert.witness.x0, "fx0": cert.witness.fx0, "f3x0": cert.witness.f3x0,
        "c_minus": cert.witness.c_minus, "c_plus": cert.witness.c_plus,
        "mirrored": cert.witness.mirrored, "ok": cert.witness.ok,
    }
    return _json_text("certify-chaos", params, {
        "hypothesis_met": cert.hypothesis_met,
        "period3_found": cert.period3_found,
        "orbit3": list(cert.orbit3) if cert.orbit3 is not None else None,
        "witness": witness,
        "entropy_lower_bound": cert.entropy_lower_bound,
    }), 0


def _cmd_verify_trap(args):
    if not 0.0 < args.sigma < 1.0:
        raise UsageError("trap verification needs sigma in (0,1)")
    gate = (1.0 - args.sigma) / (2.0 - args.sigma)
    if not min(args.b, 1.0 - args.b) > gate:
        raise UsageError(f"trap verification needs min(b,1-b) > (1-sigma)/(2-sigma) = {gate}")
    tv = verify_period2_trap(Params(args.a, args.b, args.sigma))
    params = [("a", args.a), ("b", args.b), ("sigma", args.sigma)]
    return _json_text("verify-trap", params, {
        "phi_b": tv.phi_b, "phi_1mb": tv.phi_1mb,
        "x_minus": tv.x_minus, "x_plus": tv.x_plus, "half_width": tv.half_width,
        "i_minus": list(tv.i_minus), "i_plus": list(tv.i_plus),
        "derivative_bound_holds": tv.derivative_bound_holds,
        "inclusions_hold": tv.inclusions_hold,
        "linear_bounds_hold": tv.linear_bounds_hold,
        "trap_holds": tv.trap_holds,
    }), 0


def _cmd_lyapunov(args):
    est = lyapunov_estimate(Params(args.a, args.b, args.sigma), args.x0,
                            args.transient, args.steps)
    params = [("a", args.a), ("b", args.b), ("sigma", args.sigma), ("x0", args.x0),
              ("transient", args.transient), ("steps", args.steps)]
    return _json_text("lyapunov", params, {
        "value": est.value, "floored_terms": est.floored_terms,
    }), 0


def _cmd_bifurcation(args):
    if not args.a_min < args.a_max:
        raise UsageError("--a-min must be below --a-max")
    grid = bifurcation_diagram(args.b, args.sigma, args.a_min, args.a_max,
                               args.a_steps, args.samples_per_a,
                               x0=args.x0, transient=args.transient,
                               workers=args.threads)
    params = [("b", args.b), ("sigma", args.sigma), ("a_min", args.a_min),
              ("a_max", args.a_max), ("a_steps", args.a_steps),
              ("samples_per_a", args.samples_per_a), ("x0", args.x0),
              ("transient", args.transient)]
    rows = ((a, x) for a, samples in grid.cells for x in samples)
    return _csv_text("bifurcation", params, ["a", "x"], rows), 0


def _cmd_period_diagram(args):
    if not args.a_min < args.a_max:
        raise UsageError("--a-min must be below --a-max")
    if not args.b_min < args.b_max:
        raise UsageError("--b-min must be below --b-max")
    grid = period_diagram(args.sigma, a_min=args.a_min, a_max=args.a_max,
                          b_min=args.b_min, b_max=args.b_max,
                          a_steps=args.a_steps, b_steps=args.b_steps,
                          x0=args.x0, transient=args.transient, tol=args.tol,
                          max_period=args.max_period, workers=args.threads)
    params = [("sigma", args.sigma), ("a_min", args.a_min), ("a_max", args.a_max),
              ("b_min", args.b_min), ("b_max", args.b_max), ("a_steps", args.a_steps),
              ("b_steps", args.b_steps), ("x0", args.x0), ("transient", args.transient),
              ("tol", args.tol), ("max_period", args.max_period)]
    # legend: period column holds 1..max_period; 0 = no period detected (or b
    # outside (0,1))
    return _csv_text("period-diagram", params, ["a", "b", "period"], grid.cells), 0


def _cmd_regime_map(args):
    grid = regime_map(args.sigma_steps, args.b_steps)
    params = [("sigma_steps", args.sigma_steps), ("b_steps", args.b_steps)]
    return _csv_text("regime-map", params, ["sigma", "b", "label"], grid.cells), 0


def _cmd_cobweb(args):
    trace = cobweb_trace(Params(args.a, args.b, args.sigma), args.x0, args.steps)
    params = [("a", args.a), ("b", args.b), ("sigma", args.sigma), ("x0", args.x0),
              ("steps", args.steps)]
    rows = ((i, x, y) for i, (x, y) in enumerate(trace.vertices))
    return _csv_text("cobweb", params, ["segment_index", "x", "y"], rows), 0


def _cmd_potential(args):
    p = Params(args.a, args.b, 0.0)  # the potential does not involve sigma
    n = args.points
    rows = []
    for i in range(n):
        u = i / (n - 1)
        rows.append((u, potential(p, u)))
    params = [("a", args.a), ("b", args.b), ("points", args.points)]
    return _csv_text("potential", params, ["x", "phi"], rows), 0


def _cmd_verify(args):
    if args.criteria:
        try:
            numbers = sorted({int(tok) for tok in args.criteria.split(",")})
        except ValueError:
            raise UsageError(f"--criteria must be a comma-separated list of integers, got {args.criteria!r}")
        known = {c.number for c in CRITERIA}
        unknown = [n for n in numbers if n not in known]
        if unknown:
            raise UsageError(f"unknown criteria {unknown}; available: {sorted(known)}")
    else:
        numbers = [c.number for c in CRITERIA]
    failures = 0
    for number in numbers:
        res = run_criterion(number, workers=args.threads)
        status = "PASS" if res.passed else "FAIL"
        print(f"{status}  criterion {res.number:2d}  {res.name}: {res.detail} ({res.seconds:.2f}s)")
        sys.stdout.flush()
        if not res.passed:
            failures += 1
    print(f"{len(numbers) - failures}/{len(numbers)} criteria passed")
    return None, (1 if failures else 0)


# ---------------------------------------------------------------------------
# parser

def _add_out(sp):
    sp.add_argument("--out", "-o", default=None, metavar="PATH",
                    help="output file (default: stdout)")


def _add_params(sp, sigma_type=_closed_unit):
    sp.add_argument("--a", type=_positive_float, required=True,
                    help="intensity of choice, > 0")
    sp.add_argument("--b", type=_open_unit, required=True,
                    help="equilibrium split, in (0,1)")
    sp.add_argument("--sigma", type=sigma_type, required=True,
                    help="discount factor")


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="ewadyn",
        description="Discounted EWA dynamics on two congestible resources: "
                    "equilibria, thresholds, orbits, chaos certificates and diagram sweeps.")
    sub = ap.add_subparsers(dest="command", required=True, metavar="COMMAND")

    sp = sub.add_parser("fixpoint", help="solve the interior fixed point")
    _add_params(sp)
    _add_out(sp)
    sp.set_defaults(handler=_cmd_fixpoint)

    sp = sub.add_parser("threshold", help="destabilization intensity a0(b, sigma)")
    sp.add_argument("--b", type=_open_unit, required=True)
    sp.add_argument("--sigma", type=_sigma_below_one, required=True)
    _add_out(sp)
    sp.set_defaults(handler=_cmd_threshold)

    sp = sub.add_parser("boundary", help="flip-boundary branches b1(a), b2(a)")
    sp.add_argument("--sigma", type=_closed_unit, required=True)
    sp.add_argument("--a-min", type=_positive_float, required=True)
    sp.add_argument("--a-max", type=_positive_float, required=True)
    sp.add_argument("--a-steps", type=_positive_int, default=100)
    _add_out(sp)
    sp.set_defaults(handler=_cmd_boundary)

    sp = sub.add_parser("astar", help="universal instability threshold a*(sigma)")
    sp.add_argument("--sigma", type=_closed_unit, required=True)
    _add_out(sp)
    sp.set_defaults(handler=_cmd_astar)

    sp = sub.add_parser("regime", help="large-intensity regime label for (b, sigma)")
    sp.add_argument("--b", type=_open_unit, required=True)
    sp.add_argument("--sigma", type=_closed_unit, required=True)
    _add_out(sp)
    sp.set_defaults(handler=_cmd_regime)

    sp = sub.add_parser("orbit", help="iterate an orbit and record samples")
    _add_params(sp)
    sp.add_argument("--x0", type=_open_unit, default=DEFAULT_X0)
    sp.add_argument("--transient", type=_nonneg_int, default=0)
    sp.add_argument("--samples", type=_positive_int, default=1000)
    _add_out(sp)
    sp.set_defaults(handler=_cmd_orbit)

    sp = sub.add_parser("period", help="detect the attracting period from one seed")
    _add_params(sp)
    sp.add_argument("--x0", type=_open_unit, default=DEFAULT_X0)
    sp.add_argument("--transient", type=_nonneg_int, default=DEFAULT_TRANSIENT)
    sp.add_argument("--max-period", type=_positive_int, default=DEFAULT_MAX_PERIOD)
    sp.add_argument("--tol", type=_positive_float, default=DEFAULT_PERIOD_TOL,
                    help="periodicity tolerance (1e-16 for strict machine-identical cycles)")
    sp.add_argument("--multi-seed", action="store_true",
                    help="try fallback seeds if the first finds no period")
    _add_out(sp)
    sp.set_defaults(handler=_cmd_period)

    sp = sub.add_parser("certify-chaos", help="period-3 chaos certificate")
    _add_params(sp)
    _add_out(sp)
    sp.set_defaults(handler=_cmd_certify_chaos)

    sp = sub.add_parser("verify-trap", help="alternating-interval 2-cycle trap check")
    _add_params(sp)
    _add_out(sp)
    sp.set_defaults(handler=_cmd_verify_trap)

    sp = sub.add_parser("lyapunov", help="finite-time Lyapunov exponent estimate")
    _add_params(sp)
    sp.add_argument("--x0", type=_open_unit, default=DEFAULT_X0)
    sp.add_argument("--transient", type=_nonneg_int, default=DEFAULT_TRANSIENT)
    sp.add_argument("--steps", type=_positive_int, default=100000)
    _add_out(sp)
    sp.set_defaults(handler=_cmd_lyapunov)

    sp = sub.add_parser("bifurcation", help="bifurcation diagram data (x against a)")
    sp.add_argument("--b", type=_open_unit, required=True)
    sp.add_argument("--sigma", type=_closed_unit, required=True)
    sp.add_argument("--a-min", type=_positive_float, required=True)
    sp.add_argument("--a-max", type=_positive_float, required=True)
    sp.add_argument("--a-steps", type=_positive_int, default=400)
    sp.add_argument("--samples-per-a", type=_positive_int, default=100)
    sp.add_argument("--x0", type=_open_unit, default=DEFAULT_X0)
    sp.add_argument("--transient", type=_nonneg_int, default=DEFAULT_TRANSIENT)
    sp.add_argument("--threads", type=_positive_int, default=None,
                    help="sweep workers (default: machine parallelism)")
    _add_out(sp)
    sp.set_defaults(handler=_cmd_bifurcation)

    sp = sub.add_parser("period-diagram", help="attracting-period classes over the (a,b) plane")
    sp.add_argument("--sigma", type=_closed_unit, required=True)
    sp.add_argument("--a-min", type=_positive_float, default=4.0)
    sp.add_argument("--a-max", type=_positive_float, default=54.0)
    sp.add_argument("--b-min", type=_closed_unit, default=0.0)
    sp.add_argument("--b-max", type=_closed_unit, default=1.0)
    sp.add_argument("--a-steps", type=_positive_int, default=200)
    sp.add_argument("--b-steps", type=_positive_int, default=200)
    sp.add_argument("--x0", type=_open_unit, default=DEFAULT_X0)
    sp.add_argument("--transient", type=_nonneg_int, default=DEFAULT_TRANSIENT)
    sp.add_argument("--tol", type=_positive_float, default=DEFAULT_PERIOD_TOL)
    sp.add_argument("--max-period", type=_positive_int, default=DEFAULT_MAX_PERIOD)
    sp.add_argument("--threads", type=_positive_int, default=None)
    _add_out(sp)
    sp.set_defaults(handler=_cmd_period_diagram)

    sp = sub.add_parser("regime-map", help="analytic regime labels over the (sigma,b) plane")
    sp.add_argument("--sigma-steps", type=_positive_int, default=101)
    sp.add_argument("--b-steps", type=_positive_int, default=101)
    _add_out(sp)
    sp.set_defaults(handler=_cmd_regime_map)

    sp = sub.add_parser("cobweb", help="cobweb staircase data for one orbit")
    _add_params(sp)
    sp.add_argument("--x0", type=_open_unit, default=DEFAULT_X0)
    sp.add_argument("--steps", type=_nonneg_int, default=60)
    _add_out(sp)
    sp.set_defaults(handler=_cmd_cobweb)

    sp = sub.add_parser("potential", help="congestion potential curve")
    sp.add_argument("--a", type=_positive_float, required=True)
    sp.add_argument("--b", type=_open_unit, required=True)
    sp.add_argument("--points", type=_positive_int, default=1000)
    _add_out(sp)
    sp.set_defaults(handler=_cmd_potential)

    sp = sub.add_parser("verify", help="run the acceptance criteria; nonzero exit on failure")
    sp.add_argument("--criteria", default=None,
                    help="comma-separated criterion numbers (default: all)")
    sp.add_argument("--threads", type=_positive_int, default=None)
    sp.set_defaults(handler=_cmd_verify)

    return ap


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        text, code = args.handler(args)
    except UsageError as exc:
        print(f"ewadyn: error: {exc}", file=sys.stderr)
        return 2
    except ValueError as exc:
        print(f"ewadyn: numerical failure: {exc}", file=sys.stderr)
        return 1
    if text is not None:
        _emit(text, getattr(args, "out", None))
    return code


if __name__ == "__main__":
    raise SystemExit(main())
