"""Command-line entry point: ``symrank1 <command> [options]``.

Exit codes: 0 success, 2 invalid input or failed verification, 3 degenerate
input or inconclusive census.
"""

from __future__ import annotations

import argparse
import json
import math
import sys
import time

import numpy as np

from .critical import eigenpair_census, enumerate_critical_points, genericity_check, uniqueness_gap
from .exceptions import ConvergenceError, DegenerateInputError, DimensionError, TensorFormatError
from .family import FamilyParams, detect_family, family_tensor, slice_traces
from .io import read_tensor
from .optimize import SolverConfig, certify, solve
from .tensor import symmetric_decomposition
from .verify import ExperimentSpec, _jsonable, run_experiment

__all__ = ["main", "build_parser"]

EXIT_OK, EXIT_INVALID, EXIT_DEGENERATE = 0, 2, 3


def _floats_csv(text: str) -> tuple[float, ...]:
    try:
        return tuple(float(v) for v in text.split(",") if v.strip())
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated numbers, got {text!r}") from None


def _u64(text: str) -> int:
    v = int(text)
    if not 0 <= v < 2**64:
        raise argparse.ArgumentTypeError("seed must be an unsigned 64-bit integer")
    return v


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="symrank1", description="Best rank-one approximation of real tensors.")
    sub = p.add_subparsers(dest="command", required=True)

    def io_opts(sp, family=True):
        sp.add_argument("--in", dest="input", metavar="PATH", help="tensor text file")
        if family:
            sp.add_argument("--theta", type=float, help="use the Sym(2,3) family member at this angle")
        sp.add_argument("--out", metavar="PATH", help="write a JSON report here")
        sp.add_argument("--no-timing", action="store_true", help="report wall_ms as null")

    sp = sub.add_parser("approx", help="best rank-one approximation by multi-start HOPM")
    io_opts(sp)
    sp.add_argument("--restarts", type=int, default=32)
    sp.add_argument("--seed", type=_u64, default=0)
    sp.add_argument("--tol", type=float, default=1e-10)
    sp.add_argument("--max-iters", type=int, default=3000)
    sp.add_argument("--symmetric", action="store_true", help="tie all factors (symmetric input)")

    sp = sub.add_parser("enum", help="all critical points on the circle (Sym(2,d))")
    io_opts(sp)

    sp = sub.add_parser("census", help="eigenpair counts against the bounds (Sym(2,d), d>=3)")
    io_opts(sp)

    sp = sub.add_parser("detect-family", help="test membership in the exceptional Sym(2,3) family")
    io_opts(sp)
    sp.add_argument("--tol", type=float, default=1e-10, help="relative membership tolerance")

    sp = sub.add_parser("symdecomp", help="symmetric decomposition of the modes")
    io_opts(sp, family=False)
    sp.add_argument("--tol", type=float, default=0.0, help="absolute entry tolerance (0 = exact)")

    sp = sub.add_parser("verify", help="seeded verification experiment")
    sp.add_argument("--kind", choices=("symmetric", "partial-symmetry", "perturbation"), required=True)
    sp.add_argument("--n", type=int, default=2)
    sp.add_argument("--d", type=int, default=3)
    sp.add_argument("--samples", type=int, default=10)
    sp.add_argument("--seed", type=_u64, default=0)
    sp.add_argument("--restarts", type=int, default=32)
    sp.add_argument("--tol", type=float, default=1e-6, help="value tolerance")
    sp.add_argument("--eps-list", type=_floats_csv, default=(1e-1, 1e-2, 1e-3, 1e-4, 1e-5, 1e-6))
    sp.add_argument("--theta", type=float, help="family angle for the first perturbation sample")
    sp.add_argument("--in", dest="input", metavar="PATH", help="verify this tensor only")
    sp.add_argument("--out", metavar="PATH")
    sp.add_argument("--no-timing", action="store_true")
    return p


def _load(args):
    if args.input is not None:
        return read_tensor(args.input).array
    theta = getattr(args, "theta", None)
    if theta is not None:
        return family_tensor(FamilyParams(theta)).array
    raise ValueError("either --in or --theta is required")


def _write(args, payload):
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(json.dumps(_jsonable(payload), indent=2) + "\n")


def _wall(args, start):
    return None if args.no_timing else (time.perf_counter() - start) * 1e3


def _fmt_vec(v) -> str:
    return "[" + ", ".join(f"{x: .12g}" for x in np.asarray(v)) + "]"


def _cmd_approx(args, out) -> int:
    start = time.perf_counter()
    a = _load(args)
    cfg = SolverConfig(max_iters=args.max_iters, tol=args.tol, restarts=args.restarts,
                       seed=args.seed, symmetric_mode=args.symmetric)
    res = solve(a, cfg)
    cert = certify(a, res.approx, args.tol)
    print(f"value            {res.value:.15g}", file=out)
    print(f"residual         {res.residual:.3e}", file=out)
    print(f"pythagoras_gap   {cert.pythagoras_gap:.3e}", file=out)
    print(f"cert_gap         {cert.cert_gap:.3e}", file=out)
    print(f"iterations       {res.iterations}", file=out)
    print(f"restart_index    {res.restart_index}", file=out)
    for m, u in enumerate(res.factors, start=1):
        print(f"factor[{m}]        {_fmt_vec(u)}", file=out)
    _write(args, {
        "value": res.value,
        "factors": [list(u) for u in res.factors],
        "residual": res.residual,
        "iterations": res.iterations,
        "restart_index": res.restart_index,
        "converged": res.converged,
        "monotone": res.monotone,
        "is_stationary": cert.is_stationary,
        "pythagoras_gap": cert.pythagoras_gap,
        "cert_gap": cert.cert_gap,
        "wall_ms": _wall(args, start),
    })
    return EXIT_OK if cert.is_stationary else EXIT_INVALID


def _cmd_enum(args, out) -> int:
    start = time.perf_counter()
    a = _load(args)
    pts = enumerate_critical_points(a)
    distinct, pairing = genericity_check(pts, a.ndim)
    print(f"{'angle':>20} {'value':>22} {'residual':>10}", file=out)
    for p in pts:
        print(f"{p.angle:20.15f} {p.value:22.15g} {p.residual:10.2e}", file=out)
    print(f"points {len(pts)}  distinct_values {str(distinct).lower()}  pairing_ok {str(pairing).lower()}",
          file=out)
    _write(args, {
        "d": a.ndim,
        "points": [{"angle": p.angle, "x": list(p.point), "value": p.value, "residual": p.residual}
                   for p in pts],
        "distinct_values": distinct,
        "pairing_ok": pairing,
        "uniqueness_gap": uniqueness_gap(pts, a.ndim),
        "wall_ms": _wall(args, start),
    })
    return EXIT_OK


def _cmd_census(args, out) -> int:
    a = _load(args)
    rep = eigenpair_census(a)
    for k, v in rep.to_dict().items():
        print(f"{k:26} {json.dumps(v)}", file=out)
    _write(args, rep.to_dict())
    return EXIT_OK if rep.conclusive else EXIT_DEGENERATE


def _cmd_detect(args, out) -> int:
    a = _load(args)
    params = detect_family(a, args.tol)
    traces = slice_traces(a)
    if params is None:
        print("not a member of the exceptional family", file=out)
    else:
        print(f"family member  theta {params.theta:.15g}  scale {params.scale:.15g}", file=out)
    print(f"max_abs_trace  {traces.max_abs_trace:.3e}", file=out)
    _write(args, {
        "member": params is not None,
        "theta": None if params is None else params.theta,
        "scale": None if params is None else params.scale,
        "all_traceless": traces.all_traceless,
        "max_abs_trace": traces.max_abs_trace,
    })
    return EXIT_OK


def _cmd_symdecomp(args, out) -> int:
    a = read_tensor(args.input).array if args.input else None
    if a is None:
        raise ValueError("--in is required")
    part = symmetric_decomposition(a, args.tol)
    blocks = part.one_based()
    print("blocks " + json.dumps(blocks), file=out)
    _write(args, {"blocks": blocks})
    return EXIT_OK


def _cmd_verify(args, out) -> int:
    spec = ExperimentSpec(
        kind="verify-" + args.kind,
        n=args.n,
        d=args.d,
        samples=args.samples,
        seed=args.seed,
        restarts=args.restarts,
        tolerances={"value": args.tol},
        output_path=args.out,
        eps_list=args.eps_list,
        theta=args.theta,
    )
    tensors = [read_tensor(args.input).array] if args.input else None
    rep = run_experiment(spec, tensors, timing=not args.no_timing)
    agg = rep.aggregate
    print(f"kind {spec.kind}  n {spec.n}  d {spec.d}  seed {spec.seed}", file=out)
    print(f"passed {agg['passed']}/{agg['count']}  pass_rate {agg['pass_rate']:.4f}", file=out)
    for k, v in agg.items():
        if k not in ("count", "passed", "pass_rate"):
            print(f"{k} {json.dumps(v)}", file=out)
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(rep.to_json())
    return EXIT_OK if agg["passed"] == agg["count"] else EXIT_INVALID


_COMMANDS = {
    "approx": _cmd_approx,
    "enum": _cmd_enum,
    "census": _cmd_census,
    "detect-family": _cmd_detect,
    "symdecomp": _cmd_symdecomp,
    "verify": _cmd_verify,
}


def main(argv=None, out=None) -> int:
    out = out or sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_INVALID if exc.code else EXIT_OK
    try:
        return _COMMANDS[args.command](args, out)
    except (DegenerateInputError, ConvergenceError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DEGENERATE
    except (TensorFormatError, DimensionError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVALID


if __name__ == "__main__":
    sys.exit(main())
