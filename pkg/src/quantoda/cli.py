"""Command line interface.

Subcommands:

* ``whittaker eval`` / ``whittaker grid`` -- contour-integral wave function
  values and coordinate sweeps (direct or recursive method).
* ``spherical eval`` -- spherical-kernel integral values.
* ``cfunction`` -- Gamma-product c-function factors and Plancherel density.
* ``verify {qism, separation, gz, eigen}`` -- the exact and numerical
  relation suites, as JSON reports.

Reports use the fixed key set {suite, n, relation, status, residual,
tolerance, seed, witness}.  Exit codes: 0 success, 1 a verification or
evaluation failure, 2 usage error.  Identical arguments and seed produce
byte-identical JSON (floats normalized to 17 significant digits).
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from typing import List, Sequence

import numpy as np

from . import gz, harish_chandra as hc, mellin_barnes as mb, oracle, separation, weyl
from .report import VerificationReport, combine


def _float_list(text: str) -> List[float]:
    try:
        return [float(v) for v in text.split(",") if v.strip() != ""]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated floats: {text!r}")


def _norm(x):
    """Round-trip floats through 17 significant digits for stable output."""
    if isinstance(x, float):
        return float(f"{x:.17g}")
    if isinstance(x, complex):
        return {"re": _norm(x.real), "im": _norm(x.imag)}
    if isinstance(x, dict):
        return {k: _norm(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_norm(v) for v in x]
    return x


def _emit_reports(reports: Sequence[VerificationReport], out) -> int:
    payload = {"reports": [_norm(r.to_dict()) for r in reports],
               "status": combine(reports)}
    json.dump(payload, out, indent=2, sort_keys=True)
    out.write("\n")
    return 0 if combine(reports) == "PASS" else 1


def _emit_value(rows: Sequence[dict], fmt: str, out) -> None:
    rows = [_norm(r) for r in rows]
    if fmt == "json":
        json.dump(rows, out, indent=2, sort_keys=True)
        out.write("\n")
    else:
        writer = csv.DictWriter(out, fieldnames=list(rows[0].keys()))
        writer.writeheader()
        for r in rows:
            writer.writerow({k: repr(v) if isinstance(v, float) else v
                             for k, v in r.items()})


def _value_row(res: mb.QuadratureResult, x: Sequence[float]) -> dict:
    row = {f"x{k+1}": float(v) for k, v in enumerate(x)}
    row.update(re=res.value.real, im=res.value.imag, abs=abs(res.value),
               error_estimate=res.error_estimate)
    return row


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="quantoda",
        description="Open Toda lattice wave functions: evaluation and "
                    "verification of their operator identities.")
    sub = p.add_subparsers(dest="command", required=True)

    wh = sub.add_parser("whittaker", help="wave function evaluation")
    whsub = wh.add_subparsers(dest="subcommand", required=True)
    we = whsub.add_parser("eval", help="single-point value")
    we.add_argument("--n", type=int, required=True)
    we.add_argument("--alpha", type=_float_list, required=True)
    we.add_argument("--x", type=_float_list, required=True)
    we.add_argument("--tol", type=float, default=1e-6)
    we.add_argument("--method", choices=["direct", "recursive"], default="direct")
    we.add_argument("--format", choices=["csv", "json"], default="csv")

    wg = whsub.add_parser("grid", help="sweep one coordinate")
    wg.add_argument("--n", type=int, required=True)
    wg.add_argument("--alpha", type=_float_list, required=True)
    wg.add_argument("--axis", type=int, required=True)
    wg.add_argument("--from", dest="start", type=float, required=True)
    wg.add_argument("--to", dest="stop", type=float, required=True)
    wg.add_argument("--steps", type=int, required=True)
    wg.add_argument("--x", type=_float_list, default=None,
                    help="base point for the fixed coordinates")
    wg.add_argument("--tol", type=float, default=1e-6)
    wg.add_argument("--out", default=None)
    wg.add_argument("--format", choices=["csv", "json"], default="csv")

    sp = sub.add_parser("spherical", help="spherical function evaluation")
    spsub = sp.add_subparsers(dest="subcommand", required=True)
    se = spsub.add_parser("eval")
    se.add_argument("--n", type=int, required=True)
    se.add_argument("--lambda", dest="lam", type=_float_list, required=True)
    se.add_argument("--x", type=_float_list, required=True)
    se.add_argument("--tol", type=float, default=1e-6)
    se.add_argument("--format", choices=["csv", "json"], default="csv")

    cf = sub.add_parser("cfunction",
                        help="c-function factors and Plancherel density")
    cf.add_argument("--lambda", dest="lam", type=_float_list, required=True)
    cf.add_argument("--format", choices=["csv", "json"], default="csv")

    ver = sub.add_parser("verify", help="relation check suites")
    vsub = ver.add_subparsers(dest="subcommand", required=True)

    vq = vsub.add_parser("qism", help="exact Lax/monodromy operator identities")
    vq.add_argument("--n", type=int, required=True)

    vs = vsub.add_parser("separation",
                         help="separated difference equations and measure")
    vs.add_argument("--n", type=int, required=True)
    vs.add_argument("--trials", type=int, default=100)
    vs.add_argument("--seed", type=int, default=42)

    vg = vsub.add_parser("gz", help="difference-operator representation suite")
    vg.add_argument("--n", type=int, required=True)
    vg.add_argument("--trials", type=int, default=20)
    vg.add_argument("--seed", type=int, default=42)
    vg.add_argument("--tol", type=float, default=None)

    vei = vsub.add_parser("eigen", help="coordinate-space eigenvalue residual")
    vei.add_argument("--n", type=int, required=True)
    vei.add_argument("--alpha", type=_float_list, required=True)
    vei.add_argument("--grid", required=True,
                     help="points:spacing, e.g. 64:0.05")
    vei.add_argument("--tol", type=float, default=1e-3)
    vei.add_argument("--refine", action="store_true")
    return p


def dispatch(argv: Sequence[str] | None = None, out=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    out = out or sys.stdout
    try:
        return _run(args, parser, out)
    except (ValueError, RuntimeError, OverflowError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


def _run(args, parser, out) -> int:
    if args.command == "whittaker" and args.subcommand == "eval":
        fn = mb.whittaker_eval if args.method == "direct" else mb.whittaker_recursive
        res = fn(args.n, args.alpha, args.x, args.tol)
        _emit_value([_value_row(res, args.x)], args.format, out)
        return 0
    if args.command == "whittaker" and args.subcommand == "grid":
        rows = mb.grid_scan("whittaker", args.n, args.alpha, args.axis,
                            args.start, args.stop, args.steps,
                            x_base=args.x, tol=args.tol)
        if args.out:
            with open(args.out, "w", newline="") as fh:
                _emit_value(rows, args.format, fh)
        else:
            _emit_value(rows, args.format, out)
        return 0
    if args.command == "spherical":
        res = mb.spherical_eval(args.n, args.lam, args.x, args.tol)
        _emit_value([_value_row(res, args.x)], args.format, out)
        return 0
    if args.command == "cfunction":
        lam = args.lam
        c = hc.c_function([complex(v) for v in lam])
        row = {"lambda": ",".join(repr(v) for v in lam),
               "c_re": c.real, "c_im": c.imag,
               "plancherel_density": hc.plancherel_density(lam)}
        _emit_value([row], args.format, out)
        return 0
    if args.command == "verify":
        return _emit_reports(_verify_reports(args), out)
    parser.error(f"unknown command {args.command}")


def _verify_reports(args) -> List[VerificationReport]:
    if args.subcommand == "qism":
        return weyl.qism_suite(args.n)
    if args.subcommand == "separation":
        return separation.separation_suite(args.n, args.trials, args.seed)
    if args.subcommand == "gz":
        return gz.gz_suite(args.n, args.trials, args.seed, tol=args.tol)
    if args.subcommand == "eigen":
        try:
            points_s, spacing_s = args.grid.split(":")
            spec = oracle.GridSpec(int(points_s), float(spacing_s))
        except ValueError:
            raise ValueError(f"bad --grid spec {args.grid!r}; expected points:spacing")
        return [oracle.check_eigen(args.n, args.alpha, spec,
                                   tol=args.tol, refine=args.refine)]
    raise ValueError(f"unknown verify target {args.subcommand}")


def main() -> None:
    sys.exit(dispatch())


if __name__ == "__main__":
    main()
