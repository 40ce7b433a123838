"""Batch command line interface.

Subcommands:
  solve    solve the equation described by a problem file, write a report
  verify   recompute a problem along every alternative route, print a
           pass/fail table
  pinv     (weighted) Moore-Penrose inverse of a matrix file
  det      noncommutative determinants of a matrix file

Exit codes: 0 success, 1 error (parse, dimension, backend, ...), 2 solve
completed but the right-hand side is outside the solvable set (the report
is still written; X is the unique restricted candidate).
"""

from __future__ import annotations

import argparse
import json
import sys
import warnings
from fractions import Fraction
from pathlib import Path

from .errors import NumericalInconsistency, QuatmatError, SolvabilityWarning
from .equations import SolveOptions, solve
from .inverses import (
    WeightedContext,
    mp_inverse,
    penrose_residuals,
    weighted_penrose_residuals,
    wmp_inverse,
)
from .io import load_problem, read_matrix, serialize_matrix, write_matrix, write_report
from .matrices import QMatrix, as_quaternion
from .rowcoldet import cdet, ddet, det_hermitian, rdet
from .scalars import F64, RATIONAL, format_quaternion


def _fail(message):
    print("error: %s" % message, file=sys.stderr)
    return 1


def cmd_solve(args):
    bundle = load_problem(
        args.problem,
        backend=args.backend,
        verification=True if args.verification else None,
        tolerance=args.tolerance,
        threads=args.threads,
    )
    with warnings.catch_warnings(record=True) as caught:
        warnings.simplefilter("always", SolvabilityWarning)
        report = solve(bundle.eq, bundle.options)
    notes = [str(w.message) for w in caught
             if issubclass(w.category, SolvabilityWarning)]
    out = Path(args.output) if args.output else bundle.path.with_suffix(".report.json")
    write_report(report, out, bundle.options, extra={"warnings": notes})
    status = "solvable" if report.solvable else "NOT solvable (restricted candidate)"
    print("wrote %s: %s, residual %.3g, %.3fs"
          % (out, status, report.residual_primary, report.wall_time))
    return 0 if report.solvable else 2


def _check_rows(eq, X, options, expected):
    """The verify battery: (name, passed, detail) rows."""
    from . import adjoint

    backend = X.backend
    rows = []

    def tol(scale=1.0, base=1e-9):
        if options.tolerance is not None:
            return options.tolerance
        return base * max(1.0, scale)

    # 1. every alternative route, via a verification-mode solve
    try:
        with warnings.catch_warnings():
            warnings.simplefilter("ignore", SolvabilityWarning)
            rep = solve(eq, SolveOptions(verification=True,
                                         tolerance=options.tolerance,
                                         threads=options.threads))
        dev = rep.route_deviation or 0.0
        rows.append(("alternative routes agree", True, "max deviation %.3g" % dev))
    except NumericalInconsistency as exc:
        rows.append(("alternative routes agree", False, str(exc)))

    # 2/3. Penrose residuals per side
    for side, ctx in (("A", eq.a_context()), ("B", eq.b_context())):
        if ctx is None:
            continue
        inv = wmp_inverse(ctx=ctx)
        res = weighted_penrose_residuals(ctx.A, inv, ctx.M, ctx.N)
        worst = max(res)
        if backend == RATIONAL:
            ok = all(r == 0 for r in res)
        else:
            ok = worst <= tol(ctx.A.max_abs(), 1e-9)
        rows.append(("%s-side weighted Penrose equations" % side, ok,
                     "max residual %.3g" % worst))

    # 4. independent oracle comparison (always float)
    comp = eq.D.to_float()
    if eq.A is not None:
        comp = adjoint.wpinv_oracle(eq.A, eq.M, eq.N) @ comp
    if eq.B is not None:
        comp = comp @ adjoint.wpinv_oracle(eq.B, eq.P, eq.Q)
    dev = (X.to_float() - comp).max_abs()
    scale = max(1.0, X.to_float().max_abs())
    ok = dev <= (options.tolerance if options.tolerance is not None
                 else 1e-8 * scale)
    rows.append(("complex-adjoint oracle agreement", ok, "deviation %.3g" % dev))

    # 5. expected solution, when the bundle pins one
    if expected is not None:
        if backend == RATIONAL and expected.backend == RATIONAL:
            ok = X == expected
            detail = "bit-exact" if ok else "mismatch"
        else:
            d = (X.to_float() - expected.to_float()).max_abs()
            ok = d <= tol(expected.to_float().max_abs())
            detail = "deviation %.3g" % d
        rows.append(("matches expected X", ok, detail))
    return rows


def cmd_verify(args):
    bundle = load_problem(
        args.problem,
        backend=args.backend,
        tolerance=args.tolerance,
        threads=args.threads,
    )
    with warnings.catch_warnings(record=True) as caught:
        warnings.simplefilter("always", SolvabilityWarning)
        report = solve(bundle.eq, SolveOptions(
            verification=False,
            tolerance=bundle.options.tolerance,
            threads=bundle.options.threads,
        ))
    rows = _check_rows(bundle.eq, report.X, bundle.options, bundle.expected_x)
    width = max(len(name) for name, _, _ in rows)
    for name, ok, detail in rows:
        print("%s  %-*s  %s" % ("PASS" if ok else "FAIL", width, name, detail))
    solv = "yes" if report.solvable else "no (restricted candidate returned)"
    print("info  solvable: %s; ranks %s; profile %s; restriction residual %.3g"
          % (solv, report.ranks, "/".join(str(p) for p in report.hermitian_profile),
             report.restriction_residual))
    return 0 if all(ok for _, ok, _ in rows) else 1


def cmd_pinv(args):
    A = read_matrix(args.matrix)
    if args.backend == F64:
        A = A.to_float()
    elif args.backend == RATIONAL and A.backend != RATIONAL:
        return _fail("matrix is stored as f64; the exact backend cannot recover it")
    M = read_matrix(args.left_weight) if args.left_weight else None
    N = read_matrix(args.right_weight) if args.right_weight else None
    if M is not None and M.backend != A.backend:
        M = M.to_float() if A.backend == F64 else M
    if N is not None and N.backend != A.backend:
        N = N.to_float() if A.backend == F64 else N
    if M is None and N is None:
        X = mp_inverse(A, verify=args.verification)
        res = penrose_residuals(A, X)
        names = ("AXA=A", "XAX=X", "(AX)*=AX", "(XA)*=XA")
    else:
        m, n = A.shape
        M = M if M is not None else QMatrix.identity(m, backend=A.backend)
        N = N if N is not None else QMatrix.identity(n, backend=A.backend)
        ctx = WeightedContext(A, M, N)
        X = wmp_inverse(ctx=ctx, verify=args.verification)
        res = weighted_penrose_residuals(A, X, M, N)
        names = ("AXA=A", "XAX=X", "(MAX)*=MAX", "(NXA)*=NXA")
    out = Path(args.output) if args.output else Path(args.matrix).with_suffix(".pinv.json")
    write_matrix(X, out)
    print("wrote %s" % out)
    for name, r in zip(names, res):
        print("residual %-10s %.3g" % (name, r))
    return 0


def cmd_det(args):
    A = read_matrix(args.matrix)
    if args.backend == F64:
        A = A.to_float()
    elif args.backend == RATIONAL and A.backend != RATIONAL:
        return _fail("matrix is stored as f64; the exact backend cannot recover it")
    mode = args.mode
    if mode == "rdet":
        value = rdet(args.index, A)
    elif mode == "cdet":
        value = cdet(args.index, A)
    elif mode == "hermitian":
        value = det_hermitian(A, verify=args.verification)
    else:
        value = ddet(A, verify=args.verification)
    value = as_quaternion(value, A.backend)  # hermitian/double are real scalars
    print(format_quaternion(value))
    if args.output:
        doc = {
            "mode": mode,
            "index": args.index if mode in ("rdet", "cdet") else None,
            "scalar": A.backend,
            "value": serialize_matrix(QMatrix.from_rows([[value]]))["data"][0],
        }
        with open(args.output, "w", encoding="utf-8") as fh:
            json.dump(doc, fh, indent=1, sort_keys=True)
            fh.write("\n")
    return 0


def _build_parser():
    parser = argparse.ArgumentParser(
        prog="quatmat",
        description="Quaternion matrix equations by noncommutative Cramer rules.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, tolerance=True):
        p.add_argument("--backend", choices=[RATIONAL, F64], default=None,
                       help="force a scalar backend (default: as stored)")
        p.add_argument("--verification", action="store_true",
                       help="recompute along alternative routes and compare")
        p.add_argument("--threads", type=int, default=None,
                       help="worker threads for independent entries (default 1)")
        if tolerance:
            p.add_argument("--tolerance", type=float, default=None,
                           help="override float comparison tolerances")
        p.add_argument("--output", default=None, help="output file path")

    p = sub.add_parser("solve", help="solve a problem file, write a report")
    p.add_argument("problem", help="problem file (JSON)")
    common(p)
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("verify", help="run every cross-check on a problem file")
    p.add_argument("problem", help="problem file (JSON)")
    common(p)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("pinv", help="(weighted) Moore-Penrose inverse of a matrix file")
    p.add_argument("matrix", help="matrix file (JSON)")
    p.add_argument("-M", "--left-weight", default=None,
                   help="left HPD weight matrix file")
    p.add_argument("-N", "--right-weight", default=None,
                   help="right HPD weight matrix file")
    common(p)
    p.set_defaults(func=cmd_pinv)

    p = sub.add_parser("det", help="noncommutative determinants of a matrix file")
    p.add_argument("matrix", help="matrix file (JSON)")
    p.add_argument("--mode", choices=["rdet", "cdet", "hermitian", "double"],
                   default="rdet")
    p.add_argument("--index", type=int, default=1,
                   help="row (rdet) or column (cdet) leading index, 1-based")
    common(p, tolerance=False)
    p.set_defaults(func=cmd_det)
    return parser


def main(argv=None):
    args = _build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (QuatmatError, ValueError, KeyError, OSError,
            json.JSONDecodeError) as exc:
        return _fail(exc)


if __name__ == "__main__":
    sys.exit(main())
