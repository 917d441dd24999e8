"""Command-line interface: ``vmfkappa {estimate,solve,verify,sample}``.

Results go to stdout (JSON unless ``--output-format`` says otherwise).  Any
failure prints one JSON object ``{"code": ..., "message": ...}`` on stderr
and exits with

    2  invalid flags or input
    3  degenerate data (zero resultant or rbar = 1)
    4  solver or continued fraction did not converge
    5  a verified inequality failed numerically
    6  I/O error
"""

import argparse
import json
import logging
import math
import os
import sys
from pathlib import Path

import numpy as np

from . import inequality_lab, kappa_solver, vmf_data
from .errors import VmfKappaError

EXIT_USAGE = 2
EXIT_VERIFY = 5
EXIT_IO = 6


class UsageError(VmfKappaError):
    code = "usage_error"
    exit_code = EXIT_USAGE


class VerificationFailed(VmfKappaError):
    code = "verification_failed"
    exit_code = EXIT_VERIFY


class OutputError(VmfKappaError):
    code = "io_error"
    exit_code = EXIT_IO


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _positive_float(text):
    try:
        v = float(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a number: {text!r}") from None
    if not (math.isfinite(v) and v > 0):
        raise argparse.ArgumentTypeError(f"must be a finite positive number: {text!r}")
    return v


def _positive_int(text):
    try:
        v = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}") from None
    if v < 1:
        raise argparse.ArgumentTypeError(f"must be >= 1: {text!r}")
    return v


def _float_list(text):
    try:
        return [float(t) for t in text.split(",")]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated numbers: {text!r}") from None


def _method(text):
    return text.replace("-", "_")


def build_parser():
    shared = argparse.ArgumentParser(add_help=False)
    shared.add_argument("--tol-x", type=_positive_float, default=1e-12)
    shared.add_argument("--tol-residual", type=_positive_float, default=1e-12)
    shared.add_argument("--max-iter", type=_positive_int, default=500)
    shared.add_argument("--trace", action="store_true", help="include iterates in the output")
    shared.add_argument("--output-format", choices=("json", "csv", "plain"), default="json")

    parser = _Parser(prog="vmfkappa", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("estimate", parents=[shared], help="fit (mu, kappa) to unit vectors")
    p.add_argument("--input", default="-", help="sample file, '-' for stdin")
    p.add_argument("--format", choices=("csv", "json"), default=None,
                   help="input format (default: from extension, else csv)")
    p.add_argument("--skip-header", action="store_true")
    p.add_argument("--normalize", action="store_true", help="scale rows to unit norm")
    p.add_argument("--method", type=_method, choices=(kappa_solver.FIXED_POINT, kappa_solver.BRACKET),
                   default=kappa_solver.FIXED_POINT)

    p = sub.add_parser("solve", parents=[shared], help="solve I_nu(k)/I_{nu-1}(k) = rbar")
    g = p.add_mutually_exclusive_group(required=True)
    g.add_argument("--p", type=int)
    g.add_argument("--nu", type=_positive_float)
    p.add_argument("--rbar", type=float, required=True)
    p.add_argument("--x0", type=_positive_float, default=None, help="starting point")
    p.add_argument("--method", type=_method, choices=("auto", kappa_solver.FIXED_POINT, kappa_solver.BRACKET),
                   default="auto")

    p = sub.add_parser("verify", parents=[shared], help="sweep Turan-type inequalities")
    g = p.add_mutually_exclusive_group(required=True)
    g.add_argument("--inequality", choices=sorted(inequality_lab.INEQUALITIES))
    g.add_argument("--all", action="store_true")
    p.add_argument("--nu", type=_float_list, default=None, help="comma-separated orders")
    p.add_argument("--nu-min", type=float, default=None)
    p.add_argument("--nu-max", type=float, default=None)
    p.add_argument("--x-min", type=_positive_float, default=1e-4)
    p.add_argument("--x-max", type=_positive_float, default=1e4)
    p.add_argument("--per-decade", type=_positive_int, default=40)
    p.add_argument("--out-dir", default=".", help="directory for CSV and JSON reports")
    p.add_argument("--workers", type=_positive_int, default=1)

    p = sub.add_parser("sample", parents=[shared], help="draw vMF samples as CSV")
    p.add_argument("--p", type=int, default=None)
    p.add_argument("--kappa", type=float, required=True)
    p.add_argument("--mu", type=_float_list, default=None, help="mean direction, default e1")
    p.add_argument("--n", type=_positive_int, required=True)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--output", default="-", help="CSV path, '-' for stdout")
    return parser


def _options(args, x0=None):
    return kappa_solver.SolverOptions(args.tol_x, args.tol_residual, args.max_iter, x0)


def _emit(payload, fmt, out):
    if fmt == "json":
        out.write(json.dumps(payload) + "\n")
    elif fmt == "csv":
        scalars = {k: v for k, v in payload.items() if not isinstance(v, (list, dict))}
        out.write(",".join(scalars) + "\n")
        out.write(",".join(repr(v) if isinstance(v, float) else str(v) for v in scalars.values()) + "\n")
    else:
        for k, v in payload.items():
            out.write(f"{k}: {v}\n")


def cmd_estimate(args, out):
    fmt = args.format
    if fmt is None:
        fmt = "json" if args.input.lower().endswith(".json") else "csv"
    try:
        if args.input == "-":
            data = sys.stdin.buffer.read()
        else:
            data = Path(args.input).read_bytes()
    except OSError as exc:
        raise UsageError(f"cannot read {args.input}: {exc.strerror}") from None
    samples = vmf_data.load_samples(data, fmt, args.normalize, args.skip_header)
    fit = vmf_data.fit_mle(samples, _options(args), args.method)
    _emit(fit.to_dict(), args.output_format, out)
    return 0


def cmd_solve(args, out):
    if args.p is not None:
        prob = kappa_solver.EstimationProblem(args.rbar, p=args.p)
    else:
        prob = kappa_solver.EstimationProblem(args.rbar, nu=args.nu)
    method = None if args.method == "auto" else args.method
    res = kappa_solver.solve(prob, _options(args, args.x0), method)
    _emit(res.to_dict(include_trace=args.trace), args.output_format, out)
    return 0


def _verify_grid(args):
    nus = tuple(args.nu) if args.nu else inequality_lab.DEFAULT_NU
    lo = -math.inf if args.nu_min is None else args.nu_min
    hi = math.inf if args.nu_max is None else args.nu_max
    nus = tuple(v for v in nus if lo <= v <= hi)
    if args.x_max <= args.x_min:
        raise UsageError("--x-max must exceed --x-min")
    xs = inequality_lab.log_grid(args.x_min, args.x_max, args.per_decade)
    return inequality_lab.SweepGrid(nus, xs)


def cmd_verify(args, out):
    grid = _verify_grid(args)
    if args.all:
        ids = inequality_lab.ASSERTED + inequality_lab.REFUTED
    else:
        ids = (args.inequality,)

    reports = []
    for iid in ids:
        g = grid
        ineq = inequality_lab.INEQUALITIES[iid]
        if args.all and not all(ineq.admits(nu) for nu in grid.nu_values):
            # --all applies each inequality on the part of the grid it covers
            g = inequality_lab.SweepGrid(
                [nu for nu in grid.nu_values if ineq.admits(nu)], grid.x_values
            )
        reports.append(inequality_lab.sweep(iid, g, workers=args.workers))

    out_dir = Path(args.out_dir)
    try:
        out_dir.mkdir(parents=True, exist_ok=True)
        stem = "all" if args.all else args.inequality
        with open(out_dir / f"verify_{stem}.csv", "w", newline="") as fh:
            for i, rep in enumerate(reports):
                rep.write_csv(fh, header=(i == 0))
        summary = {rep.inequality_id: rep.summary() for rep in reports}
        (out_dir / f"verify_{stem}.json").write_text(json.dumps(summary, indent=2) + "\n")
    except OSError as exc:
        raise OutputError(f"cannot write reports to {out_dir}: {exc.strerror}") from None

    failed = [r.inequality_id for r in reports
              if r.inequality_id in inequality_lab.ASSERTED and r.counterexamples]
    unrefuted = [r.inequality_id for r in reports
                 if r.inequality_id in inequality_lab.REFUTED and not r.counterexamples]
    result = {"passed": not failed and not unrefuted, "failed": failed,
              "unrefuted": unrefuted, "reports": summary}
    if args.output_format == "json":
        out.write(json.dumps(result) + "\n")
    else:
        for s in summary.values():
            out.write(f"{s['inequality_id']}: {s['points']} points, "
                      f"{s['counterexamples']} counterexamples, min margin {s['min_margin']:.3e}\n")
    if failed or unrefuted:
        raise VerificationFailed(
            f"inequalities failing numerically: {failed}; "
            f"expected counterexamples not found: {unrefuted}"
        )
    return 0


def cmd_sample(args, out):
    if args.mu is not None:
        mu = np.array(args.mu)
        if args.p is not None and args.p != mu.size:
            raise UsageError(f"--mu has {mu.size} components but --p is {args.p}")
        norm = np.linalg.norm(mu)
        if norm == 0:
            raise UsageError("--mu must be non-zero")
        mu = mu / norm
    else:
        if args.p is None:
            raise UsageError("give --p or --mu")
        if args.p < 2:
            raise UsageError(f"--p must be >= 2, got {args.p}")
        mu = np.zeros(args.p)
        mu[0] = 1.0
    samples = vmf_data.sample_vmf(mu, args.kappa, args.n, args.seed)
    text = samples.to_csv()
    if args.output == "-":
        out.write(text)
    else:
        try:
            Path(args.output).write_text(text)
        except OSError as exc:
            raise OutputError(f"cannot write {args.output}: {exc.strerror}") from None
    return 0


COMMANDS = {
    "estimate": cmd_estimate,
    "solve": cmd_solve,
    "verify": cmd_verify,
    "sample": cmd_sample,
}


def main(argv=None, out=None, err=None):
    out = out or sys.stdout
    err = err or sys.stderr
    level = os.environ.get("VMFK_LOG", "WARNING").upper()
    logging.basicConfig(level=getattr(logging, level, logging.WARNING), stream=err)
    try:
        args = build_parser().parse_args(argv)
        return COMMANDS[args.command](args, out)
    except VmfKappaError as exc:
        err.write(json.dumps(exc.to_dict()) + "\n")
        return exc.exit_code


if __name__ == "__main__":
    sys.exit(main())
