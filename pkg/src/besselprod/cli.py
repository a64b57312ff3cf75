"""Command-line front end.

Exit codes: 0 success (all checks hold), 1 at least one violated verdict,
2 indeterminate results but no violation, 3 usage or domain error.
"""
from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path
from typing import Optional, Sequence

from . import bounds, explore, figures, verify
from .bounds import InequalityId, Verdict
from .errors import BesselProdError, BracketError, DomainError, UsageError
from .specfun import BesselFamily, bessel, gamma_fn, log_derivative, product_ik

EXIT_OK = 0
EXIT_VIOLATED = 1
EXIT_INDETERMINATE = 2
EXIT_USAGE = 3

EVAL_FUNCTIONS = ("product", "J", "I", "K", "L", "gamma", "logderiv-I", "logderiv-K",
                  "f", "q", "g", "tail", "cal-p")


def fmt(v) -> str:
    """Numbers with 15 significant digits."""
    if isinstance(v, float):
        return format(v, ".15g")
    return str(v)


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        raise UsageError(f"{self.prog}: {message}")


def _verdict_code(verdicts) -> int:
    verdicts = list(verdicts)
    if Verdict.VIOLATED in verdicts:
        return EXIT_VIOLATED
    if Verdict.INDETERMINATE in verdicts:
        return EXIT_INDETERMINATE
    return EXIT_OK


def _write(path: Optional[str], text: str, out) -> None:
    if path is None:
        out.write(text if text.endswith("\n") else text + "\n")
        return
    try:
        Path(path).write_text(text)
    except OSError as exc:
        raise UsageError(f"cannot write {path}: {exc}") from None


# ------------------------------------------------------------------- eval

def cmd_eval(args, out) -> int:
    name = args.function
    nu, x = args.nu, args.x
    if x is None:
        raise UsageError("eval needs --x")
    if name == "gamma":
        r = gamma_fn(x, log_scale=args.log)
        value, err = r.unscaled(), r.abs_err
    elif name in ("J", "I", "K", "L"):
        _need(nu, "--nu")
        r = bessel(BesselFamily(name), nu, x, scaled=args.scaled)
        value, err = r.value, r.abs_err
        if r.scaled:
            out.write(f"scale_exponent {fmt(r.scale_exponent)}\n")
    elif name == "product":
        _need(nu, "--nu")
        r = product_ik(nu, args.mu if args.mu is not None else nu, x)
        value, err = r.unscaled(), r.abs_err
    elif name in ("logderiv-I", "logderiv-K"):
        _need(nu, "--nu")
        r = log_derivative(name[-1], nu, x)
        value, err = r.value, r.abs_err
    else:
        _need(nu, "--nu")
        fn = {"f": bounds.f_shifted_log, "q": bounds.q_ratio, "g": bounds.g_nu,
              "tail": bounds.tail_gap, "cal-p": bounds.cal_p}[name]
        value, err = fn(nu, x), None
    if args.format == "json":
        out.write(json.dumps({"function": name, "nu": nu, "mu": args.mu, "x": x, "value": value,
                              "abs_err": err}) + "\n")
    else:
        out.write(fmt(value) + "\n")
        if err is not None and args.verbose:
            out.write(f"abs_err {fmt(err)}\n")
    return EXIT_OK


def _need(v, flag):
    if v is None:
        raise UsageError(f"missing {flag}")


# ------------------------------------------------------------------- bound

def cmd_bound(args, out) -> int:
    mu = args.mu if args.mu is not None else bounds.UNUSED
    rec = bounds.check_inequality(args.id, args.nu, mu, args.x)
    if args.format == "json":
        out.write(json.dumps({k: verify._json_num(v) for k, v in rec.to_dict().items()}) + "\n")
    elif args.format == "csv":
        out.write(verify.records_to_csv([rec]))
    else:
        out.write(f"{rec.id.value} {rec.part}: lhs {fmt(rec.lhs)} rhs {fmt(rec.rhs)} "
                  f"margin {fmt(rec.margin)} err {fmt(rec.err)} -> {rec.verdict.value}\n")
    return _verdict_code([rec.verdict])


# ------------------------------------------------------------------ verify

def _axis(args, name, required=True) -> Optional[verify.Axis]:
    values = getattr(args, name)
    lo, hi, count = getattr(args, f"{name}_min"), getattr(args, f"{name}_max"), getattr(args, f"{name}_count")
    log = getattr(args, f"{name}_log")
    if values:
        if lo is not None or hi is not None:
            raise UsageError(f"give either --{name} values or a --{name}-min/--{name}-max range, not both")
        return verify.Axis.of(values)
    if lo is not None or hi is not None:
        if lo is None or hi is None:
            raise UsageError(f"--{name}-min and --{name}-max go together")
        return verify.Axis.range(lo, hi, count or 20, "log" if log else "linear")
    if required:
        raise UsageError(f"missing --{name} (values) or --{name}-min/--{name}-max")
    return None


def cmd_verify(args, out) -> int:
    if args.suite:
        ids = list(InequalityId) if args.id in (None, "all") else [InequalityId(args.id)]
        grids = verify.load_default_grids()
        reports = [verify.sweep(i, grids[i]) for i in ids]
    else:
        if args.id in (None, "all"):
            raise UsageError("verify needs --id (or --suite for the default grids)")
        ident = InequalityId(args.id)
        x_axis = _axis(args, "x", required=False)
        if x_axis is None:
            x_axis = verify.Axis.range(verify.default_x_min(), 1.0, 20, "log")
        grid = verify.SweepGrid(_axis(args, "nu"), x_axis, _axis(args, "mu", required=False))
        reports = [verify.sweep(ident, grid)]
    for rep in reports:
        line = (f"{rep.id.value}: holds {rep.n_holds} violated {rep.n_violated} "
                f"indeterminate {rep.n_indeterminate} skipped {rep.n_skipped_domain} "
                f"min_margin {fmt(rep.min_margin)}")
        if rep.argmin is not None:
            line += " at (nu, mu, x) = (" + ", ".join(fmt(v) for v in rep.argmin) + ")"
        (sys.stderr if args.out is None and args.format else out).write(line + "\n")
    if args.out is not None or args.format:
        text = _verify_payload(reports, args.format or "csv")
        _write(args.out, text, out)
        if args.out is not None and args.plot:
            records = [r for rep in reports for r in rep.records]
            figures.render_margins(str(Path(args.out).with_suffix(".png")), records,
                                   ", ".join(rep.id.value for rep in reports))
    return _verdict_code(rep.worst_verdict for rep in reports)


def _verify_payload(reports, fmt_name) -> str:
    if fmt_name == "json":
        if len(reports) == 1:
            return reports[0].to_json(indent=1)
        return json.dumps({"reports": [r.to_dict() for r in reports],
                           "registry": bounds.registry_table()}, indent=1)
    return verify.records_to_csv([r for rep in reports for r in rep.records])


# ----------------------------------------------------------------- figure1

def cmd_figure1(out_path: str, format: str, x_min: float = figures.FIGURE1_X_MIN) -> int:
    """Write the q_nu curves as CSV (500 rows) or as an SVG/PNG line chart."""
    try:
        _render_figure1(out_path, format, x_min)
    except UsageError as exc:
        sys.stderr.write(f"error: {exc}\n")
        return EXIT_USAGE
    return EXIT_OK


def _render_figure1(out_path, format, x_min):
    if format not in ("csv", "svg", "png"):
        raise UsageError(f"figure1 format must be csv, svg or png, got {format!r}")
    xs, cols = figures.figure1_data(x_min)
    if format == "csv":
        _write(out_path, figures.figure1_csv(xs, cols), sys.stdout)
        return
    try:
        figures.render_figure1(out_path, format, xs, cols)
    except OSError as exc:
        raise UsageError(f"cannot write {out_path}: {exc}") from None


def _figure1(args, out) -> int:
    fmt_name = args.format or (Path(args.out).suffix.lstrip(".") or "csv")
    return cmd_figure1(args.out, fmt_name, args.x_min)


# ----------------------------------------------------------------- explore

def cmd_explore(args, out) -> int:
    star = circ = None
    try:
        if args.target in ("nu_star", "both"):
            star = explore.find_nu_star(args.tol, args.x_min)
        if args.target in ("nu_circ", "both"):
            circ = explore.find_nu_circ(args.tol, args.x_min)
    except BracketError as exc:
        sys.stderr.write(f"bracket error: {exc}\n")
        return EXIT_INDETERMINATE
    for name, ex in (("nu_star", star), ("nu_circ", circ)):
        if ex is not None:
            b = ex.bracket
            out.write(f"{name}: [{fmt(b.lo)}, {fmt(b.hi)}] criterion {ex.criterion} "
                      f"epsilon {fmt(ex.epsilon)} x_min {fmt(ex.x_min)}\n")
    if star is not None and circ is not None:
        out.write(f"brackets overlap: {explore.compare(star, circ)['overlap']}\n")
    if args.out is not None:
        _write(args.out, explore.exploration_report(star, circ), out)
    return EXIT_OK


# ------------------------------------------------------------------ parser

def _add_axis(p, name, label):
    p.add_argument(f"--{name}", type=float, nargs="+", help=f"explicit {label} values")
    p.add_argument(f"--{name}-min", type=float, dest=f"{name}_min")
    p.add_argument(f"--{name}-max", type=float, dest=f"{name}_max")
    p.add_argument(f"--{name}-count", type=int, dest=f"{name}_count")
    p.add_argument(f"--{name}-log", action="store_true", dest=f"{name}_log",
                   help=f"log spacing for the {label} range")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="besselprod", description="Bessel products, bounds and Turan-type inequalities.")
    sub = parser.add_subparsers(dest="command", parser_class=_Parser)
    sub.required = True

    p = sub.add_parser("eval", help="evaluate a function")
    p.add_argument("function", choices=EVAL_FUNCTIONS)
    p.add_argument("--nu", type=float)
    p.add_argument("--mu", type=float, help="order of I in 'product' (defaults to --nu)")
    p.add_argument("--x", type=float)
    p.add_argument("--scaled", action="store_true")
    p.add_argument("--log", action="store_true", help="log-gamma")
    p.add_argument("--format", choices=("text", "json"), default="text")
    p.add_argument("-v", "--verbose", action="store_true", help="also print the error estimate")
    p.set_defaults(handler=cmd_eval)

    p = sub.add_parser("bound", help="check one inequality at one point")
    p.add_argument("--id", required=True, choices=[i.value for i in InequalityId])
    p.add_argument("--nu", type=float, required=True)
    p.add_argument("--mu", type=float)
    p.add_argument("--x", type=float, required=True)
    p.add_argument("--format", choices=("text", "json", "csv"), default="text")
    p.set_defaults(handler=cmd_bound)

    p = sub.add_parser("verify", help="sweep an inequality over a grid")
    p.add_argument("--id", choices=[i.value for i in InequalityId] + ["all"])
    p.add_argument("--suite", action="store_true", help="use the shipped default grid(s)")
    _add_axis(p, "nu", "order")
    _add_axis(p, "mu", "second order")
    _add_axis(p, "x", "argument")
    p.add_argument("--out")
    p.add_argument("--format", choices=("csv", "json"))
    p.add_argument("--plot", action=argparse.BooleanOptionalAction, default=True,
                   help="render a margin plot next to --out")
    p.set_defaults(handler=cmd_verify)

    p = sub.add_parser("figure1", help="q_nu curves for the eight reference orders")
    p.add_argument("--out", required=True)
    p.add_argument("--format", choices=("csv", "svg", "png"))
    p.add_argument("--x-min", type=float, default=figures.FIGURE1_X_MIN, dest="x_min")
    p.set_defaults(handler=_figure1)

    p = sub.add_parser("explore", help="bracket the threshold orders nu* and nu°")
    p.add_argument("--target", choices=("nu_star", "nu_circ", "both"), default="both")
    p.add_argument("--tol", type=float, default=0.01)
    p.add_argument("--x-min", type=float, dest="x_min")
    p.add_argument("--out")
    p.add_argument("--format", choices=("json",), default="json")
    p.set_defaults(handler=cmd_explore)
    return parser


def run(argv: Optional[Sequence[str]] = None, out=None) -> int:
    out = sys.stdout if out is None else out
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        return args.handler(args, out)
    except SystemExit as exc:  # --help
        return EXIT_OK if exc.code in (0, None) else EXIT_USAGE
    except (UsageError, DomainError) as exc:
        sys.stderr.write(f"error: {exc}\n")
        return EXIT_USAGE
    except BesselProdError as exc:
        sys.stderr.write(f"error: {exc}\n")
        return EXIT_INDETERMINATE


def main() -> None:
    sys.exit(run())

