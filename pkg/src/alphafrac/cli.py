"""Command-line front end: ``python -m alphafrac <command> [flags]``.

Commands: deriv, integ, check, rolle, mvt, table, plot.  Exit status is 0 on
success, 2 on a usage error and 1 on a numerical failure, which is reported
on stderr as ``ERROR <Kind>: message``.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import sys
from dataclasses import asdict

from .errors import AlphaFracError
from .expr import evaluate, parse
from .integral import alpha_integral, check_inverse
from .numeric import DEFAULT_CONFIG, INF, Alpha, alpha_deriv
from .symbolic import alpha_deriv_closed, higher_closed
from .theorems import (
    RULE_PAIRS, TABLE_GRID, check_rules_batch, check_table, find_mvt_point,
    find_rolle_point, table_entries,
)

RULES_GRID = (0.3, 0.7, 1.0, 2.0, 3.0)
RULES_ALPHAS = (0.25, 0.5, 0.75)
PLOT_HEADER = ("t", "deriv_numeric", "deriv_closed", "abs_diff")


class UsageError(Exception):
    pass


def _k(text: str):
    if text.lower() in ("inf", "infinity"):
        return INF
    try:
        return int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected an integer or 'inf', got {text!r}")


def _num(x: float) -> str:
    return format(x, ".17g")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="alphafrac", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, *, expr=True):
        if expr:
            p.add_argument("--expr", required=True, help="function of t, e.g. 't^2*sin(t)'")
        p.add_argument("--format", choices=("text", "csv", "json"), default="text")
        p.add_argument("--out", help="write output here instead of stdout")
        p.add_argument("--tol", type=float, help="estimator target_rtol / quadrature tolerance")

    p = sub.add_parser("deriv", help="alpha-derivative at a point")
    common(p)
    p.add_argument("--alpha", type=float, required=True)
    p.add_argument("--at", type=float, required=True)
    p.add_argument("--k", type=_k, default=INF, help="truncation order of the exponential (default inf)")

    p = sub.add_parser("integ", help="alpha-integral from a to t")
    common(p)
    p.add_argument("--alpha", type=float, required=True)
    p.add_argument("--a", type=float, default=0.0)
    p.add_argument("--at", type=float, help="upper limit t")
    p.add_argument("--b", type=float, help="upper limit, alias of --at")

    p = sub.add_parser("check", help="rule identities or the derivative-of-integral check")
    common(p, expr=False)
    p.add_argument("--which", choices=("rules", "inverse"), default="rules")
    p.add_argument("--expr")
    p.add_argument("--alpha", type=float)
    p.add_argument("--a", type=float, default=0.0)
    p.add_argument("--at", type=float)

    for name, help_ in (("rolle", "Rolle witness point"), ("mvt", "mean-value witness point")):
        p = sub.add_parser(name, help=help_)
        common(p)
        p.add_argument("--alpha", type=float, required=True)
        p.add_argument("--a", type=float, required=True)
        p.add_argument("--b", type=float, required=True)

    p = sub.add_parser("table", help="verify the built-in derivative tables")
    common(p, expr=False)
    p.add_argument("--alpha", type=float, required=True)
    p.add_argument("--which", choices=("theorem4", "theorem5"), required=True)
    p.add_argument("--a", type=float, default=1.0, help="coefficient a in exp(a t), sin(a t), cos(a t)")
    p.add_argument("--from", dest="lo", type=float)
    p.add_argument("--to", dest="hi", type=float)
    p.add_argument("--n", type=int, default=10)

    p = sub.add_parser("plot", help="grid of numeric vs closed-form derivative values")
    common(p)
    p.add_argument("--alpha", type=float, required=True)
    p.add_argument("--from", dest="lo", type=float, required=True)
    p.add_argument("--to", dest="hi", type=float, required=True)
    p.add_argument("--n", type=int, default=50)
    p.add_argument("--k", type=_k, default=INF)
    return parser


def _grid(lo: float, hi: float, n: int) -> list[float]:
    if n < 1:
        raise UsageError("--n must be at least 1")
    if n == 1:
        return [lo]
    return [lo + (hi - lo) * i / (n - 1) for i in range(n)]


def _cfg(args):
    return DEFAULT_CONFIG if args.tol is None else DEFAULT_CONFIG.with_(target_rtol=args.tol)


def _emit_rows(rows: list[dict], fmt: str) -> str:
    if fmt == "json":
        return json.dumps(rows, indent=2) + "\n"
    buf = io.StringIO()
    if not rows:
        return ""
    fields = list(rows[0])
    if fmt == "csv":
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(fields)
        for r in rows:
            w.writerow([_num(v) if isinstance(v, float) else v for v in r.values()])
        return buf.getvalue()
    for r in rows:
        buf.write("  ".join(f"{k}={_num(v) if isinstance(v, float) else v}" for k, v in r.items()))
        buf.write("\n")
    return buf.getvalue()


def _cmd_deriv(args) -> str:
    est = alpha_deriv(args.expr, args.at, args.alpha, _cfg(args), k=args.k)
    if args.format == "text":
        return f"{_num(est.value)} ± {est.err_estimate:.3g}\n"
    row = {"t": args.at, "alpha": args.alpha, "value": est.value,
           "err_estimate": est.err_estimate, "levels_used": est.levels_used,
           "converged": est.converged, "continuity_residual": est.continuity_residual}
    return _emit_rows([row], args.format)


def _cmd_integ(args) -> str:
    upper = args.at if args.at is not None else args.b
    if upper is None:
        raise UsageError("integ needs an upper limit (--at or --b)")
    tol = 1e-12 if args.tol is None else args.tol
    res = alpha_integral(args.expr, args.a, upper, args.alpha, tol)
    if args.format == "text":
        return f"{_num(res.value)} ± {res.err_estimate:.3g}\n"
    return _emit_rows([{"a": args.a, "t": upper, "alpha": args.alpha, **asdict(res)}], args.format)


def _cmd_check(args) -> str:
    cfg = _cfg(args)
    if args.which == "inverse":
        if args.expr is None or args.alpha is None or args.at is None:
            raise UsageError("check --which inverse needs --expr, --alpha and --at")
        tol = 1e-13 if args.tol is None else args.tol
        r = check_inverse(args.expr, args.a, args.at, args.alpha, cfg, tol)
        row = {"expr": args.expr, "a": args.a, "t": args.at, "alpha": args.alpha, "residual": r}
        return _emit_rows([row], args.format)
    alphas = RULES_ALPHAS if args.alpha is None else (args.alpha,)
    report = check_rules_batch(RULE_PAIRS, alphas, RULES_GRID, cfg)
    fails = report.failures
    rows = [{"identity": k, "max_residual": v,
             "checks": sum(1 for c in report.checks if c.identity == k),
             "failures": sum(1 for c in fails if c.identity == k)}
            for k, v in report.max_residual.items()]
    return _emit_rows(rows, args.format)


def _cmd_witness(args) -> str:
    finder = find_rolle_point if args.command == "rolle" else find_mvt_point
    w = finder(args.expr, args.a, args.b, args.alpha, _cfg(args))
    row = {"c": w.c, "residual": w.residual, "lo": w.bracketing_interval[0],
           "hi": w.bracketing_interval[1], "iterations": w.iterations,
           "brackets_found": w.brackets_found}
    return _emit_rows([row], args.format)


def _cmd_table(args) -> str:
    if args.lo is None and args.hi is None:
        grid = list(TABLE_GRID)
    else:
        if args.lo is None or args.hi is None:
            raise UsageError("give both --from and --to")
        grid = _grid(args.lo, args.hi, args.n)
    entries = table_entries(args.which, args.alpha, args.a)
    checks = check_table(entries, args.alpha, grid, _cfg(args))
    return _emit_rows([asdict(c) for c in checks], args.format)


def plot_rows(expr: str, alpha: float, lo: float, hi: float, n: int, k=INF,
              cfg=DEFAULT_CONFIG) -> list[dict]:
    f = parse(expr)
    a = Alpha.of(alpha)
    closed = alpha_deriv_closed(f, alpha) if a.n == 0 else higher_closed(f, a)
    rows = []
    for t in _grid(lo, hi, n):
        num = alpha_deriv(f, t, a, cfg, k=k).value
        ref = evaluate(closed, t)
        rows.append({"t": t, "deriv_numeric": num, "deriv_closed": ref, "abs_diff": abs(num - ref)})
    return rows


def _cmd_plot(args) -> str:
    if not args.hi > args.lo or args.lo <= 0:
        raise UsageError("plot needs 0 < --from < --to")
    rows = plot_rows(args.expr, args.alpha, args.lo, args.hi, args.n, args.k, _cfg(args))
    return _emit_rows(rows, args.format)


_COMMANDS = {
    "deriv": _cmd_deriv,
    "integ": _cmd_integ,
    "check": _cmd_check,
    "rolle": _cmd_witness,
    "mvt": _cmd_witness,
    "table": _cmd_table,
    "plot": _cmd_plot,
}


def run(argv=None, stdout=None, stderr=None) -> int:
    stdout = sys.stdout if stdout is None else stdout
    stderr = sys.stderr if stderr is None else stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    if args.alpha is not None and not (math.isfinite(args.alpha) and args.alpha > 0):
        print(f"{parser.prog}: error: --alpha must be a positive number", file=stderr)
        return 2
    try:
        text = _COMMANDS[args.command](args)
    except UsageError as exc:
        print(f"{parser.prog}: error: {exc}", file=stderr)
        return 2
    except AlphaFracError as exc:
        print(f"ERROR {exc.kind}: {exc}", file=stderr)
        return 1
    except (ValueError, ArithmeticError) as exc:
        print(f"ERROR {type(exc).__name__}: {exc}", file=stderr)
        return 1
    if args.out:
        with open(args.out, "w", newline="") as fh:
            fh.write(text)
    else:
        stdout.write(text)
    return 0


def main() -> None:
    sys.exit(run())
