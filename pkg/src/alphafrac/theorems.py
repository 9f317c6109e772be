"""Constructive checks of the classical-style results for the alpha-derivative.

* Rolle / mean-value witnesses: a point ``c`` in ``(a, b)`` with
  ``D^alpha f(c) = 0`` (resp. the fractional secant slope), found by scanning
  a 256-cell grid for a sign change and bisecting the leftmost bracket.
* Rule identities: linearity, product, quotient and chain rule residuals,
  every term estimated separately with the limit estimator.
* Table identities: numeric ``D^alpha`` of a function against its tabulated
  closed form.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable, Iterable, Sequence

from .errors import NoSignChange, NonConvergence, PreconditionViolation
from .expr import as_function, diff_classical, evaluate, parse, substitute
from .numeric import DEFAULT_CONFIG, Alpha, LimitConfig, alpha_deriv_limit
from .symbolic import TableEntry, theorem4_table, theorem5_table

__all__ = [
    "WitnessResult", "find_rolle_point", "find_mvt_point", "mvt_auxiliary",
    "RuleCheck", "RulesReport", "check_rules_batch", "TableCheck", "check_table",
    "SMOOTH_CORPUS", "RULE_PAIRS", "TABLE_GRID",
]

GRID_CELLS = 256

SMOOTH_CORPUS = (
    "t^2", "t^3", "sin(t)", "cos(2*t)", "exp(t/2)", "ln(t)", "sqrt(t)",
    "t^2*sin(t)", "exp(-t)*cos(t)", "1/(1+t^2)",
)

RULE_PAIRS = (
    ("t^2", "sin(t)"),
    ("1", "1"),
    ("sin(t)", "2*sqrt(t)"),
    ("exp(t)", "t^3"),
    ("cos(t)", "t^2+1"),
    ("ln(t)", "exp(t)"),
    ("sqrt(t)", "cos(t)+2"),
    ("t^3-2*t", "exp(-t)"),
)

TABLE_GRID = tuple(0.5 + 0.25 * i for i in range(10))


@dataclass(frozen=True)
class WitnessResult:
    c: float
    residual: float
    bracketing_interval: tuple[float, float]
    iterations: int
    brackets_found: int = 1


def _alpha_value(alpha_value) -> float:
    a = Alpha.coerce(alpha_value)
    if a.n != 0:
        raise ValueError(f"witness search covers 0 < alpha <= 1, got {a.total()}")
    return a.total()


def _witness(dfunc: Callable[[float], tuple[float, float]], a: float, b: float,
             residual: Callable[[float], float]) -> WitnessResult:
    """Leftmost root of ``dfunc`` in ``(a, b)`` by grid scan plus bisection.

    ``dfunc`` returns ``(value, error_estimate)``; grid values within a few
    error estimates of zero count as exact roots.
    """
    xs = [a + (b - a) * i / GRID_CELLS for i in range(GRID_CELLS + 1)]
    raw = [dfunc(x) for x in xs]
    scale = max(1.0, max(abs(v) for v, _ in raw))
    zero_tol = [max(4.0 * e, 1e-12 * scale) for _, e in raw]
    vals = [0.0 if abs(v) <= z else v for (v, _), z in zip(raw, zero_tol)]

    brackets = []
    for i in range(GRID_CELLS):
        if vals[i] == 0.0 and 0 < i:
            brackets.append((i, i))
        elif vals[i] * vals[i + 1] < 0.0:
            brackets.append((i, i + 1))
    if not brackets:
        raise NoSignChange(
            f"no sign change of the derivative on a {GRID_CELLS}-cell grid over "
            f"[{a!r}, {b!r}]; hypotheses may fail or the root is unresolved"
        )

    i, j = brackets[0]
    if i == j:
        c = xs[i]
        return WitnessResult(c, residual(c), (c, c), 0, len(brackets))

    lo, hi = xs[i], xs[j]
    flo = vals[i]
    width = 1e-10 * (b - a)
    iterations = 0
    while hi - lo > width:
        mid = 0.5 * (lo + hi)
        if not lo < mid < hi:
            break
        fm, _ = dfunc(mid)
        iterations += 1
        if fm == 0.0:
            lo = hi = mid
            break
        if (fm < 0.0) == (flo < 0.0):
            lo, flo = mid, fm
        else:
            hi = mid
    c = 0.5 * (lo + hi)
    return WitnessResult(c, residual(c), (lo, hi), iterations, len(brackets))


def _deriv(func, alpha_value: float, cfg: LimitConfig):
    def d(x: float) -> tuple[float, float]:
        est = alpha_deriv_limit(func, x, alpha_value, cfg, check=False)
        if not est.converged:
            raise NonConvergence(f"the alpha-derivative does not settle at x={x!r}", estimate=est)
        return est.value, est.err_estimate
    return d


def find_rolle_point(f, a: float, b: float, alpha_value: float,
                     cfg: LimitConfig = DEFAULT_CONFIG) -> WitnessResult:
    """A point ``c`` in ``(a, b)`` with ``D^alpha f(c) = 0``, given ``f(a) = f(b)``."""
    a, b = float(a), float(b)
    if not 0.0 < a < b:
        raise ValueError(f"need 0 < a < b, got [{a!r}, {b!r}]")
    al = _alpha_value(alpha_value)
    func = as_function(f)
    fa, fb = func(a), func(b)
    if abs(fa - fb) > 1e-9 * max(1.0, abs(fa)):
        raise PreconditionViolation(f"f(a) = {fa!r} differs from f(b) = {fb!r}")
    d = _deriv(func, al, cfg)
    return _witness(d, a, b, lambda c: abs(d(c)[0]))


def mvt_auxiliary(f, a: float, b: float, alpha_value: float) -> tuple[Callable[[float], float], float]:
    """``(g, slope)`` where ``g(x) = f(x) - f(a) - slope * (x^alpha - a^alpha)/alpha``.

    ``slope`` is the secant slope against ``x^alpha/alpha``, so ``g(a) = g(b) = 0``.
    """
    func = as_function(f)
    al = float(alpha_value)
    fa, fb = func(a), func(b)
    ua = a ** al / al
    slope = (fb - fa) / (b ** al / al - ua)

    def g(x: float) -> float:
        return func(x) - fa - slope * (x ** al / al - ua)

    return g, slope


def find_mvt_point(f, a: float, b: float, alpha_value: float,
                   cfg: LimitConfig = DEFAULT_CONFIG) -> WitnessResult:
    """``c`` in ``(a, b)`` with ``D^alpha f(c) = (f(b) - f(a)) / ((b^alpha - a^alpha)/alpha)``.

    Runs the Rolle search on the auxiliary function; the reported residual is
    measured on ``f`` itself.
    """
    a, b = float(a), float(b)
    if not 0.0 < a < b:
        raise ValueError(f"need 0 < a < b, got [{a!r}, {b!r}]")
    al = _alpha_value(alpha_value)
    func = as_function(f)
    g, slope = mvt_auxiliary(func, a, b, al)
    dg = _deriv(g, al, cfg)
    df = _deriv(func, al, cfg)
    return _witness(dg, a, b, lambda c: abs(df(c)[0] - slope))


# ---------------------------------------------------------------------------
# rule identities

_LIN = (2.0, -3.0)


@dataclass(frozen=True)
class RuleCheck:
    pair: int
    f: str
    g: str
    alpha: float
    t: float
    identity: str
    lhs: float
    rhs: float
    residual: float  # |lhs - rhs| / max(1, |lhs|, |rhs|)
    bound: float  # absolute tolerance from the combined error estimates
    ok: bool


@dataclass
class RulesReport:
    checks: list[RuleCheck] = field(default_factory=list)
    skipped: list[tuple[int, float, float, str, str]] = field(default_factory=list)

    @property
    def max_residual(self) -> dict[str, float]:
        out: dict[str, float] = {}
        for c in self.checks:
            out[c.identity] = max(out.get(c.identity, 0.0), c.residual)
        return out

    @property
    def failures(self) -> list[RuleCheck]:
        return [c for c in self.checks if not c.ok]


def _text(e) -> str:
    return e if isinstance(e, str) else str(e)


def check_rules_batch(corpus: Iterable[tuple], alpha_values: Sequence[float],
                      grid: Sequence[float], cfg: LimitConfig = DEFAULT_CONFIG) -> RulesReport:
    """Residuals of the linearity, product, quotient and chain identities.

    Every derivative in an identity is a separate limit estimate of a separate
    function; nothing is rewritten algebraically.  The chain identity treats
    ``f`` as the outer function and is only checked where ``g(t) > 0``; the
    quotient identity is skipped where ``|g(t)| < 1e-6``.
    """
    report = RulesReport()
    c1, c2 = _LIN
    for idx, (f, g) in enumerate(corpus):
        fe = parse(f) if isinstance(f, str) else f
        ge = parse(g) if isinstance(g, str) else g
        comb = parse(f"{c1!r}*({_text(fe)})+{c2!r}*({_text(ge)})")
        prod = parse(f"({_text(fe)})*({_text(ge)})")
        quot = parse(f"({_text(fe)})/({_text(ge)})")
        comp = substitute(fe, ge)
        dfe = diff_classical(fe)
        for al in alpha_values:
            for t in grid:
                def d(e):
                    est = alpha_deriv_limit(e, t, al, cfg, check=False)
                    return est.value, est.err_estimate

                fv, gv = evaluate(fe, t), evaluate(ge, t)
                Df, ef = d(fe)
                Dg, eg = d(ge)

                def record(name, lhs_pair, rhs, rhs_err):
                    lhs, lerr = lhs_pair
                    diff = abs(lhs - rhs)
                    mag = max(1.0, abs(lhs), abs(rhs))
                    bound = 10.0 * (lerr + rhs_err) + cfg.target_rtol * mag
                    report.checks.append(RuleCheck(idx, _text(fe), _text(ge), al, t, name,
                                                   lhs, rhs, diff / mag, bound, diff <= bound))

                record("linearity", d(comb), c1 * Df + c2 * Dg, abs(c1) * ef + abs(c2) * eg)
                record("product", d(prod), fv * Dg + gv * Df, abs(fv) * eg + abs(gv) * ef)
                if abs(gv) >= 1e-6:
                    rhs = (gv * Df - fv * Dg) / gv ** 2
                    record("quotient", d(quot), rhs, (abs(gv) * ef + abs(fv) * eg) / gv ** 2)
                else:
                    report.skipped.append((idx, al, t, "quotient", "|g(t)| < 1e-6"))
                if gv > 0.0:
                    outer = evaluate(dfe, gv)
                    record("chain", d(comp), outer * Dg, abs(outer) * eg)
                else:
                    report.skipped.append((idx, al, t, "chain", "g(t) <= 0"))
    return report


# ---------------------------------------------------------------------------
# tables


@dataclass(frozen=True)
class TableCheck:
    label: str
    function: str
    expected: str
    alpha: float
    max_residual: float  # mixed: |numeric - expected| / max(1, |expected|)
    worst_t: float


def check_table(entries: Sequence[TableEntry], alpha_value: float,
                grid: Sequence[float] = TABLE_GRID,
                cfg: LimitConfig = DEFAULT_CONFIG) -> list[TableCheck]:
    out = []
    for entry in entries:
        worst, worst_t = 0.0, grid[0]
        for t in grid:
            num = alpha_deriv_limit(entry.function, t, alpha_value, cfg).value
            ref = evaluate(entry.expected, t)
            r = abs(num - ref) / max(1.0, abs(ref))
            if r > worst or (r == worst and math.isnan(r)):
                worst, worst_t = r, t
        out.append(TableCheck(entry.label, str(entry.function), str(entry.expected),
                              float(alpha_value), worst, worst_t))
    return out


def table_entries(which: str, alpha_value: float, a: float = 1.0) -> list[TableEntry]:
    if which == "theorem4":
        return theorem4_table(alpha_value, a)
    if which == "theorem5":
        return theorem5_table(alpha_value)
    raise ValueError(f"unknown table {which!r}")
