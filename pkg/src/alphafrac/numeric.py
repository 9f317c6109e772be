"""Limit-definition estimators for the alpha-fractional derivative.

For ``0 < alpha <= 1`` the operator is

    D^alpha f(t) = lim_{eps -> 0} [f(t * exp(eps * t**-alpha)) - f(t)] / eps,

and replacing ``exp`` by its order-``k`` Taylor polynomial gives the family
``D_k^alpha`` (``k = 1`` is the conformable derivative).  All estimators share
one engine: difference quotients on a geometric ``eps`` schedule fed into a
Neville/Richardson tableau, keeping the entry with the smallest tableau
increment (Ridders' strategy).

For differentiable ``f`` every member equals ``t**(1 - alpha) * f'(t)``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field, replace
from typing import Callable, Union

from .errors import InvalidK, NonConvergence
from .expr import Expr, as_function, nth_diff, parse

__all__ = [
    "Alpha", "LimitConfig", "DerivEstimate", "INF",
    "truncated_exp", "alpha_deriv_limit", "alpha_deriv_at_zero",
    "alpha_deriv_k", "alpha_deriv_higher", "alpha_deriv",
]

INF = math.inf
"""Marker for the untruncated exponential, ``k = INF``."""

_SAFE = 2.0
_MACHEPS = 2.220446049250313e-16


@dataclass(frozen=True)
class Alpha:
    """Order ``alpha = n + beta`` with integer part ``n >= 0`` and ``0 < beta <= 1``.

    So ``alpha`` always lies in ``(n, n + 1]``; ``Alpha.of(1.0)`` is ``(0, 1)``.
    """

    n: int
    beta: float

    def __post_init__(self):
        if int(self.n) != self.n or self.n < 0:
            raise ValueError(f"integer part must be a non-negative integer, got {self.n!r}")
        if not 0.0 < self.beta <= 1.0:
            raise ValueError(f"residue must lie in (0, 1], got {self.beta!r}")
        object.__setattr__(self, "n", int(self.n))
        object.__setattr__(self, "beta", float(self.beta))

    @classmethod
    def of(cls, value: float) -> Alpha:
        if not value > 0.0:
            raise ValueError(f"order must be positive, got {value!r}")
        n = math.ceil(value) - 1
        return cls(n, value - n)

    @classmethod
    def coerce(cls, value: Union[Alpha, float]) -> Alpha:
        return value if isinstance(value, Alpha) else cls.of(float(value))

    def total(self) -> float:
        return self.n + self.beta


@dataclass(frozen=True)
class LimitConfig:
    """Step schedule for the ``eps -> 0`` limit.

    ``eps0=None`` selects ``1e-2 * t**beta`` at the evaluation point, i.e. a
    first relative displacement of about one percent of ``t``.
    ``mode="forward"`` uses the one-sided quotient of the definition as written.
    """

    eps0: float | None = None
    ratio: float = 0.5
    max_levels: int = 12
    target_rtol: float = 1e-8
    mode: str = "symmetric"

    def __post_init__(self):
        if self.eps0 is not None and not self.eps0 > 0:
            raise ValueError("eps0 must be positive")
        if not 0.0 < self.ratio < 1.0:
            raise ValueError("ratio must lie in (0, 1)")
        if self.max_levels < 2:
            raise ValueError("need at least two levels to extrapolate")
        if not self.target_rtol > 0:
            raise ValueError("target_rtol must be positive")
        if self.mode not in ("symmetric", "forward"):
            raise ValueError(f"unknown mode {self.mode!r}")

    def with_(self, **changes) -> LimitConfig:
        return replace(self, **changes)


DEFAULT_CONFIG = LimitConfig()


@dataclass(frozen=True)
class DerivEstimate:
    value: float
    err_estimate: float
    levels_used: int
    converged: bool
    continuity_residual: float
    # |f(t e^{+-eps t^-alpha}) - f(t)| per level, largest eps first
    continuity_trace: tuple[float, ...] = field(default=(), repr=False)

    def __float__(self) -> float:
        return self.value


def truncated_exp(x: float, k: int | float) -> float:
    """Partial sum ``sum_{i=0}^{k} x**i / i!``; ``k = INF`` gives ``exp(x)``.

    >>> truncated_exp(0.5, 1)
    1.5
    """
    if k == INF:
        return math.exp(x)
    if k < 0 or int(k) != k:
        raise InvalidK(f"truncation order must be a non-negative integer or INF, got {k!r}")
    acc = 1.0
    for i in range(int(k), 0, -1):
        acc = 1.0 + x * acc / i
    return acc


def _check_k(k) -> int | float:
    if isinstance(k, str):
        if k.lower() not in ("inf", "infinity"):
            raise InvalidK(f"unrecognized truncation order {k!r}")
        return INF
    if k == INF:
        return INF
    if isinstance(k, float) and not k.is_integer():
        raise InvalidK(f"truncation order must be an integer, got {k!r}")
    if k == 0:
        raise InvalidK("k = 0 makes the difference quotient vanish identically")
    if k < 0:
        raise InvalidK(f"truncation order must be positive, got {k!r}")
    return int(k)


def _limit(func: Callable[[float], float], t: float, beta: float, cfg: LimitConfig,
           k: int | float = INF) -> DerivEstimate:
    """Extrapolate the difference quotient of ``func`` along ``t -> t e_k(eps t^-beta)``."""
    if not t > 0.0:
        raise ValueError(f"the limit estimator needs t > 0, got {t!r}")
    scale = t ** (-beta)
    eps0 = cfg.eps0 if cfg.eps0 is not None else 1e-2 * t ** beta
    if eps0 * cfg.ratio ** cfg.max_levels <= _MACHEPS * t ** beta:
        raise ValueError("eps schedule underflows the resolution at this t; raise eps0 or lower max_levels")

    symmetric = cfg.mode == "symmetric"
    # symmetric quotients are even in eps, so the error expansion runs in eps^2
    step_gain = cfg.ratio ** (-2 if symmetric else -1)

    f0 = func(t)
    tableau: list[list[float]] = []
    residuals: list[float] = []
    best, err = math.nan, math.inf
    for i in range(cfg.max_levels):
        eps = eps0 * cfg.ratio ** i
        x = eps * scale
        fp = func(t * truncated_exp(x, k))
        if symmetric:
            fm = func(t * truncated_exp(-x, k))
            q = (fp - fm) / (2.0 * eps)
            residuals.append(max(abs(fp - f0), abs(fm - f0)))
        else:
            q = (fp - f0) / eps
            residuals.append(abs(fp - f0))

        row = [q]
        fac = step_gain
        for j in range(1, i + 1):
            row.append((row[j - 1] * fac - tableau[i - 1][j - 1]) / (fac - 1.0))
            fac *= step_gain
            errt = max(abs(row[j] - row[j - 1]), abs(row[j] - tableau[i - 1][j - 1]))
            if errt <= err:
                err, best = errt, row[j]
        tableau.append(row)
        if i >= 1 and abs(row[i] - tableau[i - 1][i - 1]) >= _SAFE * err:
            break

    if math.isnan(best):
        best = tableau[-1][-1]
    converged = math.isfinite(best) and err <= cfg.target_rtol * max(1.0, abs(best))
    return DerivEstimate(
        value=best,
        err_estimate=err,
        levels_used=len(tableau),
        converged=converged,
        continuity_residual=max(residuals),
        continuity_trace=tuple(residuals),
    )


def _finish(est: DerivEstimate, check: bool, what: str) -> DerivEstimate:
    if check and not est.converged:
        raise NonConvergence(
            f"{what}: extrapolation did not settle (value {est.value!r}, "
            f"increment {est.err_estimate:.3g} after {est.levels_used} levels)",
            estimate=est,
        )
    return est


def _first_order(alpha) -> Alpha:
    alpha = Alpha.coerce(alpha)
    if alpha.n != 0:
        raise ValueError(f"order {alpha.total()} > 1; use alpha_deriv_higher")
    return alpha


def alpha_deriv_limit(f, t: float, alpha, cfg: LimitConfig = DEFAULT_CONFIG,
                      check: bool = True) -> DerivEstimate:
    """Estimate ``D^alpha f(t)`` for ``0 < alpha <= 1`` straight from the limit.

    ``f`` may be an :class:`~alphafrac.expr.Expr`, expression text or a callable.
    With ``check=True`` a failed extrapolation raises
    :class:`~alphafrac.errors.NonConvergence` (the estimate rides along on the
    exception); with ``check=False`` it is returned with ``converged=False``.
    """
    a = _first_order(alpha)
    est = _limit(as_function(f), float(t), a.beta, cfg)
    return _finish(est, check, f"D^{a.total()} at t={t}")


def alpha_deriv_k(f, t: float, alpha, k=INF, cfg: LimitConfig = DEFAULT_CONFIG,
                  check: bool = True) -> DerivEstimate:
    """Member ``k`` of the truncated-exponential family, ``k >= 1`` or ``INF``."""
    k = _check_k(k)
    a = _first_order(alpha)
    est = _limit(as_function(f), float(t), a.beta, cfg, k)
    return _finish(est, check, f"D_{k}^{a.total()} at t={t}")


def alpha_deriv_higher(f, t: float, alpha, cfg: LimitConfig = DEFAULT_CONFIG,
                       check: bool = True) -> DerivEstimate:
    """Order ``alpha in (n, n+1]``: the first-order limit applied to ``f^(n)``.

    The displacement is ``t e^{eps t^(n - alpha)}``, which is ``t^-beta`` in
    terms of the residue, so this is the same engine run on the n-th derivative.
    """
    a = Alpha.coerce(alpha)
    if isinstance(f, str):
        f = parse(f)
    if not isinstance(f, Expr):
        raise TypeError("higher orders need a symbolic expression to differentiate")
    g = nth_diff(f, a.n)
    est = _limit(as_function(g), float(t), a.beta, cfg)
    return _finish(est, check, f"D^{a.total()} at t={t}")


def alpha_deriv(f, t: float, alpha, cfg: LimitConfig = DEFAULT_CONFIG, k=INF,
                check: bool = True) -> DerivEstimate:
    """Dispatch on the order: first-order family member or the higher-order form."""
    a = Alpha.coerce(alpha)
    if a.n >= 1:
        if _check_k(k) != INF:
            raise InvalidK("truncated variants are only defined for alpha <= 1")
        return alpha_deriv_higher(f, t, a, cfg, check)
    return alpha_deriv_k(f, t, a, k, cfg, check)


def _aitken(seq: list[float]) -> list[float]:
    out = []
    for x0, x1, x2 in zip(seq, seq[1:], seq[2:]):
        d1, d2 = x1 - x0, x2 - x1
        den = d2 - d1
        if den == 0.0 or abs(den) <= 4 * _MACHEPS * max(abs(x0), abs(x1), abs(x2)):
            out.append(x2)
        else:
            out.append(x2 - d2 * d2 / den)
    return out


def alpha_deriv_at_zero(f, alpha, cfg: LimitConfig = DEFAULT_CONFIG, t0: float = 0.1,
                        sigma: float = 0.5, count: int = 11,
                        check: bool = True) -> DerivEstimate:
    """``D^alpha f(0) = lim_{t -> 0+} D^alpha f(t)``.

    Samples the estimator at ``t_j = t0 * sigma**j`` and accelerates the
    sequence with iterated Aitken extrapolation, which is exact for
    ``L + C t^p`` on a geometric grid.  A sequence whose raw increments grow
    toward zero is reported as divergent instead of being "extrapolated".
    """
    a = _first_order(alpha)
    func = as_function(f)
    ests = [_limit(func, t0 * sigma ** j, a.beta, cfg) for j in range(count)]
    seq = [e.value for e in ests]
    noise = max(e.err_estimate for e in ests)

    diffs = [abs(y - x) for x, y in zip(seq, seq[1:])]
    floor = 10 * noise + 10 * _MACHEPS * max(1.0, max(abs(v) for v in seq))
    tail = [d for d in diffs[-4:] if d > floor]
    growing = len(tail) >= 2 and all(b >= a_ for a_, b in zip(tail, tail[1:]))

    best, err = seq[-1], diffs[-1]
    column = seq
    while len(column) >= 3:
        column = _aitken(column)
        if len(column) >= 2:
            e = abs(column[-1] - column[-2])
            if e < err:
                best, err = column[-1], e
    err = max(err, noise)
    converged = (not growing and all(math.isfinite(v) for v in seq)
                 and err <= cfg.target_rtol * max(1.0, abs(best)))
    est = DerivEstimate(
        value=best,
        err_estimate=err,
        levels_used=count,
        converged=converged,
        continuity_residual=max(e.continuity_residual for e in ests),
    )
    return _finish(est, check, f"D^{a.total()} as t -> 0+")
