"""The alpha-fractional integral ``I_a^alpha f(t) = int_a^t f(x) x^(alpha-1) dx``.

Quadrature is an adaptive 7/15-point Gauss-Kronrod scheme: the interval with
the largest error estimate is bisected until the total estimate meets the
mixed tolerance ``tol * max(1, |value|)``.

For ``alpha < 1`` the weight ``x^(alpha-1)`` is singular at 0, and steep for
small positive ``a``.  The substitution ``u = x^alpha / alpha`` removes it
exactly::

    int_a^t f(x) x^(alpha-1) dx = int_(a^alpha/alpha)^(t^alpha/alpha) f((alpha u)^(1/alpha)) du
"""

from __future__ import annotations

import heapq
import math
from dataclasses import dataclass
from typing import Callable

from .errors import BudgetExceeded, SingularityError
from .expr import as_function
from .numeric import DEFAULT_CONFIG, Alpha, LimitConfig, _limit

__all__ = ["QuadResult", "gauss_kronrod", "adaptive_quad", "alpha_integral", "check_inverse"]

DEFAULT_BUDGET = 10_000

# 15-point Kronrod extension of the 7-point Gauss rule (abscissae >= 0)
_XGK = (
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144845693013,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.000000000000000000000000000000000,
)
_WGK = (
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714,
)
# Gauss weights at _XGK[1], _XGK[3], _XGK[5], _XGK[7]
_WG = (
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327,
)
_EPMACH = 2.220446049250313e-16
_UFLOW = 2.2250738585072014e-308


@dataclass(frozen=True)
class QuadResult:
    value: float
    err_estimate: float
    subdivisions: int
    used_substitution: bool = False


def gauss_kronrod(func: Callable[[float], float], lo: float, hi: float) -> tuple[float, float]:
    """One G7/K15 panel on ``[lo, hi]``: ``(kronrod_value, error_estimate)``.

    The error estimate is the QUADPACK heuristic built from ``|K15 - G7|``.
    """
    center = 0.5 * (lo + hi)
    half = 0.5 * (hi - lo)
    fc = func(center)
    res_k = fc * _WGK[7]
    res_g = fc * _WG[3]
    res_abs = abs(res_k)
    fv1, fv2 = [0.0] * 7, [0.0] * 7
    for j in range(7):
        dx = half * _XGK[j]
        f1, f2 = func(center - dx), func(center + dx)
        fv1[j], fv2[j] = f1, f2
        res_k += _WGK[j] * (f1 + f2)
        res_abs += _WGK[j] * (abs(f1) + abs(f2))
        if j % 2 == 1:
            res_g += _WG[j // 2] * (f1 + f2)
    mean = 0.5 * res_k
    res_asc = _WGK[7] * abs(fc - mean)
    for j in range(7):
        res_asc += _WGK[j] * (abs(fv1[j] - mean) + abs(fv2[j] - mean))

    result = res_k * half
    res_abs *= abs(half)
    res_asc *= abs(half)
    err = abs((res_k - res_g) * half)
    if res_asc != 0.0 and err != 0.0:
        err = res_asc * min(1.0, (200.0 * err / res_asc) ** 1.5)
    if res_abs > _UFLOW / (50.0 * _EPMACH):
        err = max(50.0 * _EPMACH * res_abs, err)
    return result, err


def adaptive_quad(func: Callable[[float], float], lo: float, hi: float, tol: float = 1e-12,
                  budget: int = DEFAULT_BUDGET) -> QuadResult:
    """Integrate ``func`` over ``[lo, hi]`` to ``tol * max(1, |value|)``.

    Raises :class:`BudgetExceeded` once ``budget`` bisections have been spent,
    or when the worst panel has shrunk to rounding level without meeting tol.
    """
    if not tol > 0:
        raise ValueError("tol must be positive")
    if lo == hi:
        return QuadResult(0.0, 0.0, 0)
    value, err = gauss_kronrod(func, lo, hi)
    # max-heap on error; the counter keeps ordering deterministic
    heap = [(-err, 0, lo, hi, value)]
    panels = {0: (value, err)}
    counter = 1
    splits = 0
    min_width = 64 * _EPMACH * max(abs(lo), abs(hi))
    while True:
        total = math.fsum(v for v, _ in panels.values())
        total_err = math.fsum(e for _, e in panels.values())
        if total_err <= tol * max(1.0, abs(total)):
            return QuadResult(total, total_err, splits)
        if splits >= budget:
            raise BudgetExceeded(
                f"quadrature budget of {budget} subdivisions exhausted "
                f"(estimate {total!r} +- {total_err:.3g})",
                result=QuadResult(total, total_err, splits),
            )
        neg_err, key, a, b, _ = heapq.heappop(heap)
        mid = 0.5 * (a + b)
        if b - a <= min_width or not a < mid < b:
            raise BudgetExceeded(
                f"error estimate stalled at {total_err:.3g} on a panel of width {b - a:.3g}",
                result=QuadResult(total, total_err, splits),
            )
        del panels[key]
        for p, q in ((a, mid), (mid, b)):
            v, e = gauss_kronrod(func, p, q)
            panels[counter] = (v, e)
            heapq.heappush(heap, (-e, counter, p, q, v))
            counter += 1
        splits += 1


def _integrand(func, alpha_value: float, substitute: bool):
    if substitute:
        inv = 1.0 / alpha_value
        return lambda u: func((alpha_value * u) ** inv)
    m = alpha_value - 1.0
    return lambda x: func(x) * x ** m


def _signed_integral(func, a: float, t: float, alpha_value: float, tol: float,
                     method: str, budget: int) -> QuadResult:
    if a == 0.0 and alpha_value <= 0.0:
        raise SingularityError(f"x^(alpha-1) is not integrable at 0 for alpha={alpha_value!r}")
    auto_sub = a == 0.0 or 0.0 < alpha_value < 1.0
    substitute = method == "substitution" or (method == "auto" and auto_sub)
    if substitute:
        lo, hi = a ** alpha_value / alpha_value, t ** alpha_value / alpha_value
    else:
        lo, hi = a, t
    res = adaptive_quad(_integrand(func, alpha_value, substitute), lo, hi, tol, budget)
    return QuadResult(res.value, res.err_estimate, res.subdivisions, substitute)


def alpha_integral(f, a: float, t: float, alpha_value: float, tol: float = 1e-12,
                   method: str = "auto", budget: int = DEFAULT_BUDGET) -> QuadResult:
    """``int_a^t f(x) x^(alpha - 1) dx`` for ``0 <= a <= t``.

    ``method`` is ``"auto"`` (substitute when ``a == 0`` or ``alpha < 1``),
    ``"direct"`` or ``"substitution"``.  Orders ``alpha <= 0`` are accepted only for ``a > 0``.
    """
    a, t, alpha_value = float(a), float(t), float(alpha_value)
    if a < 0.0:
        raise ValueError(f"lower limit must be non-negative, got {a!r}")
    if t < a:
        raise ValueError(f"upper limit {t!r} is below the lower limit {a!r}")
    if method not in ("auto", "direct", "substitution"):
        raise ValueError(f"unknown method {method!r}")
    if method == "direct" and a == 0.0 and alpha_value < 1.0:
        raise SingularityError("direct quadrature cannot start at the singular endpoint 0")
    if method == "substitution" and alpha_value <= 0.0:
        raise SingularityError("the substitution u = x^alpha/alpha needs alpha > 0")
    return _signed_integral(as_function(f), a, t, alpha_value, tol, method, budget)


def check_inverse(f, a: float, t: float, alpha_value: float,
                  cfg: LimitConfig = DEFAULT_CONFIG, tol: float = 1e-13) -> float:
    """``|D^alpha (I_a^alpha f)(t) - f(t)|``.

    The derivative comes from the limit estimator applied to
    ``s -> I_a^alpha f(s)``, each sample being a fresh quadrature.  Samples
    just below ``a`` are integrated with reversed orientation.
    """
    alpha = Alpha.coerce(alpha_value)
    if alpha.n != 0 or alpha.beta >= 1.0:
        raise ValueError(f"the inverse check is stated for 0 < alpha < 1, got {alpha_value!r}")
    a, t = float(a), float(t)
    if a < 0.0 or not t > a:
        raise ValueError(f"need 0 <= a < t, got a={a!r}, t={t!r}")
    func = as_function(f)
    al = alpha.beta

    def integral(s: float) -> float:
        if s >= a:
            return _signed_integral(func, a, s, al, tol, "auto", DEFAULT_BUDGET).value
        return -_signed_integral(func, s, a, al, tol, "direct", DEFAULT_BUDGET).value

    est = _limit(integral, t, al, cfg)
    return abs(est.value - func(t))
