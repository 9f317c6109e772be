"""Closed-form alpha-derivatives.

Two independent routes to the same function:

* :func:`alpha_deriv_closed` multiplies the classical derivative by
  ``t**(1 - alpha)``;
* :func:`alpha_deriv_rules` never forms ``f'`` for the whole tree.  It walks
  the tree and applies linearity, the power rule ``D t^n = n t^(n - alpha)``,
  the constant rule, product and quotient rules, and the chain rule
  ``D u(g) = u'(g) * D g`` with ``u'`` from the table of elementary
  derivatives.  Every step is logged in a :class:`RuleTrace`.

The results are compared pointwise, never structurally: only constant
folding is applied.
"""

from __future__ import annotations

from typing import NamedTuple

from .errors import NotDifferentiable
from .expr import (
    Binary, Const, Expr, T, Unary, add, call, diff_classical, div, is_constant,
    mul, neg, nth_diff, outer_derivative, parse, power, sub,
)
from .numeric import Alpha

RULES = ("linearity", "power", "constant", "product", "quotient", "chain", "table")


class RuleRecord(NamedTuple):
    node: Expr
    rule: str


class RuleTrace(list):
    """Ordered list of :class:`RuleRecord`; one entry per visited node."""

    def rules(self) -> list[str]:
        return [r.rule for r in self]

    def count(self, rule: str) -> int:  # type: ignore[override]
        return sum(1 for r in self if r.rule == rule)


class TableEntry(NamedTuple):
    label: str
    function: Expr
    expected: Expr


def _check_order(alpha_value: float) -> float:
    alpha_value = float(alpha_value)
    if not 0.0 < alpha_value <= 1.0:
        raise ValueError(f"closed forms cover 0 < alpha <= 1, got {alpha_value!r}")
    return alpha_value


def _as_expr(f) -> Expr:
    return parse(f) if isinstance(f, str) else f


def alpha_deriv_closed(f, alpha_value: float) -> Expr:
    """``t^(1 - alpha) * f'(t)`` as a folded tree."""
    alpha_value = _check_order(alpha_value)
    return mul(power(T, Const(1.0 - alpha_value)), diff_classical(_as_expr(f)))


def higher_closed(f, alpha) -> Expr:
    """``t^(n + 1 - alpha) * f^(n+1)(t)`` for ``alpha`` in ``(n, n + 1]``."""
    a = Alpha.coerce(alpha)
    return mul(power(T, Const(1.0 - a.beta)), nth_diff(_as_expr(f), a.n + 1))


def alpha_deriv_rules(f, alpha_value: float) -> tuple[Expr, RuleTrace]:
    alpha_value = _check_order(alpha_value)
    trace = RuleTrace()
    result = _rules(_as_expr(f), alpha_value, trace)
    return result, trace


def _rules(e: Expr, a: float, trace: RuleTrace) -> Expr:
    if is_constant(e):
        trace.append(RuleRecord(e, "constant"))
        return Const(0.0)

    if e == T:
        trace.append(RuleRecord(e, "power"))
        return power(T, Const(1.0 - a))

    if isinstance(e, Unary):
        if e.op == "neg":
            trace.append(RuleRecord(e, "linearity"))
            return neg(_rules(e.arg, a, trace))
        if e.op == "abs":
            raise NotDifferentiable("abs has no alpha-derivative rule")
        trace.append(RuleRecord(e, "chain"))
        return mul(outer_derivative(e.op, e.arg), _rules(e.arg, a, trace))

    assert isinstance(e, Binary)
    u, v = e.left, e.right
    if e.op in ("add", "sub"):
        trace.append(RuleRecord(e, "linearity"))
        du, dv = _rules(u, a, trace), _rules(v, a, trace)
        return add(du, dv) if e.op == "add" else sub(du, dv)

    if e.op == "mul":
        if is_constant(u) or is_constant(v):
            trace.append(RuleRecord(e, "linearity"))
            c, g = (u, v) if is_constant(u) else (v, u)
            return mul(c, _rules(g, a, trace))
        trace.append(RuleRecord(e, "product"))
        return add(mul(u, _rules(v, a, trace)), mul(v, _rules(u, a, trace)))

    if e.op == "div":
        if is_constant(v):
            trace.append(RuleRecord(e, "linearity"))
            return div(_rules(u, a, trace), v)
        trace.append(RuleRecord(e, "quotient"))
        du, dv = _rules(u, a, trace), _rules(v, a, trace)
        return div(sub(mul(v, du), mul(u, dv)), power(v, Const(2.0)))

    # pow
    if is_constant(v):
        n = v.value if isinstance(v, Const) else None
        if u == T and n is not None:
            trace.append(RuleRecord(e, "power"))
            return mul(Const(n), power(T, Const(n - a)))
        # u(x) = x^c applied to a non-trivial base
        trace.append(RuleRecord(e, "chain"))
        exponent = Const(n - 1.0) if n is not None else sub(v, Const(1.0))
        return mul(mul(v, power(u, exponent)), _rules(u, a, trace))
    if is_constant(u):
        # u(x) = b^x
        trace.append(RuleRecord(e, "chain"))
        return mul(mul(call("ln", u), e), _rules(v, a, trace))
    # g^h = exp(h ln g)
    trace.append(RuleRecord(e, "table"))
    rewritten = call("exp", mul(v, call("ln", u)))
    return _rules(rewritten, a, trace)


def theorem4_table(alpha_value: float, a: float = 1.0, n: float = 3.0) -> list[TableEntry]:
    """The six elementary pairs (function, expected alpha-derivative).

    ``n`` is the exponent used for the power pair.
    """
    al = _check_order(alpha_value)
    r = 1.0 - al
    return [
        TableEntry("a", parse(f"t^{n!r}"), parse(f"{n!r}*t^({n - al!r})")),
        TableEntry("b", parse("1"), parse("0")),
        TableEntry("c", parse(f"exp({a!r}*t)"), parse(f"{a!r}*t^{r!r}*exp({a!r}*t)")),
        TableEntry("d", parse(f"sin({a!r}*t)"), parse(f"{a!r}*t^{r!r}*cos({a!r}*t)")),
        TableEntry("e", parse(f"cos({a!r}*t)"), parse(f"-{a!r}*t^{r!r}*sin({a!r}*t)")),
        TableEntry("f", parse(f"(1/{al!r})*t^{al!r}"), parse("1")),
    ]


def theorem5_table(alpha_value: float) -> list[TableEntry]:
    """Functions of ``u = t^alpha / alpha``, on which the operator acts classically."""
    al = _check_order(alpha_value)
    u = f"(t^{al!r}/{al!r})"
    return [
        TableEntry("i", parse(f"sin{u}"), parse(f"cos{u}")),
        TableEntry("ii", parse(f"cos{u}"), parse(f"-sin{u}")),
        TableEntry("iii", parse(f"exp{u}"), parse(f"exp{u}")),
    ]
