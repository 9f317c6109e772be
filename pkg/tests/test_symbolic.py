import math

import pytest

from alphafrac.errors import NotDifferentiable
from alphafrac.expr import evaluate, parse, render
from alphafrac.numeric import alpha_deriv_limit
from alphafrac.symbolic import (
    RULES, alpha_deriv_closed, alpha_deriv_rules, higher_closed, theorem4_table,
    theorem5_table,
)
from alphafrac.theorems import SMOOTH_CORPUS

GRID = (0.3, 0.7, 1.0, 2.0, 5.0)
EXTRA = ("t^t", "2^t", "sin(t)^2", "(t^2+1)^0.5", "-t/(2+cos(t))", "exp(sin(t))*ln(t+1)",
         "5", "t", "-3*t^-1", "sin((1/0.5)*t^0.5)")


def pointwise(a, b, grid=GRID):
    return max(abs(evaluate(a, t) - evaluate(b, t)) / max(1.0, abs(evaluate(b, t))) for t in grid)


def test_closed_power():
    got = alpha_deriv_closed("t^3", 0.5)
    assert pointwise(got, parse("3*t^2.5")) < 1e-14


def test_closed_exponential():
    got = alpha_deriv_closed("exp(2*t)", 0.5)
    assert pointwise(got, parse("2*t^0.5*exp(2*t)")) < 1e-14


def test_closed_constant_is_zero():
    for alpha in (0.1, 0.5, 1.0):
        assert render(alpha_deriv_closed("5", alpha)) == "0"


def test_order_range():
    with pytest.raises(ValueError):
        alpha_deriv_closed("t", 1.5)
    with pytest.raises(ValueError):
        alpha_deriv_rules("t", 0.0)


def test_rules_product_example():
    got, trace = alpha_deriv_rules("t^2*sin(t)", 0.5)
    assert pointwise(got, parse("t^0.5*(2*t*sin(t)+t^2*cos(t))")) < 1e-13
    assert {"product", "power", "chain"} <= set(trace.rules())
    assert set(trace.rules()) <= set(RULES)


def test_rules_quotient_example():
    got, trace = alpha_deriv_rules("sin(t)/t", 0.5)
    assert "quotient" in trace.rules()
    assert pointwise(got, alpha_deriv_closed("sin(t)/t", 0.5)) < 1e-12


def test_rules_unusual_sine():
    got, _ = alpha_deriv_rules("sin((1/0.5)*t^0.5)", 0.5)
    assert pointwise(got, parse("cos(2*t^0.5)")) < 1e-13


def test_trace_has_one_record_per_visited_node():
    _, trace = alpha_deriv_rules("t^2*sin(t)+3", 0.5)
    # add, mul, t^2, sin, t, constant 3
    assert [r.rule for r in trace] == ["linearity", "product", "chain", "power", "power", "constant"]


def test_general_power_is_rewritten():
    _, trace = alpha_deriv_rules("t^t", 0.5)
    assert trace.rules()[0] == "table"


def test_abs_rejected():
    with pytest.raises(NotDifferentiable):
        alpha_deriv_rules("abs(t)", 0.5)
    with pytest.raises(NotDifferentiable):
        alpha_deriv_closed("abs(t)", 0.5)


@pytest.mark.parametrize("f", SMOOTH_CORPUS + EXTRA)
@pytest.mark.parametrize("alpha", [0.25, 0.5, 1.0])
def test_rules_equal_closed_form(f, alpha):
    rules, _ = alpha_deriv_rules(f, alpha)
    assert pointwise(rules, alpha_deriv_closed(f, alpha)) <= 1e-9


@pytest.mark.parametrize("f, g", [("t^2", "sin(t)"), ("ln(t)", "exp(-t)"), ("sqrt(t)", "t^3-1")])
def test_rules_linearity(f, g):
    a, b = 2.5, -1.5
    lhs, _ = alpha_deriv_rules(f"{a}*({f})+{b}*({g})", 0.5)
    df, _ = alpha_deriv_rules(f, 0.5)
    dg, _ = alpha_deriv_rules(g, 0.5)
    for t in GRID:
        assert evaluate(lhs, t) == pytest.approx(a * evaluate(df, t) + b * evaluate(dg, t), rel=1e-12, abs=1e-12)


@pytest.mark.parametrize("f", SMOOTH_CORPUS)
def test_closed_form_matches_numeric(f):
    for t in GRID:
        num = alpha_deriv_limit(f, t, 0.4).value
        assert num == pytest.approx(evaluate(alpha_deriv_closed(f, 0.4), t), rel=1e-8, abs=1e-9)


def test_higher_closed():
    e = higher_closed("t^3", 1.5)
    assert evaluate(e, 4.0) == pytest.approx(48.0)


# -- tables ------------------------------------------------------------------

def test_theorem4_pairs():
    table = theorem4_table(0.5, a=2.0)
    assert [e.label for e in table] == ["a", "b", "c", "d", "e", "f"]
    b = table[1]
    assert render(b.function) == "1" and render(b.expected) == "0"
    e = table[4]
    assert render(e.function) == "cos(2*t)"
    for t in GRID:
        assert evaluate(e.expected, t) == pytest.approx(-2 * t ** 0.5 * math.sin(2 * t))
    f = table[5]
    assert evaluate(f.function, 4.0) == pytest.approx(4.0)  # (1/0.5) * 4^0.5
    assert render(f.expected) == "1"


def test_theorem5_pairs():
    i, ii, iii = theorem5_table(0.5)
    for t in GRID:
        u = 2 * t ** 0.5
        assert evaluate(iii.function, t) == pytest.approx(math.exp(u))
        assert evaluate(iii.expected, t) == pytest.approx(math.exp(u))
        assert evaluate(ii.expected, t) == pytest.approx(-math.sin(u))
    one = theorem5_table(1.0)[0]
    for t in GRID:
        assert evaluate(one.function, t) == pytest.approx(math.sin(t))
        assert evaluate(one.expected, t) == pytest.approx(math.cos(t))


@pytest.mark.parametrize("alpha", [0.3, 0.5, 0.9, 1.0])
def test_tables_hold_for_rules_engine(alpha):
    for entry in theorem4_table(alpha, a=-1.5) + theorem5_table(alpha):
        got, _ = alpha_deriv_rules(entry.function, alpha)
        assert pointwise(got, entry.expected) < 1e-10, entry.label
