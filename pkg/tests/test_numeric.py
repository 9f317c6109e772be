import math
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from alphafrac.errors import InvalidK, NonConvergence
from alphafrac.expr import diff_classical, evaluate, parse
from alphafrac.numeric import (
    INF, Alpha, DerivEstimate, LimitConfig, alpha_deriv, alpha_deriv_at_zero,
    alpha_deriv_higher, alpha_deriv_k, alpha_deriv_limit, truncated_exp,
)

GRID = (0.3, 0.7, 1.0, 2.0, 5.0)


def closed(f, t, alpha):
    """t^(1-alpha) f'(t) from the symbolic derivative."""
    return t ** (1 - alpha) * evaluate(diff_classical(parse(f)), t)


def mixed(x):
    return max(1.0, abs(x))


# -- Alpha ------------------------------------------------------------------

@pytest.mark.parametrize("value, n, beta", [
    (0.5, 0, 0.5), (1.0, 0, 1.0), (1.5, 1, 0.5), (2.0, 1, 1.0), (3.25, 3, 0.25),
])
def test_alpha_decomposition(value, n, beta):
    a = Alpha.of(value)
    assert (a.n, a.beta) == (n, beta)
    assert a.total() == value
    assert a.n < a.total() <= a.n + 1


@pytest.mark.parametrize("n, beta", [(0, 0.0), (0, 1.5), (-1, 0.5), (0.5, 0.5)])
def test_alpha_invariants(n, beta):
    with pytest.raises(ValueError):
        Alpha(n, beta)


def test_config_validation():
    for bad in (dict(ratio=1.0), dict(ratio=0.0), dict(eps0=-1.0), dict(max_levels=1),
                dict(target_rtol=0.0), dict(mode="central")):
        with pytest.raises(ValueError):
            LimitConfig(**bad)
    with pytest.raises(ValueError):
        alpha_deriv_limit("t", 1.0, 0.5, LimitConfig(eps0=1e-12, max_levels=40))


# -- truncated exponential ---------------------------------------------------

def test_truncated_exp_examples():
    assert truncated_exp(3.7, 0) == 1.0
    assert truncated_exp(0.5, 1) == 1.5
    oracle = sum(Fraction(1, 2) ** i / math.factorial(i) for i in range(4))
    assert oracle == Fraction(79, 48)
    assert truncated_exp(0.5, 3) == pytest.approx(float(oracle), rel=1e-15)
    assert truncated_exp(0.5, INF) == math.exp(0.5)


@given(st.floats(-3, 3), st.integers(0, 25))
def test_truncated_exp_matches_exact_partial_sum(x, k):
    xf = Fraction(x)
    exact = sum(xf ** i / math.factorial(i) for i in range(k + 1))
    assert truncated_exp(x, k) == pytest.approx(float(exact), rel=1e-13, abs=1e-15)


def test_truncated_exp_rejects_bad_order():
    with pytest.raises(InvalidK):
        truncated_exp(1.0, -1)
    with pytest.raises(InvalidK):
        truncated_exp(1.0, 2.5)


# -- limit estimator ---------------------------------------------------------

def test_power_example():
    est = alpha_deriv_limit("t^2", 4.0, 0.5)
    assert isinstance(est, DerivEstimate) and est.converged
    assert est.value == pytest.approx(2 * 4 ** 1.5, rel=1e-9)
    assert est.err_estimate <= est.value * 1e-8


@pytest.mark.parametrize("t", [0.25, 1.0, 9.0])
def test_sqrt_has_constant_half_derivative(t):
    assert alpha_deriv_limit("sqrt(t)", t, 0.5).value == pytest.approx(0.5, abs=1e-10)


def test_fractional_power_over_alpha_has_unit_derivative():
    assert alpha_deriv_limit("(1/0.5)*t^0.5", 2.0, 0.5).value == pytest.approx(1.0, abs=1e-10)


@pytest.mark.parametrize("alpha", [0.2, 0.5, 0.8, 1.0])
@pytest.mark.parametrize("t", GRID)
def test_oracle_agreement(smooth, alpha, t):
    est = alpha_deriv_limit(smooth, t, alpha)
    ref = closed(smooth, t, alpha)
    assert abs(est.value - ref) <= 1e-6 * mixed(est.value)
    assert est.converged
    assert est.err_estimate <= 1e-8 * mixed(est.value)


@pytest.mark.parametrize("t", [0.5, 1.0, 2.0, 3.0])
def test_classical_reduction(smooth, t):
    f = lambda x: evaluate(parse(smooth), x)
    h = 1e-5 * max(1.0, t)
    fd = (f(t + h) - f(t - h)) / (2 * h)
    assert alpha_deriv_limit(smooth, t, 1.0).value == pytest.approx(fd, rel=1e-6, abs=1e-6)


@pytest.mark.parametrize("t", [0.5, 2.0])
def test_forward_quotient_agrees_with_symmetric(smooth, t):
    sym = alpha_deriv_limit(smooth, t, 0.5).value
    fwd = alpha_deriv_limit(smooth, t, 0.5, LimitConfig(mode="forward")).value
    assert abs(sym - fwd) <= 1e-5 * mixed(sym)


def test_continuity_residual_shrinks_with_eps(smooth):
    cfg = LimitConfig(max_levels=8)
    est = alpha_deriv_limit(smooth, 1.3, 0.5, cfg, check=False)
    trace = est.continuity_trace
    assert len(trace) == est.levels_used >= 2
    assert est.continuity_residual == max(trace)
    assert all(b <= a for a, b in zip(trace, trace[1:]))
    eps = [1e-2 * 1.3 ** 0.5 * 0.5 ** j for j in range(len(trace))]
    c = 2 * max(trace[0] / eps[0], trace[1] / eps[1])
    assert all(r <= c * e for r, e in zip(trace, eps))


def test_callable_functions_are_accepted():
    est = alpha_deriv_limit(math.sin, 1.0, 0.5)
    assert est.value == pytest.approx(math.cos(1.0), rel=1e-9)


def test_needs_positive_t():
    with pytest.raises(ValueError):
        alpha_deriv_limit("t", 0.0, 0.5)
    with pytest.raises(ValueError):
        alpha_deriv_limit("t", 1.0, 1.5)


def test_kink_is_reported_not_smoothed():
    with pytest.raises(NonConvergence) as info:
        alpha_deriv_limit("abs(t-1)", 1.0, 0.5)
    assert info.value.estimate is not None
    assert not info.value.estimate.converged
    est = alpha_deriv_limit("abs(t-1)", 1.0, 0.5, check=False)
    assert not est.converged
    # the one-sided quotient sees the right-hand slope t^(1/2) * 1
    fwd = alpha_deriv_limit("abs(t-1)", 1.0, 0.5, LimitConfig(mode="forward"))
    assert fwd.value == pytest.approx(1.0, abs=1e-8)


def test_target_rtol_only_changes_the_verdict():
    loose = alpha_deriv_limit("exp(t)*sin(t)", 1.7, 0.4, check=False)
    tight = alpha_deriv_limit("exp(t)*sin(t)", 1.7, 0.4, LimitConfig(target_rtol=1e-20), check=False)
    assert loose.value == tight.value
    assert loose.converged and not tight.converged


# -- t -> 0+ ------------------------------------------------------------------

def test_at_zero_examples():
    assert alpha_deriv_at_zero("3*t^(1/3)", 1 / 3).value == pytest.approx(1.0, abs=1e-8)
    assert alpha_deriv_at_zero("t", 0.5).value == pytest.approx(0.0, abs=1e-8)
    for alpha in (0.2, 0.5, 1.0):
        assert alpha_deriv_at_zero("1", alpha).value == 0.0


def test_at_zero_divergence_is_reported():
    # 0.2 t^-0.3 blows up as t -> 0
    with pytest.raises(NonConvergence):
        alpha_deriv_at_zero("t^0.2", 0.5)


# -- truncated family --------------------------------------------------------

def test_k_examples():
    assert alpha_deriv_k("t^2", 4.0, 0.5, 1).value == pytest.approx(4 ** 0.5 * 8, rel=1e-9)
    assert alpha_deriv_k("sin(t)", 1.0, 0.5, 3).value == pytest.approx(math.cos(1.0), abs=1e-9)
    with pytest.raises(InvalidK):
        alpha_deriv_k("t", 1.0, 0.5, 0)
    with pytest.raises(InvalidK):
        alpha_deriv_k("t", 1.0, 0.5, -2)


def test_k_infinity_is_the_main_definition():
    for f in ("t^2*sin(t)", "ln(t)"):
        a = alpha_deriv_k(f, 1.3, 0.6, INF)
        b = alpha_deriv_limit(f, 1.3, 0.6)
        assert a == b
    assert alpha_deriv_k("t", 2.0, 0.5, "inf") == alpha_deriv_limit("t", 2.0, 0.5)


@pytest.mark.parametrize("k", [1, 2, 3, 10])
def test_k_independence(smooth, k):
    for t in (0.5, 2.0):
        a = alpha_deriv_k(smooth, t, 0.5, k)
        b = alpha_deriv_limit(smooth, t, 0.5)
        assert abs(a.value - b.value) <= 10 * (a.err_estimate + b.err_estimate) + 1e-9 * mixed(b.value)


# -- higher order ------------------------------------------------------------

@pytest.mark.parametrize("t", [1.0, 2.0, 4.0])
def test_higher_order_matches_closed_form(t):
    # D^alpha f = t^(n+1-alpha) f^(n+1) with n = 1, alpha = 1.5: t^0.5 * 6t
    est = alpha_deriv_higher("t^3", t, 1.5)
    assert est.value == pytest.approx(t ** 0.5 * 6 * t, rel=1e-9)


def test_higher_order_examples():
    assert alpha_deriv_higher("t^3", 1.0, 1.5).value == pytest.approx(6.0, rel=1e-9)
    for t in (0.5, 1.0, 3.0):
        assert alpha_deriv_higher("t", t, 1.5).value == 0.0


@pytest.mark.parametrize("alpha", [1.25, 2.0, 2.5, 3.75])
def test_higher_order_general(alpha):
    a = Alpha.of(alpha)
    f = parse("exp(t/2)*sin(t)")
    for t in (0.7, 2.0):
        from alphafrac.expr import nth_diff
        ref = t ** (a.n + 1 - alpha) * evaluate(nth_diff(f, a.n + 1), t)
        assert alpha_deriv(f, t, alpha).value == pytest.approx(ref, rel=1e-8, abs=1e-8)


def test_integer_order_is_classical():
    # alpha = 2 reduces to the second derivative
    assert alpha_deriv_higher("sin(t)", 1.1, 2.0).value == pytest.approx(-math.sin(1.1), rel=1e-9)


def test_dispatch_rejects_truncation_above_one():
    with pytest.raises(InvalidK):
        alpha_deriv("t^3", 1.0, 1.5, k=2)


@settings(max_examples=60, deadline=None)
@given(st.floats(0.05, 20), st.floats(-2, 3), st.floats(0.05, 1.0))
def test_power_rule_property(t, n, alpha):
    est = alpha_deriv_limit(f"t^({n!r})", t, alpha)
    ref = n * t ** (n - alpha)
    assert abs(est.value - ref) <= 1e-7 * mixed(ref)
