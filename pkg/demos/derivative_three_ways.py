"""
One derivative, three routes
============================

The limit estimator, the truncated-exponential family and the rule engine
should agree on any smooth function.
"""

from alphafrac import (
    alpha_deriv_k, alpha_deriv_limit, alpha_deriv_rules, evaluate, parse, render,
)

f = parse("t^2*sin(t)")
alpha, t = 0.5, 2.0

# the limit estimator reports its own error bar
est = alpha_deriv_limit(f, t, alpha)
print(f"limit estimator : {est.value:.15f} +- {est.err_estimate:.1e} ({est.levels_used} levels)")

# k = 1 is the conformable derivative, larger k approach the exponential
for k in (1, 2, 10):
    print(f"family k={k:<2d}     : {alpha_deriv_k(f, t, alpha, k).value:.15f}")

# the rule engine never differentiates the whole tree classically
expr, trace = alpha_deriv_rules(f, alpha)
print("rules applied   :", " > ".join(trace.rules()))
print("closed form     :", render(expr))
print(f"closed value    : {evaluate(expr, t):.15f}")
