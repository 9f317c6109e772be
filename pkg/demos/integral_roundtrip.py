"""
Integral and inverse
====================

The alpha-integral from a to t undoes the alpha-derivative.  With a = 0 the
weight x^(alpha-1) is singular; a change of variables removes it.
"""

from alphafrac import alpha_integral, check_inverse

alpha = 0.5
res = alpha_integral("cos(t)", 0.0, 2.0, alpha)
print(f"I_0^1/2 cos at t=2 : {res.value:.15f} +- {res.err_estimate:.1e}")
print(f"  substitution used: {res.used_substitution}, panels split {res.subdivisions} times")

# t^2 against the weight has a closed form: t^(2+alpha) / (2+alpha)
exact = 2.0 ** 2.5 / 2.5
print(f"I_0^1/2 t^2 at t=2 : {alpha_integral('t^2', 0.0, 2.0, alpha).value:.15f} (exact {exact:.15f})")

for f in ("exp(t/2)", "ln(t)", "1/(1+t^2)"):
    for a in (0.0, 1.0):
        r = check_inverse(f, a, 2.0, alpha)
        print(f"|D I f - f| for {f:<10s} a={a:g}: {r:.1e}")
