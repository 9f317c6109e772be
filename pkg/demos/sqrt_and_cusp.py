"""
Constant derivatives and a cusp at the origin
=============================================

sqrt(t) has the constant half-order derivative 1/2.  3 t^(1/3) has a
classical derivative that blows up at 0, yet its 1/3-order derivative is
identically 1, including in the limit t -> 0+.
"""

from alphafrac import alpha_deriv_at_zero, alpha_deriv_limit

for t in (0.01, 1.0, 100.0):
    print(f"D^1/2 sqrt(t) at t={t:<6g}: {alpha_deriv_limit('sqrt(t)', t, 0.5).value:.12f}")

g = "3*t^(1/3)"
for t in (0.1, 1.0, 10.0):
    print(f"D^1/3 {g} at t={t:<5g}: {alpha_deriv_limit(g, t, 1 / 3).value:.12f}")

at0 = alpha_deriv_at_zero(g, 1 / 3)
print(f"limit t -> 0+ : {at0.value:.10f} (extrapolation error {at0.err_estimate:.1e})")

# classical slope near the origin, for contrast
print(f"D^1 {g} at t=1e-4: {alpha_deriv_limit(g, 1e-4, 1.0).value:.1f}")
