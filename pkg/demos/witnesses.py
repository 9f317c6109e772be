"""
Rolle and mean-value witnesses
==============================

Locate the point promised by each theorem and report how well it satisfies
its defining equation.
"""

from alphafrac import find_mvt_point, find_rolle_point, mvt_auxiliary

w = find_rolle_point("(t-1)*(t-2)", 1.0, 2.0, 0.5)
print(f"Rolle: c = {w.c!r}, residual {w.residual:.1e}, bracket {w.bracketing_interval}")

g, slope = mvt_auxiliary("t", 1.0, 4.0, 0.5)
print(f"secant slope against t^a/a: {slope}, g(1) = {g(1.0)}, g(4) = {g(4.0)}")

w = find_mvt_point("t", 1.0, 4.0, 0.5)
print(f"MVT: c = {w.c!r} (exact 2.25), {w.iterations} bisection steps")
