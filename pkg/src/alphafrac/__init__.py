"""Alpha-fractional derivatives and integrals of functions of one variable.

The derivative of order ``0 < alpha <= 1`` is the limit

    D^alpha f(t) = lim_{eps -> 0} [f(t exp(eps t^-alpha)) - f(t)] / eps,

computed here three ways (limit estimator, truncated-exponential family,
rule engine) together with the matching integral and constructive
Rolle / mean-value witnesses.

>>> from alphafrac import alpha_deriv_limit
>>> round(alpha_deriv_limit("sqrt(t)", 9.0, 0.5).value, 12)
0.5
"""

from .errors import (
    AlphaFracError, BudgetExceeded, DomainError, InvalidK, NoSignChange,
    NonConvergence, NotDifferentiable, ParseError, PreconditionViolation,
    SingularityError,
)
from .expr import (
    Binary, Const, Expr, T, Unary, Var, compile_expr, diff_classical, evaluate,
    nth_diff, parse, render, substitute,
)
from .integral import QuadResult, alpha_integral, check_inverse
from .numeric import (
    INF, Alpha, DerivEstimate, LimitConfig, alpha_deriv, alpha_deriv_at_zero,
    alpha_deriv_higher, alpha_deriv_k, alpha_deriv_limit, truncated_exp,
)
from .symbolic import (
    RuleTrace, alpha_deriv_closed, alpha_deriv_rules, higher_closed,
    theorem4_table, theorem5_table,
)
from .theorems import (
    RulesReport, WitnessResult, check_rules_batch, check_table, find_mvt_point,
    find_rolle_point, mvt_auxiliary,
)

__version__ = "0.1.0"
