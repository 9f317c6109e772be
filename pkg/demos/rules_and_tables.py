"""
Product, quotient and chain rules, and the elementary tables
============================================================

Every term of each identity is estimated numerically on its own.
"""

from alphafrac import check_rules_batch, check_table, theorem4_table, theorem5_table
from alphafrac.theorems import RULE_PAIRS

report = check_rules_batch(RULE_PAIRS, (0.25, 0.5, 0.75), (0.3, 0.7, 1.0, 2.0, 3.0))
print(f"{len(report.checks)} checks, {len(report.skipped)} skipped, {len(report.failures)} failures")
for name, r in report.max_residual.items():
    print(f"  {name:<10s} max residual {r:.1e}")

alpha = 0.3
for row in check_table(theorem4_table(alpha, a=2.0) + theorem5_table(alpha), alpha):
    print(f"  ({row.label:>3s}) {row.function:<28s} worst {row.max_residual:.1e} at t={row.worst_t}")
