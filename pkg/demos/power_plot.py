"""
Half-order derivatives of t and t^2
===================================

Emit the plot data as CSV; any plotting tool can draw it.
"""

import csv
import sys

from alphafrac.cli import PLOT_HEADER, plot_rows

writer = csv.writer(sys.stdout)
writer.writerow(("nu",) + PLOT_HEADER)
for nu in (1, 2):
    for row in plot_rows(f"t^{nu}", 0.5, 0.1, 3.0, 50):
        writer.writerow([nu] + [f"{v:.17g}" for v in row.values()])
