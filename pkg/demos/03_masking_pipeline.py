"""The full masking pipeline on the demo scenario, both bases.

db1 plants two alleged peaks next to the real one (which is lowered);
db2 moves the peak to the other end of the signal.  Both runs preserve
every wavelet detail of the difference signal and the exact totals of both
respondent groups.
"""

import numpy as np

from groupmask import DifferenceContext, extremum_report, make_basis, run_masking
from groupmask.datasets import ITALY_2001

np.set_printoptions(precision=4, suppress=True, linewidth=120)

population = np.array(ITALY_2001.population, dtype=float)
males = np.array(ITALY_2001.young_males, dtype=float)
females = np.array(ITALY_2001.young_females, dtype=float)


def run(name, replacement):
    ctx = DifferenceContext(
        c1=males / population, c2=females / population, superset=population,
        q1=males, q2=females, basis=make_basis(name), level=2,
    )
    result = run_masking(ctx, replacement, alpha=1.0)
    print(f"\n=== {name}: replacement coefficients {replacement} ===")
    print(f"difference before: {result.delta}")
    print(f"difference after:  {result.delta_new}")
    print("extremums before:", [(i, f"{v:.4f}") for i, v in extremum_report(result.delta, 3)])
    print("extremums after: ", [(i, f"{v:.4f}") for i, v in extremum_report(result.delta_new, 3)])
    print(f"scale factors: main {result.scale1:.4f}, subordinate {result.scale2:.4f}")
    print(f"male counts:   sum {int(result.q1_new.sum())} (was {int(males.sum())}), "
          f"first regions {result.q1_new[:4]}")
    print(f"female counts: sum {int(result.q2_new.sum())} (was {int(females.sum())})")
    print(f"detail drift from integer rounding: main {result.detail_drift1:.3f}, "
          f"subordinate {result.detail_drift2:.3f} (in record units)")
    return result


run("db1", np.array([0.0032, 0.0018, 0.0019, 0.0018, 0.0009]))
run("db2", np.array([0.0032, 0.0032, 0.0, 0.0032, 0.0]))

print("""
With alpha = 1 the subordinate (female) side stays untouched and the whole
reshaping is carried by the male side.  Lower alpha splits the change
between both sides; any choice keeps the new difference signal exact.
""")
