"""The wavelet machinery behind the mask.

Shows the two built-in orthogonal bases, a two-level decomposition of the
demo difference signal, the explicit reconstruction matrices (whose columns
reveal which signal positions each approximation coefficient controls), and
the key theorem of the whole approach: replacing approximation coefficients
never touches the detail coefficients.
"""

import numpy as np

from groupmask import decompose, make_basis, reconstruct, reconstruction_matrix
from groupmask.datasets import ITALY_2001

np.set_printoptions(precision=4, suppress=True, linewidth=120)

population = np.array(ITALY_2001.population, dtype=float)
delta = (np.array(ITALY_2001.young_males) - np.array(ITALY_2001.young_females)) / population

for name in ("db1", "db2"):
    basis = make_basis(name)
    print(f"\n=== basis {name}: low-pass {np.array(basis.lowpass)} ===")

    dec = decompose(delta, basis, 2)
    print(f"level-2 approximation coefficients: {dec.approx}")
    print(f"detail lengths per level: {[len(d) for d in dec.details]}")
    print(f"round-trip error: {np.max(np.abs(reconstruct(dec) - delta)):.2e}")

    matrix = reconstruction_matrix(basis, len(delta), 2)
    print(f"reconstruction matrix {matrix.shape}, first column:")
    print(matrix.entries[:, 0])

print("""
Reading the columns: with db1 each coefficient controls a block of four
neighboring signal values and nothing else, which is ideal for planting
alleged extremums; db2 columns overlap and wrap around the signal ends
(periodic boundary), which suits shifting an extremum elsewhere.
""")

# the detail-preservation theorem, demonstrated numerically
basis = make_basis("db2")
dec = decompose(delta, basis, 2)
matrix = reconstruction_matrix(basis, 20, 2)
replacement = np.array([0.0032, 0.0032, 0.0, 0.0032, 0.0])
masked = matrix @ replacement + (delta - matrix @ dec.approx)
dec_masked = decompose(masked, basis, 2)
print("after swapping coefficients and keeping the old details:")
print(f"  recovered coefficients == replacement: "
      f"{np.max(np.abs(dec_masked.approx - replacement)):.2e}")
for level, (d_new, d_old) in enumerate(zip(dec_masked.details, dec.details), start=1):
    print(f"  level-{level} details unchanged: {np.max(np.abs(d_new - d_old)):.2e}")
