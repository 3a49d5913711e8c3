"""Double-MDS-codes, double-codes and unitrades on the 4 x 4 grid.

Run: python demos/01_small_cases.py
"""
import numpy as np

from freqcube import CodeSet, canonical_form, classify_set, complement
from freqcube.split import is_splittable

# A set of cells is a double-MDS-code when every row and column holds exactly
# two of its cells. Here is one, drawn with the first coordinate as the row.
code = CodeSet.from_points(2, [(0, 0), (0, 1), (1, 0), (1, 2), (2, 1), (2, 3), (3, 2), (3, 3)])
print(code.to_array().astype(int))
print(classify_set(code))

# It falls apart into two permutation matrices (MDS codes), so it is splittable.
a, b = is_splittable(code).parts
print("parts:", a.points(), b.points(), sep="\n  ")

# Count everything by brute force over all 2^16 subsets of the grid.
kinds = [classify_set(CodeSet(2, bits)) for bits in range(2**16)]
print("double-MDS-codes:", sum(k.is_double_mds for k in kinds))
print("double-codes:    ", sum(k.is_double_code for k in kinds))
print("unitrades:       ", sum(k.is_unitrade for k in kinds))

# Equivalence: permute symbols in each coordinate and swap the coordinates.
reps = {canonical_form(CodeSet(2, bits))[0] for bits, k in enumerate(kinds) if k.is_double_mds}
for rep in sorted(reps):
    _, g = canonical_form(rep)
    print(rep.to_hex(), "|Aut| =", g.aut_order, "class size =", 1152 // g.aut_order)

# The complement of a double-MDS-code is again one (2 of 4 cells per line).
print("complement is double-MDS:", classify_set(complement(code)).is_double_mds)

# A unitrade that is not a double-code: a full row plus a few pairs.
hook = CodeSet.from_points(2, [(0, 0), (0, 1), (1, 0), (1, 2), (2, 0), (2, 3), (3, 0), (3, 1), (3, 2), (3, 3)])
print(np.asarray(hook.to_array(), dtype=int))
print(classify_set(hook), "complement:", classify_set(complement(hook)))
