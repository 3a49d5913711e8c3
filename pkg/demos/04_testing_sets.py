"""Testing sets: few cells that already determine a double-MDS-code.

Run: python demos/04_testing_sets.py   (about a minute)
"""
import numpy as np

from freqcube import testing
from freqcube.classifier import all_codes, classify_upto
from freqcube.cube import CodeSet
from freqcube.gf2 import build_A

# Every unitrade is in the kernel of the line matrix A, whose rank is 4^n - 3^n.
for n in range(1, 5):
    print(f"n={n}: rank A = {build_A(n).rank()} = 4^n - 3^n = {4**n - 3**n}")

codes = all_codes(classify_upto(3, "dmds")[-1])
unitrades = classify_upto(3, "unitrade")[-1]

t27 = testing.trivial_testing_set(3)
print("{0,1,2}^3 separates all codes:", testing.verify_testing_set(t27, codes))

# Look for a unitrade D whose unitrade subsets never connect two codes.
special, hist = testing.find_special_unitrades(unitrades.representatives, codes)
print("classes by k_D:", hist)
for s in special:
    t = testing.derive_testing_set(s)
    print(f"|D|={s.size} k_D={s.k_D}: testing set of size {len(t)}, "
          f"separates all codes: {testing.verify_testing_set(t, codes)}")

# Reconstruct a random code from its 25 visible cells.
t = testing.derive_testing_set(special[0])
code = CodeSet(3, int(np.random.default_rng(0).choice(codes)))
seen = code & t.points
print("recovered:", testing.reconstruct(t, seen) == code)
print(testing.format_testing_set(t))

# Products of the size-25 set give the upper bound 2^(alpha^n) on the number of codes.
for n in range(3, 10):
    alpha, size = testing.upper_bound(n)
    print(f"n={n}: testing set of size {int(size)}, alpha = {alpha:.6f}")
