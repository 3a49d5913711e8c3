"""Splittable and non-splittable double-MDS-codes.

A double-MDS-code is splittable when its cells can be 2-coloured so that no
two adjacent cells share a colour; the colour classes are then MDS codes.
Run: python demos/03_splittability.py
"""
import itertools

from freqcube import CodeSet
from freqcube.classifier import all_codes, classify_upto
from freqcube.split import (construct_nonsplittable, cycle_edges, is_splittable, layer_splittability_census,
                            nonsplittable_cycle, splittable)

c3 = classify_upto(3)[-1]
print(layer_splittability_census(c3.representatives).summary())

# Cross-check against latin squares: a splittable code is the union of two
# disjoint latin squares of order 4, seen as MDS codes in H(3,4).
rows = list(itertools.permutations(range(4)))
squares = [s for s in itertools.product(rows, repeat=4)
           if all(len({r[j] for r in s}) == 4 for j in range(4))]
masks = [sum(1 << (63 - 16 * x - 4 * y - z) for x, r in enumerate(s) for y, z in enumerate(r)) for s in squares]
unions = {a | b for a, b in itertools.combinations(masks, 2) if not a & b}
print(len(squares), "latin squares,", len(unions), "unions of two disjoint ones")
print("splittable codes in the catalog:", sum(splittable(CodeSet(3, int(m))) for m in all_codes(c3)))

# The construction: all layers split but the code does not; the proof is an
# odd cycle of adjacent cells inside the code.
for n in range(3, 7):
    code = construct_nonsplittable(n)
    cyc = nonsplittable_cycle(n)
    print(f"n={n}: splittable={splittable(code)}, cycle of length {len(cyc)}")
print("edges (direction, colour) of the n=3 cycle:", cycle_edges(nonsplittable_cycle(3)))

# A witness found by the 2-colouring search instead of the construction.
bad = next(r for r in c3.records if not r.splittable)
print("witness cycle:", is_splittable(bad.representative).witness_cycle)
