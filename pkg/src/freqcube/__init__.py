"""Double-MDS-codes, unitrades and double-codes in the Hamming graph H(n, 4).

A double-MDS-code meets every line of the 4 x ... x 4 cube in exactly two
cells; its characteristic function is a frequency hypercube F^n(4;2,2).
"""
from .cube import (KINDS, CodeSet, ConfigurationError, Line, classify_set, complement, enumerate_lines,
                   is_double_code, is_double_mds, is_unitrade, layer, layers, stack_layers)
from .symmetry import (GroupSummary, Transform, apply, aut_order, atop_order, canonical_form, canonical_rep,
                       complement_flags, equivalent, group_order, isotopy_canonical_form)
from .classifier import (ClassRecord, Classification, ComputeBudget, classify, classify_upto,
                         validate_double_count)
from .gf2 import build_A, kernel_basis, unitrade_from_core
from .split import construct_nonsplittable, is_splittable, nonsplittable_cycle, splittable
from .testing import (TestingSet, compute_kD, derive_testing_set, find_special_unitrades, reconstruct,
                      trivial_testing_set, upper_bound, verify_testing_set)
from .catalog import CatalogFile, read_catalog, render_tables, write_catalog

__version__ = "0.1.0"
