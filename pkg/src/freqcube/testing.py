"""Testing sets for double-MDS-codes: a set T such that C ∩ T determines C.

The linear route: a unitrade D whose nonempty unitrade subsets never separate
two double-MDS-codes yields a testing set inside the complement of D of size
3**n - k_D, where 2**k_D counts the unitrade subsets of D.  Rows of the line
matrix are extended greedily by cell indicators until the rank reaches
4**n - k_D.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from pathlib import Path
from typing import Iterable, Sequence

import numpy as np

from . import gf2
from .cube import Q, CodeSet, ConfigurationError, array_to_bits, bits_to_array, classify_set, point_index

PROVENANCES = ("trivial", "derived-from-D", "product")


@dataclass(frozen=True)
class TestingSet:
    n: int
    points: CodeSet
    provenance: str = "trivial"

    __test__ = False  # not a pytest class

    def __len__(self) -> int:
        return len(self.points)

    def fingerprint(self, code: CodeSet) -> CodeSet:
        return code & self.points


@dataclass(frozen=True)
class SpecialUnitrade:
    D: CodeSet
    k_D: int

    @property
    def size(self) -> int:
        return len(self.D)


def trivial_testing_set(n: int) -> TestingSet:
    return TestingSet(n, CodeSet.from_points(n, itertools.product(range(3), repeat=n)), "trivial")


def unitrade_subspace(d: CodeSet) -> list[int]:
    """Basis (as bit masks) of the unitrades contained in d."""
    a = gf2.build_A(d.n)
    return gf2.nullspace(a.rows, a.ncols, support=d.bits)


def compute_kD(d: CodeSet) -> int:
    if not classify_set(d).is_unitrade:
        raise ValueError("k_D is defined for unitrades only")
    a = gf2.build_A(d.n)
    return len(d) - a.restrict_columns(d.bits).rank()


def unitrade_subsets(d: CodeSet) -> list[CodeSet]:
    return [CodeSet(d.n, x) for x in gf2.span(unitrade_subspace(d))]


def _contains(sorted_codes: np.ndarray, values: np.ndarray) -> np.ndarray:
    pos = np.searchsorted(sorted_codes, values)
    pos[pos == len(sorted_codes)] = 0
    return sorted_codes[pos] == values


def separates_codes(u: int, codes: np.ndarray) -> bool:
    """True if some code C has C xor u also a code."""
    return bool(_contains(codes, codes ^ np.uint64(u)).any())


def satisfies_hypothesis(d: CodeSet, codes: np.ndarray) -> bool:
    """No two distinct double-MDS-codes differ by a nonempty subset of d.

    The difference of two codes is always a unitrade, so this holds iff the
    codes stay distinct after deleting the cells of d.
    """
    return verify_testing_set(d.complement(), codes)


def satisfies_hypothesis_by_span(d: CodeSet, codes: np.ndarray, max_k: int = 16) -> bool:
    """Same test, enumerating the 2**k_D unitrade subsets of d."""
    basis = unitrade_subspace(d)
    if len(basis) > max_k:
        raise ConfigurationError(f"2**{len(basis)} subsets is too many to enumerate")
    codes = np.sort(np.asarray(codes, dtype=np.uint64))
    return not any(separates_codes(u, codes) for u in gf2.span(basis) if u)


def find_special_unitrades(unitrade_reps: Iterable[CodeSet], codes: np.ndarray,
                           min_k: int = 2) -> tuple[list[SpecialUnitrade], dict[int, int]]:
    """Class representatives with k_D >= min_k meeting the hypothesis; also the k_D histogram."""
    codes = np.sort(np.asarray(codes, dtype=np.uint64))
    found, hist = [], {}
    for d in unitrade_reps:
        if d.n > 3:
            raise ConfigurationError("the scan works on 64-cell masks (n <= 3)")
        k = compute_kD(d)
        hist[k] = hist.get(k, 0) + 1
        if k >= min_k and satisfies_hypothesis(d, codes):
            found.append(SpecialUnitrade(d, k))
    return found, hist


def derive_testing_set(special: SpecialUnitrade) -> TestingSet:
    """Greedy lexicographic choice of 3**n - k_D cells outside D completing the rank."""
    d, k = special.D, special.k_D
    n = d.n
    if compute_kD(d) != k:
        raise ValueError(f"k_D of D is {compute_kD(d)}, not {k}")
    size = Q**n
    basis = gf2.XorBasis(gf2.build_A(n).rows)
    target = size - k
    chosen = []
    for i in range(size):
        if len(basis) == target:
            break
        bit = 1 << (size - 1 - i)
        if d.bits & bit:
            continue
        if basis.add(bit):
            chosen.append(i)
    outside = (1 << size) - 1 & ~d.bits
    if len(basis) != target or any(basis.reduce(1 << b) for b in range(size) if outside >> b & 1):
        raise ValueError(f"rank stops at {len(basis)}, expected {target}: D is not a unitrade with k_D={k}")
    t = CodeSet.from_indices(n, chosen)
    assert len(t) == 3**n - k
    return TestingSet(n, t, "derived-from-D")


def verify_testing_set(t: TestingSet | CodeSet, codes: np.ndarray) -> bool:
    """Fingerprints C ∩ T pairwise distinct over all codes (given as uint64 masks, n <= 3)."""
    mask = t.points.bits if isinstance(t, TestingSet) else t.bits
    codes = np.asarray(codes, dtype=np.uint64)
    return len(np.unique(codes & np.uint64(mask))) == len(codes)


def reconstruct(t: TestingSet, values: CodeSet) -> CodeSet:
    """The double-MDS-code C with C ∩ T = values."""
    n = t.n
    if values.n != n or values.bits & ~t.points.bits:
        raise ValueError("values must be a subset of the testing set")
    a = gf2.build_A(n)
    size = Q**n
    rows = list(a.rows)
    rhs = [0] * len(rows)
    for i in t.points.indices():
        bit = 1 << (size - 1 - i)
        rows.append(bit)
        rhs.append(1 if values.bits & bit else 0)
    sol = gf2.solve_affine(rows, rhs, size)
    if sol is None:
        raise ValueError("values inconsistent with any code")
    x0, kernel = sol
    hits = [CodeSet(n, x0 ^ k) for k in gf2.span(kernel)]
    hits = [c for c in hits if classify_set(c).is_double_mds]
    if not hits:
        raise ValueError("values inconsistent with any code")
    if len(hits) > 1:
        raise ValueError("the point set does not determine the code")
    return hits[0]


def propagate_from_trivial(values: CodeSet) -> CodeSet:
    """Fill Sigma^n from a code's restriction to {0,1,2}^n, one line at a time."""
    n = values.n
    arr = bits_to_array(values.bits, n).astype(np.int8).reshape((Q,) * n)
    known = np.zeros_like(arr, dtype=bool)
    known[(slice(0, 3),) * n] = True
    if (arr[~known] != 0).any():
        raise ValueError("values outside {0,1,2}^n")
    pts = sorted(itertools.product(range(Q), repeat=n), key=lambda p: p.count(3))
    for p in pts:
        if known[p]:
            continue
        d = p.index(3)
        others = [p[:d] + (v,) + p[d + 1:] for v in range(3)]
        if not all(known[o] for o in others):
            raise AssertionError("propagation order broken")
        val = 2 - sum(int(arr[o]) for o in others)
        if val not in (0, 1):
            raise ValueError("values inconsistent with any code")
        arr[p] = val
        known[p] = True
    out = CodeSet(n, array_to_bits(arr.astype(bool)))
    if not classify_set(out).is_double_mds:
        raise ValueError("values inconsistent with any code")
    return out


def product_testing_set(t: TestingSet, l: int) -> TestingSet:
    """T^l inside Sigma^(n*l)."""
    if l < 1:
        raise ValueError("l >= 1")
    if l == 1:
        return t
    pts = t.points.points()
    prod = (sum(combo, ()) for combo in itertools.product(pts, repeat=l))
    return TestingSet(t.n * l, CodeSet.from_points(t.n * l, prod), "product")


def testing_set_size_bound(n: int, base: int = 25) -> int:
    """Size of the testing set built from T^l and 3 of 4 layers in the leftover directions."""
    if n < 3:
        raise ConfigurationError("the bound is stated for n >= 3")
    l, r = divmod(n, 3)
    return base**l * 3**r


def upper_bound(n: int) -> tuple[float, float]:
    """(alpha_n, log2 of the bound) with N_n <= 2**(alpha_n**n)."""
    size = testing_set_size_bound(n)
    return size ** (1.0 / n), float(size)


def double_code_difference_rank(codes: Sequence[int]) -> int:
    """Rank of {C xor C0} over a family of sets (the span of pairwise differences)."""
    codes = [int(c) for c in codes]
    if not codes:
        return 0
    c0 = codes[0]
    return gf2.rank(c ^ c0 for c in codes)


# ---------------------------------------------------------------------------
# Text format: header `n=<n> size=<size> provenance=<tag>`, then one point per line


def format_testing_set(t: TestingSet) -> str:
    lines = [f"n={t.n} size={len(t)} provenance={t.provenance}"]
    lines += [" ".join(str(x) for x in p) for p in t.points.points()]
    return "\n".join(lines) + "\n"


def parse_testing_set(text: str) -> TestingSet:
    rows = [r for r in text.splitlines() if r.strip()]
    if not rows:
        raise ValueError("empty testing-set file")
    try:
        head = dict(tok.split("=", 1) for tok in rows[0].split())
        n, size, prov = int(head["n"]), int(head["size"]), head["provenance"]
    except (KeyError, ValueError) as e:
        raise ValueError(f"line 1: bad header {rows[0]!r}") from e
    if prov not in PROVENANCES:
        raise ValueError(f"line 1: unknown provenance {prov!r}")
    pts = []
    for i, r in enumerate(rows[1:], start=2):
        try:
            p = tuple(int(x) for x in r.split())
            point_index(p)
        except ValueError as e:
            raise ValueError(f"line {i}: bad point {r!r}") from e
        if len(p) != n:
            raise ValueError(f"line {i}: point of length {len(p)}, expected {n}")
        pts.append(p)
    if pts != sorted(pts) or len(set(pts)) != len(pts):
        raise ValueError("points must be sorted and distinct")
    if len(pts) != size:
        raise ValueError(f"header says size={size}, found {len(pts)} points")
    return TestingSet(n, CodeSet.from_points(n, pts), prov)


def write_testing_set(t: TestingSet, path: str | Path) -> None:
    Path(path).write_text(format_testing_set(t), encoding="utf-8", newline="\n")


def read_testing_set(path: str | Path) -> TestingSet:
    return parse_testing_set(Path(path).read_text(encoding="utf-8"))
