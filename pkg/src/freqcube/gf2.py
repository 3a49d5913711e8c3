"""GF(2) linear algebra on bit rows, and the line-constraint matrix of H(n, 4).

Rows are Python ints.  Column j of a matrix with `ncols` columns is bit
``ncols - 1 - j``, the same convention as CodeSet, so the indicator vector of
a set of cells is just its ``bits``.
"""
from __future__ import annotations

import functools
import itertools
from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from .cube import Q, CodeSet, check_dimension, line_index_matrix

MAX_A_N = 6


def _parity(x: int) -> int:
    return bin(x).count("1") & 1


@dataclass(frozen=True)
class Gf2Matrix:
    rows: tuple[int, ...]
    ncols: int

    @property
    def nrows(self) -> int:
        return len(self.rows)

    @classmethod
    def from_dense(cls, arr) -> "Gf2Matrix":
        arr = np.asarray(arr, dtype=np.uint8) & 1
        ncols = arr.shape[1]
        rows = tuple(int("".join(map(str, r)) or "0", 2) for r in arr.tolist())
        return cls(rows, ncols)

    @classmethod
    def identity(cls, m: int) -> "Gf2Matrix":
        return cls(tuple(1 << (m - 1 - i) for i in range(m)), m)

    @classmethod
    def zeros(cls, nrows: int, ncols: int) -> "Gf2Matrix":
        return cls((0,) * nrows, ncols)

    def to_dense(self) -> np.ndarray:
        out = np.zeros((self.nrows, self.ncols), dtype=np.uint8)
        for i, r in enumerate(self.rows):
            for j in range(self.ncols):
                out[i, j] = r >> (self.ncols - 1 - j) & 1
        return out

    def vstack(self, other: "Gf2Matrix") -> "Gf2Matrix":
        if other.ncols != self.ncols:
            raise ValueError("column counts differ")
        return Gf2Matrix(self.rows + other.rows, self.ncols)

    def mul(self, x: int) -> int:
        """M x for a column vector given as a bit row; result as a bit row of length nrows."""
        out = 0
        for r in self.rows:
            out = (out << 1) | _parity(r & x)
        return out

    def restrict_columns(self, mask: int) -> "Gf2Matrix":
        return Gf2Matrix(tuple(r & mask for r in self.rows), self.ncols)

    def rank(self) -> int:
        return rank(self.rows)


class XorBasis:
    """Incremental row space, keyed by leading bit; supports rank-extension queries."""

    def __init__(self, rows: Iterable[int] = ()):
        self.pivots: dict[int, int] = {}
        for r in rows:
            self.add(r)

    def reduce(self, r: int) -> int:
        while r:
            h = r.bit_length() - 1
            p = self.pivots.get(h)
            if p is None:
                return r
            r ^= p
        return 0

    def add(self, r: int) -> bool:
        r = self.reduce(r)
        if r:
            self.pivots[r.bit_length() - 1] = r
            return True
        return False

    def __contains__(self, r: int) -> bool:
        return self.reduce(r) == 0

    def __len__(self) -> int:
        return len(self.pivots)


def rank(rows: Iterable[int] | Gf2Matrix) -> int:
    if isinstance(rows, Gf2Matrix):
        rows = rows.rows
    return len(XorBasis(rows))


def _rref(rows: Sequence[int]) -> list[int]:
    """Fully reduced row echelon form: every pivot bit appears in exactly one row."""
    basis = XorBasis(rows)
    piv = sorted(basis.pivots, reverse=True)
    red = {h: basis.pivots[h] for h in piv}
    for h in piv:  # clear bit h from every other row
        r = red[h]
        for h2 in piv:
            if h2 != h and red[h2] >> h & 1:
                red[h2] ^= r
    return [red[h] for h in piv]


def nullspace(rows: Sequence[int], ncols: int, support: int | None = None) -> list[int]:
    """Basis of {x : M x = 0, supp(x) inside `support`} (default: all columns)."""
    if support is None:
        support = (1 << ncols) - 1
    red = _rref([r & support for r in rows])
    pivots = {r.bit_length() - 1: r for r in red}
    basis = []
    for b in range(ncols):
        if not support >> b & 1 or b in pivots:
            continue
        v = 1 << b
        for h, r in pivots.items():
            if r >> b & 1:
                v |= 1 << h
        basis.append(v)
    return basis


def solve_affine(rows: Sequence[int], rhs: Sequence[int], ncols: int) -> tuple[int, list[int]] | None:
    """One solution x of M x = rhs and a nullspace basis, or None if inconsistent."""
    aug = [(r << 1) | (b & 1) for r, b in zip(rows, rhs)]
    red = _rref(aug)
    x = 0
    for r in red:
        h = r.bit_length() - 1
        if h == 0:
            return None  # 0 = 1
        if r & 1:
            x |= 1 << (h - 1)
    return x, nullspace(rows, ncols)


def span(basis: Sequence[int]) -> list[int]:
    out = [0]
    for b in basis:
        out += [x ^ b for x in out]
    return out


# ---------------------------------------------------------------------------
# The constraint matrix A: one row per line, ones on the line's four cells


@functools.lru_cache(maxsize=None)
def build_A(n: int) -> Gf2Matrix:
    check_dimension(n, 1, MAX_A_N)
    size = Q**n
    rows = tuple(sum(1 << (size - 1 - int(i)) for i in line) for line in line_index_matrix(n))
    return Gf2Matrix(rows, size)


def kernel_basis(n: int) -> list[CodeSet]:
    """The sets D_a, a in {1,2,3}^n: a with any subset of its coordinates zeroed."""
    check_dimension(n, 1, MAX_A_N)
    return [basis_set(a) for a in itertools.product(range(1, Q), repeat=n)]


def basis_set(a: Sequence[int]) -> CodeSet:
    n = len(a)
    if any(not 1 <= x < Q for x in a):
        raise ValueError(f"{tuple(a)} is not in {{1,2,3}}^n")
    pts = itertools.product(*[(0, x) for x in a])
    return CodeSet.from_points(n, pts)


def nonzero_cells(n: int) -> CodeSet:
    """{1,2,3}^n."""
    return CodeSet.from_points(n, itertools.product(range(1, Q), repeat=n))


def unitrade_from_core(n: int, core: CodeSet | Iterable[Sequence[int]]) -> CodeSet:
    """The unique unitrade whose cells without zero coordinates are exactly `core`."""
    pts = core.points() if isinstance(core, CodeSet) else [tuple(p) for p in core]
    bits = 0
    for a in pts:
        if len(a) != n:
            raise ValueError(f"point {a} has wrong length")
        bits ^= basis_set(a).bits
    return CodeSet(n, bits)


def core_of(u: CodeSet) -> CodeSet:
    return u & nonzero_cells(u.n)


def is_unitrade_linear(s: CodeSet) -> bool:
    return build_A(s.n).mul(s.bits) == 0
