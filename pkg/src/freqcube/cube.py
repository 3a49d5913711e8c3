"""Points, lines and code sets in the Hamming graph H(n, 4).

A code set is stored as a Python int of ``4**n`` bits.  Cells are indexed
lexicographically, ``idx(t) = sum(t[i] * 4**(n-1-i))``, and the cell with
index 0 sits in the most significant bit.  Comparing two sets of the same
dimension as ints is therefore the same as comparing their bit vectors
lexicographically.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Iterator, NamedTuple, Sequence

import numpy as np

Q = 4
MAX_N = 8


class ConfigurationError(ValueError):
    """Raised for a dimension or parameter outside the supported range."""


def check_dimension(n: int, lo: int = 1, hi: int = MAX_N) -> None:
    if not isinstance(n, (int, np.integer)) or not lo <= n <= hi:
        raise ConfigurationError(f"dimension n={n!r} outside [{lo}, {hi}]")


def point_index(point: Sequence[int]) -> int:
    idx = 0
    for t in point:
        if not 0 <= t < Q:
            raise ValueError(f"symbol {t!r} not in 0..3")
        idx = idx * Q + int(t)
    return idx


def index_point(idx: int, n: int) -> tuple[int, ...]:
    if not 0 <= idx < Q**n:
        raise ValueError(f"index {idx} out of range for n={n}")
    out = []
    for _ in range(n):
        idx, t = divmod(idx, Q)
        out.append(t)
    return tuple(reversed(out))


@lru_cache(maxsize=None)
def all_points(n: int) -> np.ndarray:
    """All of Sigma^n as an int8 array of shape (4**n, n), in index order."""
    grids = np.indices((Q,) * n).reshape(n, -1).T
    out = np.ascontiguousarray(grids, dtype=np.int8)
    out.flags.writeable = False
    return out


class Line(NamedTuple):
    direction: int  # 0-based coordinate
    base: tuple[int, ...]  # base[direction] == 0

    def points(self) -> list[tuple[int, ...]]:
        pts = []
        for v in range(Q):
            p = list(self.base)
            p[self.direction] = v
            pts.append(tuple(p))
        return pts

    def indices(self) -> list[int]:
        return [point_index(p) for p in self.points()]


def enumerate_lines(n: int) -> list[Line]:
    """All n * 4**(n-1) lines, direction-major, bases in lexicographic order."""
    check_dimension(n)
    lines = []
    for d in range(n):
        for rest in all_points(n - 1) if n > 1 else [()]:
            base = list(int(x) for x in rest)
            base.insert(d, 0)
            lines.append(Line(d, tuple(base)))
    return lines


@lru_cache(maxsize=None)
def line_index_matrix(n: int) -> np.ndarray:
    """(n * 4**(n-1), 4) array of cell indices, one row per line, same order as enumerate_lines."""
    check_dimension(n)
    idx = np.arange(Q**n).reshape((Q,) * n)
    rows = [np.moveaxis(idx, d, -1).reshape(-1, Q) for d in range(n)]
    out = np.ascontiguousarray(np.concatenate(rows))
    out.flags.writeable = False
    return out


def _nbytes(n: int) -> int:
    return max(1, Q**n // 8)


def bits_to_array(bits: int, n: int) -> np.ndarray:
    """Flat bool array of length 4**n, entry i = membership of cell index i."""
    size = Q**n
    pad = _nbytes(n) * 8 - size
    raw = np.frombuffer((bits << pad).to_bytes(_nbytes(n), "big"), dtype=np.uint8)
    return np.unpackbits(raw)[:size].astype(bool)


def array_to_bits(arr: np.ndarray) -> int:
    flat = np.asarray(arr, dtype=bool).ravel()
    size = flat.size
    packed = np.packbits(flat)
    pad = len(packed) * 8 - size
    return int.from_bytes(packed.tobytes(), "big") >> pad


@dataclass(frozen=True, order=True)
class CodeSet:
    """A subset of Sigma^n stored as a 4**n-bit integer (cell 0 = MSB)."""

    n: int
    bits: int

    def __post_init__(self):
        check_dimension(self.n)
        if self.bits < 0 or self.bits >> (Q**self.n):
            raise ValueError(f"bit vector does not fit 4**{self.n} cells")

    # construction
    @classmethod
    def empty(cls, n: int) -> "CodeSet":
        return cls(n, 0)

    @classmethod
    def full(cls, n: int) -> "CodeSet":
        return cls(n, (1 << Q**n) - 1)

    @classmethod
    def from_points(cls, n: int, points: Iterable[Sequence[int]]) -> "CodeSet":
        size = Q**n
        bits = 0
        for p in points:
            if len(p) != n:
                raise ValueError(f"point {tuple(p)} has wrong length for n={n}")
            bits |= 1 << (size - 1 - point_index(p))
        return cls(n, bits)

    @classmethod
    def from_indices(cls, n: int, indices: Iterable[int]) -> "CodeSet":
        size = Q**n
        bits = 0
        for i in indices:
            if not 0 <= i < size:
                raise ValueError(f"index {i} out of range")
            bits |= 1 << (size - 1 - int(i))
        return cls(n, bits)

    @classmethod
    def from_array(cls, arr: np.ndarray) -> "CodeSet":
        arr = np.asarray(arr)
        if arr.ndim == 0 or any(s != Q for s in arr.shape):
            raise ValueError(f"expected shape (4,)*n, got {arr.shape}")
        return cls(arr.ndim, array_to_bits(arr))

    @classmethod
    def from_hex(cls, n: int, text: str) -> "CodeSet":
        text = text.strip().lower()
        if len(text) != Q ** (n - 1):
            raise ValueError(f"expected {Q ** (n - 1)} hex digits for n={n}, got {len(text)}")
        return cls(n, int(text, 16))

    # views
    def to_hex(self) -> str:
        return format(self.bits, f"0{Q ** (self.n - 1)}x")

    def to_array(self) -> np.ndarray:
        return bits_to_array(self.bits, self.n).reshape((Q,) * self.n)

    def indices(self) -> list[int]:
        return [int(i) for i in np.flatnonzero(bits_to_array(self.bits, self.n))]

    def points(self) -> list[tuple[int, ...]]:
        return [index_point(i, self.n) for i in self.indices()]

    def __len__(self) -> int:
        return self.bits.bit_count() if hasattr(int, "bit_count") else bin(self.bits).count("1")

    def __iter__(self) -> Iterator[tuple[int, ...]]:
        return iter(self.points())

    def __contains__(self, point) -> bool:
        return bool(self.bits >> (Q**self.n - 1 - point_index(point)) & 1)

    # set algebra
    def _same(self, other: "CodeSet") -> None:
        if self.n != other.n:
            raise ValueError(f"dimension mismatch: {self.n} vs {other.n}")

    def complement(self) -> "CodeSet":
        return CodeSet(self.n, self.bits ^ ((1 << Q**self.n) - 1))

    def __xor__(self, other: "CodeSet") -> "CodeSet":
        self._same(other)
        return CodeSet(self.n, self.bits ^ other.bits)

    def __and__(self, other: "CodeSet") -> "CodeSet":
        self._same(other)
        return CodeSet(self.n, self.bits & other.bits)

    def __or__(self, other: "CodeSet") -> "CodeSet":
        self._same(other)
        return CodeSet(self.n, self.bits | other.bits)

    def issubset(self, other: "CodeSet") -> bool:
        self._same(other)
        return self.bits & ~other.bits == 0

    def layer(self, direction: int, value: int) -> "CodeSet":
        return layer(self, direction, value)

    def __repr__(self) -> str:
        return f"CodeSet(n={self.n}, size={len(self)}, hex={self.to_hex()})"


def complement(s: CodeSet) -> CodeSet:
    return s.complement()


def layer(s: CodeSet, direction: int, value: int) -> CodeSet:
    """Cells of `s` with coordinate `direction` equal to `value`, that coordinate dropped."""
    if s.n < 2:
        raise ConfigurationError("layers need n >= 2")
    if not 0 <= direction < s.n or not 0 <= value < Q:
        raise ValueError(f"bad layer ({direction}, {value}) for n={s.n}")
    return CodeSet(s.n - 1, array_to_bits(s.to_array().take(value, axis=direction)))


def layers(s: CodeSet) -> list[list[CodeSet]]:
    """layers(s)[d][v] for every direction d and value v."""
    arr = s.to_array()
    return [[CodeSet(s.n - 1, array_to_bits(arr.take(v, axis=d))) for v in range(Q)]
            for d in range(s.n)]


def stack_layers(parts: Sequence[CodeSet], direction: int | None = None) -> CodeSet:
    """Inverse of `layer`: assemble 4 sets of dimension n-1 along `direction` (default: last)."""
    if len(parts) != Q:
        raise ValueError("need exactly four layers")
    m = parts[0].n
    for p in parts:
        if p.n != m:
            raise ValueError("layers of different dimensions")
    d = m if direction is None else direction
    arr = np.stack([p.to_array() for p in parts], axis=d)
    return CodeSet.from_array(arr)


@dataclass(frozen=True)
class SetKind:
    is_unitrade: bool
    is_double_code: bool
    is_double_mds: bool


def line_counts(s: CodeSet) -> np.ndarray:
    """|S ∩ L| for every line, in enumerate_lines order."""
    arr = bits_to_array(s.bits, s.n)
    return arr[line_index_matrix(s.n)].sum(axis=1)


def classify_set(s: CodeSet, diagnostic: bool = False) -> SetKind:
    """Line-count classification.  Stops at the first odd line unless `diagnostic`."""
    arr = s.to_array()
    uni = dbl = mds = True
    for d in range(s.n):
        c = arr.sum(axis=d)
        if uni and (c & 1).any():
            uni = dbl = mds = False
            if not diagnostic:
                break
        dbl = dbl and not (c == 4).any()
        mds = mds and bool((c == 2).all())
    return SetKind(uni, dbl and uni, mds and uni)


def is_double_mds(s: CodeSet) -> bool:
    return classify_set(s).is_double_mds


def is_unitrade(s: CodeSet) -> bool:
    return classify_set(s).is_unitrade


def is_double_code(s: CodeSet) -> bool:
    return classify_set(s).is_double_code


KINDS = ("dmds", "unitrade", "doublecode")


def has_kind(s: CodeSet, kind: str) -> bool:
    k = classify_set(s)
    if kind == "dmds":
        return k.is_double_mds
    if kind == "unitrade":
        return k.is_unitrade
    if kind == "doublecode":
        return k.is_double_code
    raise ConfigurationError(f"unknown kind {kind!r}; expected one of {KINDS}")
