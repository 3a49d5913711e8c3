"""Splittability of double-codes, the three-colouring of edges of H(n, 4), and
a non-splittable double-MDS-code whose layers all split."""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from typing import Iterable, Optional, Sequence

import numpy as np

from .cube import Q, CodeSet, ConfigurationError, all_points, bits_to_array, classify_set, layers

# colour of an edge whose endpoints carry symbols a != b in the changing coordinate
_COLOR = {frozenset(p): c for c, pairs in {1: [(0, 1), (2, 3)], 2: [(0, 2), (1, 3)], 3: [(0, 3), (1, 2)]}.items()
          for p in pairs}


def edge_color(a: int, b: int) -> int:
    if a == b:
        raise ValueError("an edge joins two different symbols")
    return _COLOR[frozenset((a, b))]


@dataclass
class SplitResult:
    splittable: bool
    parts: Optional[tuple[CodeSet, CodeSet]] = None
    witness_cycle: Optional[list[tuple[int, ...]]] = None

    def __bool__(self) -> bool:
        return self.splittable


def _neighbors(idx: int, n: int, member: np.ndarray):
    for d in range(n):
        step = Q ** (n - 1 - d)
        base = idx - ((idx // step) % Q) * step
        for v in range(Q):
            j = base + v * step
            if j != idx and member[j]:
                yield j


def two_coloring(s: CodeSet) -> tuple[Optional[np.ndarray], Optional[list[int]]]:
    """BFS 2-colouring of the subgraph induced by `s`.

    Returns (colour array over cell indices, None) or (None, odd cycle as cell indices).
    """
    n = s.n
    member = bits_to_array(s.bits, n)
    color = np.full(member.size, -1, dtype=np.int8)
    parent = np.full(member.size, -1, dtype=np.int64)
    for root in np.flatnonzero(member):
        if color[root] >= 0:
            continue
        color[root] = 0
        queue = deque([int(root)])
        while queue:
            u = queue.popleft()
            for w in _neighbors(u, n, member):
                if color[w] < 0:
                    color[w] = 1 - color[u]
                    parent[w] = u
                    queue.append(w)
                elif color[w] == color[u]:
                    return None, _splice(u, w, parent)
    return color, None


def _splice(u: int, w: int, parent: np.ndarray) -> list[int]:
    pu = [u]
    while parent[pu[-1]] >= 0:
        pu.append(int(parent[pu[-1]]))
    pw = [w]
    while parent[pw[-1]] >= 0:
        pw.append(int(parent[pw[-1]]))
    seen = {x: i for i, x in enumerate(pu)}
    for j, x in enumerate(pw):
        if x in seen:
            return pu[: seen[x] + 1] + pw[:j][::-1]
    raise AssertionError("BFS trees of one component share a root")


def is_splittable(s: CodeSet) -> SplitResult:
    kind = classify_set(s)
    if not kind.is_double_code:
        raise ValueError("splittability is only defined for double-codes")
    color, cycle = two_coloring(s)
    pts = all_points(s.n)
    if cycle is not None:
        return SplitResult(False, witness_cycle=[tuple(int(x) for x in pts[i]) for i in cycle])
    a = CodeSet.from_indices(s.n, np.flatnonzero(color == 0))
    b = CodeSet.from_indices(s.n, np.flatnonzero(color == 1))
    return SplitResult(True, parts=(a, b))


def splittable(s: CodeSet) -> bool:
    return two_coloring(s)[0] is not None


def _adjacent_direction(x: Sequence[int], y: Sequence[int]) -> int:
    diff = [i for i, (a, b) in enumerate(zip(x, y)) if a != b]
    if len(diff) != 1:
        raise ValueError(f"{tuple(x)} and {tuple(y)} are not adjacent")
    return diff[0]


def cycle_edges(cycle: Sequence[Sequence[int]]) -> list[tuple[int, int]]:
    """(direction, colour) of each edge of a closed cycle; validates the cycle."""
    if len(cycle) < 3:
        raise ValueError("a cycle needs at least three vertices")
    if len({tuple(p) for p in cycle}) != len(cycle):
        raise ValueError("cycle repeats a vertex")
    out = []
    for i in range(len(cycle)):
        x, y = cycle[i], cycle[(i + 1) % len(cycle)]
        d = _adjacent_direction(x, y)
        out.append((d, edge_color(x[d], y[d])))
    return out


def odd_cycle_color_check(cycle: Sequence[Sequence[int]]) -> bool:
    """True iff some direction carries edges of all three colours."""
    per_dir: dict[int, set[int]] = {}
    for d, c in cycle_edges(cycle):
        per_dir.setdefault(d, set()).add(c)
    return any(len(cs) == 3 for cs in per_dir.values())


# ---------------------------------------------------------------------------
# Construction

_ALPHA = (1, 1, 0, 0)
_BETA = (1, 0, 1, 0)
_GAMMA = (0, 1, 1, 0)


def nonsplittable_function(n: int) -> np.ndarray:
    """The 0/1 array f over Sigma^n, shape (4,)*n."""
    if n < 3:
        raise ConfigurationError("the construction needs n >= 3")
    pts = all_points(n).astype(np.int64)
    head, last = pts[:, :-1], pts[:, -1]
    parity = head.sum(axis=1) & 1
    high = head >= 2  # sector coordinate is 2
    k = high.sum(axis=1)
    prefix = high.cumprod(axis=1).sum(axis=1) == k  # the twos form a prefix
    alpha, beta, gamma = (np.array(t)[last] for t in (_ALPHA, _BETA, _GAMMA))
    f = parity ^ beta  # otherwise
    zero = k == 0
    allhigh = k == n - 1
    partial = prefix & (k >= 1) & (k <= n - 2)
    f = np.where(zero, parity ^ alpha, f)
    f = np.where(partial, parity ^ beta ^ 1, f)
    f = np.where(allhigh, parity ^ gamma, f)
    return f.reshape((Q,) * n).astype(bool)


def construct_nonsplittable(n: int) -> CodeSet:
    return CodeSet.from_array(nonsplittable_function(n))


def nonsplittable_cycle(n: int) -> list[tuple[int, ...]]:
    """The odd cycle of length 2n+1 inside construct_nonsplittable(n)."""
    if n < 3:
        raise ConfigurationError("the construction needs n >= 3")
    m = n - 1
    cyc = [(0,) * m + (0,), (0,) * m + (1,)]
    for k in range(1, m):
        cyc.append((2,) * k + (0,) * (m - k) + (1,))
    cyc += [(2,) * m + (1,), (2,) * m + (2,)]
    cyc.append((0,) + (2,) * (m - 1) + (2,))
    for k in range(m - 1, 0, -1):
        cyc.append((0,) * (m - k) + (2,) * k + (0,))
    return cyc


def sector(x: Sequence[int]) -> tuple[int, ...]:
    return tuple(2 * (t >= 2) for t in x[:-1]) + (0,)


# ---------------------------------------------------------------------------
# Census over a catalog


@dataclass
class CensusRow:
    representative: CodeSet
    splittable: bool
    layers_splittable: bool

    @property
    def exceptional(self) -> bool:
        return self.layers_splittable and not self.splittable

    @property
    def violation(self) -> bool:
        return self.splittable and not self.layers_splittable


@dataclass
class CensusReport:
    n: int
    rows: list[CensusRow] = field(default_factory=list)

    @property
    def exceptional(self) -> list[CensusRow]:
        return [r for r in self.rows if r.exceptional]

    @property
    def violations(self) -> int:
        return sum(r.violation for r in self.rows)

    @property
    def splittable_count(self) -> int:
        return sum(r.splittable for r in self.rows)

    def summary(self) -> str:
        return (f"n={self.n} classes={len(self.rows)} splittable={self.splittable_count} "
                f"all-layers-splittable-but-not-splittable={len(self.exceptional)} "
                f"splittable-with-bad-layer={self.violations}")


def layers_all_splittable(s: CodeSet) -> bool:
    return all(splittable(lay) for row in layers(s) for lay in row)


def layer_splittability_census(reps: Iterable[CodeSet]) -> CensusReport:
    report = None
    for s in reps:
        if report is None:
            report = CensusReport(s.n)
        report.rows.append(CensusRow(s, splittable(s), layers_all_splittable(s)))
    if report is None:
        raise ValueError("empty catalog")
    return report
