"""The equivalence group of H(n, 4): coordinate permutations times isotopies.

A transform is a pair (sigma, thetas).  It sends a point x to y with
``y[sigma[i]] = thetas[i][x[i]]``, i.e. the symbol permutations are applied
first and the coordinates are moved afterwards.

Canonical forms are minimum images: the canonical representative of S is the
lexicographically least bit vector among all images of S.  The search
descends one coordinate at a time.  The image's top layer (coordinate 0 after
the transform) must be the least canonical layer of S, so only the directions
and values whose layer reaches that minimum are tried.  The inner transforms
then run over the coset of layer-stabilizers that realise it.  The remaining
three layers are sorted, which fixes the order of the other symbols in the
chosen direction.
"""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from functools import lru_cache
from typing import NamedTuple, Sequence

import numpy as np

from .cube import Q, CodeSet, ConfigurationError, all_points, bits_to_array, check_dimension

MAX_CANON_N = 4

SYMBOL_PERMS = np.array(list(itertools.permutations(range(Q))), dtype=np.int16)


# ---------------------------------------------------------------------------
# Transform objects


@dataclass(frozen=True)
class Transform:
    sigma: tuple[int, ...]
    thetas: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        n = len(self.sigma)
        if sorted(self.sigma) != list(range(n)):
            raise ValueError(f"sigma {self.sigma} is not a permutation")
        if len(self.thetas) != n or any(sorted(t) != list(range(Q)) for t in self.thetas):
            raise ValueError("thetas must be n permutations of 0..3")

    @property
    def n(self) -> int:
        return len(self.sigma)

    @classmethod
    def identity(cls, n: int) -> "Transform":
        return cls(tuple(range(n)), tuple(tuple(range(Q)) for _ in range(n)))

    @classmethod
    def isotopy(cls, thetas: Sequence[Sequence[int]]) -> "Transform":
        return cls(tuple(range(len(thetas))), tuple(tuple(t) for t in thetas))

    @classmethod
    def coordinate_permutation(cls, sigma: Sequence[int]) -> "Transform":
        return cls(tuple(sigma), tuple(tuple(range(Q)) for _ in sigma))

    @classmethod
    def random(cls, n: int, rng: np.random.Generator, isotopy_only: bool = False) -> "Transform":
        sigma = tuple(range(n)) if isotopy_only else tuple(int(i) for i in rng.permutation(n))
        thetas = tuple(tuple(int(i) for i in rng.permutation(Q)) for _ in range(n))
        return cls(sigma, thetas)

    @classmethod
    def from_point_perm(cls, perm: np.ndarray, n: int) -> "Transform":
        sig, th = decode_point_perms(np.asarray(perm)[None, :], n)
        return cls(tuple(int(i) for i in sig[0]), tuple(tuple(int(x) for x in t) for t in th[0]))

    def is_isotopy(self) -> bool:
        return self.sigma == tuple(range(self.n))

    def __matmul__(self, other: "Transform") -> "Transform":
        """self @ other = apply other first, then self."""
        if self.n != other.n:
            raise ValueError("dimension mismatch")
        sigma = tuple(self.sigma[other.sigma[i]] for i in range(self.n))
        thetas = tuple(tuple(self.thetas[other.sigma[i]][other.thetas[i][x]] for x in range(Q))
                       for i in range(self.n))
        return Transform(sigma, thetas)

    def inverse(self) -> "Transform":
        n = self.n
        sigma = [0] * n
        thetas: list[tuple[int, ...]] = [()] * n
        for i in range(n):
            j = self.sigma[i]
            sigma[j] = i
            inv = [0] * Q
            for x in range(Q):
                inv[self.thetas[i][x]] = x
            thetas[j] = tuple(inv)
        return Transform(tuple(sigma), tuple(thetas))

    def apply_point(self, x: Sequence[int]) -> tuple[int, ...]:
        y = [0] * self.n
        for i in range(self.n):
            y[self.sigma[i]] = self.thetas[i][x[i]]
        return tuple(y)

    def point_perm(self) -> np.ndarray:
        return build_point_perms(np.array([self.sigma]), np.array([self.thetas]))[0]


def build_point_perms(sigmas: np.ndarray, thetas: np.ndarray) -> np.ndarray:
    """Point permutations (B, 4**n) for a batch of transforms (B, n) and (B, n, 4)."""
    sigmas = np.asarray(sigmas)
    thetas = np.asarray(thetas)
    b, n = sigmas.shape
    pts = all_points(n).astype(np.intp)  # (P, n)
    # new symbols per coordinate: (B, P, n)
    sym = thetas[:, np.arange(n)[None, :], pts]
    weights = Q ** (n - 1 - sigmas.astype(np.int64))  # (B, n)
    return (sym * weights[:, None, :]).sum(axis=2).astype(np.int32)


def decode_point_perms(perms: np.ndarray, n: int) -> tuple[np.ndarray, np.ndarray]:
    """Recover (sigma, thetas) arrays from point permutations of Sigma^n."""
    perms = np.asarray(perms, dtype=np.int64)
    b = perms.shape[0]
    shifts = 2 * (n - 1 - np.arange(n))
    sigma = np.empty((b, n), dtype=np.int64)
    thetas = np.empty((b, n, Q), dtype=np.int64)
    base = perms[:, 0]
    for i in range(n):
        cols = perms[:, [x * Q ** (n - 1 - i) for x in range(Q)]]  # images of x*e_i
        diff = cols[:, 1] ^ base
        # exactly one base-4 digit differs: that is sigma[i]
        digit_changed = ((diff[:, None] >> shifts[None, :]) & 3) != 0
        pos = np.argmax(digit_changed, axis=1)
        sigma[:, i] = pos
        thetas[:, i, :] = (cols >> (2 * (n - 1 - pos))[:, None]) & 3
    return sigma, thetas


def apply(t: Transform, s: CodeSet) -> CodeSet:
    if t.n != s.n:
        raise ValueError(f"transform of dimension {t.n} applied to a set of dimension {s.n}")
    arr = bits_to_array(s.bits, s.n)
    out = np.zeros_like(arr)
    out[t.point_perm()] = arr
    return CodeSet.from_array(out.reshape((Q,) * s.n))


def group_order(n: int) -> int:
    return math.factorial(Q) ** n * math.factorial(n)


@lru_cache(maxsize=None)
def full_group_perms(n: int, isotopy_only: bool = False) -> np.ndarray:
    """Every element of the group as a point permutation; n <= 3 (82944 x 64 at n=3)."""
    check_dimension(n, 1, 3)
    sig_list = [tuple(range(n))] if isotopy_only else list(itertools.permutations(range(n)))
    th = np.array(list(itertools.product(range(len(SYMBOL_PERMS)), repeat=n)))
    thetas = SYMBOL_PERMS[th]  # (24^n, n, 4)
    out = []
    for sig in sig_list:
        sigmas = np.broadcast_to(np.array(sig), (len(thetas), n))
        out.append(build_point_perms(sigmas, thetas))
    res = np.concatenate(out).astype(np.int16)
    res.flags.writeable = False
    return res


# ---------------------------------------------------------------------------
# Fast mask arithmetic for sets of dimension <= 3 (at most 64 cells)


def _mask_points(val: int, w: int) -> np.ndarray:
    return np.array([w - 1 - i for i in range(w) if val >> i & 1][::-1], dtype=np.intp)


def images(perms: np.ndarray, val: int, w: int) -> np.ndarray:
    """uint64 masks of the images of a w-cell set under each row of `perms`."""
    pts = _mask_points(val, w)
    if len(pts) == 0:
        return np.zeros(len(perms), dtype=np.uint64)
    shifts = (w - 1 - perms[:, pts].astype(np.int64)).astype(np.uint64)
    return np.bitwise_or.reduce(np.left_shift(np.uint64(1), shifts), axis=1)


@lru_cache(maxsize=None)
def _layout(m: int):
    """Per direction c: coordinate c of each point and the index of the point with c removed."""
    pts = all_points(m).astype(np.int64)
    xc, sub = [], []
    for c in range(m):
        rest = np.delete(pts, c, axis=1)
        w = Q ** (rest.shape[1] - np.arange(rest.shape[1]) - 1)
        xc.append(pts[:, c].copy())
        sub.append((rest * w).sum(axis=1) if rest.shape[1] else np.zeros(len(pts), dtype=np.int64))
    return xc, sub


def _layer_masks(val: int, m: int, dirs: Sequence[int]) -> list[list[int]]:
    w = Q ** (m - 1)
    arr = bits_to_array(val, m).reshape((Q,) * m)
    weights = [1 << (w - 1 - i) for i in range(w)]
    out = []
    for c in dirs:
        sub = np.moveaxis(arr, c, 0).reshape(Q, w)
        out.append([sum(wt for wt, b in zip(weights, row) if b) for row in sub.tolist()])
    return out


# ---------------------------------------------------------------------------
# Canonical form search


class _Block(NamedTuple):
    """Optimal transforms sharing a direction c and top-layer value v."""

    c: int
    v: int
    others: tuple[int, ...]  # the other three values in direction c
    gprime: np.ndarray  # (B, 4**(m-1)) inner transforms
    orders: np.ndarray  # (B', 3) positions -> index into `others`, one row per ordering
    row_of: np.ndarray  # (B',) row of gprime for each ordering


class _Search(NamedTuple):
    key: tuple[int, ...]  # canonical layers, top first
    count: int
    blocks: list[_Block]


_CANON_CACHE: dict[tuple[int, bool], dict[int, tuple[int, np.ndarray]]] = {}
_AUT_CACHE: dict[tuple[int, bool], dict[int, np.ndarray]] = {}


def clear_caches() -> None:
    _CANON_CACHE.clear()
    _AUT_CACHE.clear()


def _tie_perms(vals: Sequence[int]) -> list[tuple[int, ...]]:
    """Permutations of positions that preserve the values (equal layers may swap)."""
    k = len(vals)
    return [p for p in itertools.permutations(range(k)) if all(vals[p[i]] == vals[i] for i in range(k))]


def _extend(vals: Sequence[int], s: int, iso: bool, c: int = 0) -> _Search:
    """Least tuple (g L[pi0], g L[pi1], ...) over inner transforms g and orderings pi."""
    w = Q**s
    infos = [_canon_small(s, v, iso) for v in vals]
    top = min(rep for rep, _ in infos)
    best = None
    cands = []
    for v, (rep, h) in enumerate(infos):
        if rep != top:
            continue
        gp = _aut_small(s, top, iso)[:, h]
        others = tuple(u for u in range(len(vals)) if u != v)
        if not others:
            cands.append(((), v, others, gp, np.zeros((len(gp), 0), dtype=np.int64), None))
            best = ()
            continue
        imgs = np.stack([images(gp, vals[u], w) for u in others], axis=1)
        order = np.argsort(imgs, axis=1, kind="stable")
        srt = np.take_along_axis(imgs, order, axis=1)
        idx = np.lexsort(srt.T[::-1])
        row_min = tuple(int(x) for x in srt[idx[0]])
        if best is not None and row_min > best:
            continue
        keep = np.all(srt == srt[idx[0]], axis=1)
        if best is None or row_min < best:
            best = row_min
            cands = []
        cands.append((row_min, v, others, gp[keep], order[keep], None))
    blocks = []
    count = 0
    for row_min, v, others, gp, order, _ in cands:
        ties = _tie_perms([vals[u] for u in others])
        rows = np.repeat(np.arange(len(gp)), len(ties))
        if others:
            # relabel `others` indices through each tie permutation
            tie_arr = np.array(ties, dtype=np.int64)  # (T, k-1)
            orders = tie_arr[:, order].transpose(1, 0, 2).reshape(-1, len(others))
        else:
            orders = np.zeros((len(gp), 0), dtype=np.int64)
        blocks.append(_Block(c, v, others, gp, orders, rows))
        count += len(rows)
    return _Search((top,) + tuple(best), count, blocks)


def _search(val: int, m: int, iso: bool) -> _Search:
    if m == 1:
        imgs = images(SYMBOL_PERMS, val, Q)
        rep = int(imgs.min())
        gp = SYMBOL_PERMS[imgs == rep]
        return _Search((rep,), len(gp), [_Block(0, -1, (), gp, np.zeros((len(gp), 0), np.int64),
                                                  np.arange(len(gp)))])
    dirs = [0] if iso else list(range(m))
    result = None
    for c, vals in zip(dirs, _layer_masks(val, m, dirs)):
        r = _extend(vals, m - 1, iso, c)
        if result is None or r.key < result.key:
            result = r
        elif r.key == result.key:
            result = _Search(r.key, result.count + r.count, result.blocks + r.blocks)
    return result


def _key_to_bits(key: Sequence[int], m: int) -> int:
    if m == 1:
        return key[0]
    w = Q ** (m - 1)
    bits = 0
    for x in key:
        bits = (bits << w) | x
    return bits


def _materialize(res: _Search, m: int) -> np.ndarray:
    """All optimal transforms as point permutations of Sigma^m."""
    if m == 1:
        return res.blocks[0].gprime
    xc, sub = _layout(m)
    w = Q ** (m - 1)
    out = []
    for blk in res.blocks:
        theta = np.empty((len(blk.orders), Q), dtype=np.int64)
        theta[:, blk.v] = 0
        others = np.array(blk.others)
        for j in range(len(blk.others)):
            theta[np.arange(len(theta)), others[blk.orders[:, j]]] = j + 1
        gp = blk.gprime[blk.row_of].astype(np.int64)
        out.append(theta[:, xc[blk.c]] * w + gp[:, sub[blk.c]])
    return np.concatenate(out).astype(np.int16)


def _canon_small(m: int, val: int, iso: bool) -> tuple[int, np.ndarray]:
    """(rep, h) with h a point permutation mapping the set to its representative; cached."""
    cache = _CANON_CACHE.setdefault((m, iso), {})
    hit = cache.get(val)
    if hit is not None:
        return hit
    res = _search(val, m, iso)
    rep = _key_to_bits(res.key, m)
    aut_cache = _AUT_CACHE.setdefault((m, iso), {})
    if rep not in aut_cache:
        opt = _materialize(res, m)
        h = opt[0]
        hinv = np.argsort(h)
        aut_cache[rep] = np.ascontiguousarray(opt[:, hinv])
    else:
        h = _first_transform(res, m)
    out = (rep, np.ascontiguousarray(h))
    cache[val] = out
    return out


def _first_transform(res: _Search, m: int) -> np.ndarray:
    blk = res.blocks[0]
    one = _Search(res.key, 1, [blk._replace(orders=blk.orders[:1], row_of=blk.row_of[:1])])
    return _materialize(one, m)[0]


def _aut_small(m: int, rep: int, iso: bool) -> np.ndarray:
    cache = _AUT_CACHE.setdefault((m, iso), {})
    if rep not in cache:
        _canon_small(m, rep, iso)
    return cache[rep]


# ---------------------------------------------------------------------------
# Public API

PERM_TYPES = ("1", "2'", "2''", "3", "4'", "4''", "4°", "6", "8", "12", "24")


@dataclass(frozen=True)
class GroupSummary:
    aut_order: int
    atop_order: int
    perm_group_order: int
    perm_group_type: str

    @property
    def label(self) -> str:
        return f"{self.perm_group_order}*{self.atop_order}"


def _perm_order(p: tuple[int, ...]) -> int:
    k, q = 1, p
    ident = tuple(range(len(p)))
    while q != ident:
        q = tuple(p[i] for i in q)
        k += 1
    return k


def perm_group_type(perms: set[tuple[int, ...]]) -> str:
    """Label of a permutation group of at most 4 points, as used in the tables."""
    order = len(perms)
    has_transposition = any(sum(1 for i, x in enumerate(p) if i != x) == 2 for p in perms)
    if order == 2:
        return "2'" if has_transposition else "2''"
    if order == 4:
        if any(_perm_order(p) == 4 for p in perms):
            return "4°"
        return "4'" if has_transposition else "4''"
    return str(order)


def _induced_sigmas(res: _Search, m: int) -> set[tuple[int, ...]]:
    """Coordinate permutations of the optimal transforms (no point-perm materialization)."""
    if m == 1:
        return {(0,)}
    out = set()
    for blk in res.blocks:
        rows = np.unique(blk.row_of)
        if m - 1 >= 1:
            sig_sub, _ = decode_point_perms(blk.gprime[rows], m - 1)
        rest = [i for i in range(m) if i != blk.c]
        for srow in np.unique(sig_sub, axis=0):
            full = [0] * m
            full[blk.c] = 0
            for k, orig in enumerate(rest):
                full[orig] = int(srow[k]) + 1
            out.add(tuple(full))
    return out


def _compose_sigma(a, b):
    return tuple(a[b[i]] for i in range(len(a)))


def _inverse_sigma(a):
    inv = [0] * len(a)
    for i, x in enumerate(a):
        inv[x] = i
    return tuple(inv)


def _check_canon_dim(s: CodeSet) -> None:
    if s.n > MAX_CANON_N:
        raise ConfigurationError(f"canonical forms are supported for n <= {MAX_CANON_N}, got n={s.n}")


def _search_set(s: CodeSet, iso: bool) -> _Search:
    _check_canon_dim(s)
    return _search(s.bits, s.n, iso)


def canonical_form(s: CodeSet) -> tuple[CodeSet, GroupSummary]:
    """Least image of `s` under the full group, with exact |Aut| and |Atop|."""
    res = _search_set(s, iso=False)
    rep = CodeSet(s.n, _key_to_bits(res.key, s.n))
    iso = _search_set(s, iso=True)
    sigmas = _induced_sigmas(res, s.n)
    g0inv = _inverse_sigma(next(iter(sigmas)))
    group = {_compose_sigma(sg, g0inv) for sg in sigmas}
    aut, atop = res.count, iso.count
    if aut % atop:
        raise AssertionError(f"|Atop|={atop} does not divide |Aut|={aut}")
    if aut // atop != len(group):
        raise AssertionError(f"induced permutation group has {len(group)} elements, expected {aut // atop}")
    return rep, GroupSummary(aut, atop, aut // atop, perm_group_type(group))


def canonical_rep(s: CodeSet) -> CodeSet:
    res = _search_set(s, iso=False)
    return CodeSet(s.n, _key_to_bits(res.key, s.n))


def isotopy_canonical_form(s: CodeSet) -> CodeSet:
    res = _search_set(s, iso=True)
    return CodeSet(s.n, _key_to_bits(res.key, s.n))


def aut_order(s: CodeSet) -> int:
    return _search_set(s, iso=False).count


def atop_order(s: CodeSet) -> int:
    return _search_set(s, iso=True).count


def canonical_transform(s: CodeSet, isotopy_only: bool = False) -> Transform:
    """One transform t with apply(t, s) equal to the canonical representative."""
    res = _search_set(s, iso=isotopy_only)
    return Transform.from_point_perm(_first_transform(res, s.n), s.n)


def automorphisms(s: CodeSet, isotopy_only: bool = False) -> np.ndarray:
    """Aut(s) (or Atop(s)) as point permutations, shape (|Aut|, 4**n)."""
    res = _search_set(s, iso=isotopy_only)
    opt = _materialize(res, s.n)  # transforms mapping s to its representative
    hinv = np.argsort(opt[0])
    # g = h a with a in Aut(s)  =>  a = h^-1 g
    return np.ascontiguousarray(hinv[opt])


def class_size(s: CodeSet) -> int:
    return group_order(s.n) // aut_order(s)


def complement_flags(s: CodeSet) -> tuple[bool, bool]:
    """(equivalent to complement, isotopic to complement)."""
    c = s.complement()
    equiv = canonical_rep(s) == canonical_rep(c)
    isot = isotopy_canonical_form(s) == isotopy_canonical_form(c)
    return equiv, isot


def equivalent(a: CodeSet, b: CodeSet) -> bool:
    return a.n == b.n and canonical_rep(a) == canonical_rep(b)


# ---------------------------------------------------------------------------
# Semi-codes: ordered pairs of layers, group G_{n-1} x (swap of the two layers)


def semicode_canonical(first: CodeSet, second: CodeSet) -> tuple[tuple[CodeSet, CodeSet], int]:
    """Least (g A', g B') over g in G_{n-1} and {A', B'} = {first, second}; returns the pair and stabilizer order."""
    if first.n != second.n:
        raise ValueError("semi-code layers of different dimensions")
    if first.n > MAX_CANON_N - 1:
        raise ConfigurationError("semi-code layers must have dimension <= 3")
    res = _extend([first.bits, second.bits], first.n, iso=False)
    a, b = res.key
    return (CodeSet(first.n, a), CodeSet(first.n, b)), res.count


def semicode_key(first: int, second: int, m: int) -> tuple[tuple[int, int], int]:
    """Mask-level variant of semicode_canonical used by the classifier."""
    res = _extend([first, second], m, iso=False)
    return (res.key[0], res.key[1]), res.count
