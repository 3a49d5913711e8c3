"""Layer-by-layer classification of double-MDS-codes, unitrades and double-codes.

A code of length n is cut into four layers along the last coordinate.  The
first layer is taken from the class representatives of length n-1, the second
from every code of length n-1; the resulting pairs (semi-codes) are reduced to
one representative per equivalence class.  Each semi-code representative is
extended by every possible third layer, the fourth layer is forced, and the
completed codes are canonicalised and deduplicated.

Two independent totals come out of the run: sum over semi-code classes of
(class size x number of completions), and the sum of the final class sizes.
"""
from __future__ import annotations

import json
import logging
import math
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path
from typing import Optional, Sequence

import numpy as np

from . import symmetry as sym
from .cube import KINDS, Q, CodeSet, ConfigurationError, array_to_bits, bits_to_array, has_kind
from .split import splittable
from .symmetry import GroupSummary, group_order, images

log = logging.getLogger(__name__)

MAX_CLASSIFY_N = 4


class ValidationError(RuntimeError):
    pass


class PreconditionError(RuntimeError):
    pass


@dataclass(frozen=True)
class ClassRecord:
    n: int
    kind: str
    representative: CodeSet
    group: GroupSummary
    class_size: int
    equiv_to_complement: bool
    isotopic_to_complement: bool
    splittable: bool

    @property
    def size(self) -> int:
        return len(self.representative)


@dataclass(frozen=True)
class SemiClass:
    first: CodeSet
    second: CodeSet
    stabilizer: int  # order of the semi-code's stabilizer in G_{n-1} x swap
    size: int  # M_i: number of semi-codes in the class
    completions: Optional[int] = None  # R_i


@dataclass
class Classification:
    n: int
    kind: str
    records: list[ClassRecord]
    semi_classes: list[SemiClass] = field(default_factory=list)

    @property
    def total(self) -> int:
        return sum(r.class_size for r in self.records)

    @property
    def total_via_semicodes(self) -> Optional[int]:
        if not self.semi_classes:
            return None
        return sum(s.size * s.completions for s in self.semi_classes)

    @property
    def isotopy_classes(self) -> int:
        return sum(math.factorial(self.n) // r.group.perm_group_order for r in self.records)

    @property
    def representatives(self) -> list[CodeSet]:
        return [r.representative for r in self.records]

    def __len__(self) -> int:
        return len(self.records)


@dataclass
class ComputeBudget:
    shards: int = 1
    workers: int = 1
    journal: Optional[Path] = None
    resume: bool = False

    @classmethod
    def from_env(cls, **kw) -> "ComputeBudget":
        workers = int(os.environ.get("FREQCUBE_THREADS", "1") or 1)
        return cls(workers=max(1, workers), **kw)


# ---------------------------------------------------------------------------
# Mask helpers for dimension <= 3


def _full(m: int) -> int:
    return (1 << Q**m) - 1


def permute_masks(masks: np.ndarray, perm: np.ndarray, w: int) -> np.ndarray:
    """Images of many w-cell sets under one point permutation."""
    masks = np.asarray(masks, dtype=np.uint64)
    # bit j (from the LSB) is cell w-1-j; it moves to bit w-1-perm[w-1-j]
    dest = (w - 1 - np.asarray(perm, dtype=np.int64)[::-1]).astype(np.uint64)
    out = np.zeros_like(masks)
    nbytes = (w + 7) // 8
    byte_vals = np.arange(256, dtype=np.uint64)
    for k in range(nbytes):
        table = np.zeros(256, dtype=np.uint64)
        for j in range(min(8, w - 8 * k)):
            table |= ((byte_vals >> np.uint64(j)) & np.uint64(1)) << dest[8 * k + j]
        out |= table[((masks >> np.uint64(8 * k)) & np.uint64(255)).astype(np.intp)]
    return out


def orbit_masks(rep: int, m: int) -> np.ndarray:
    return np.unique(images(sym.full_group_perms(m), rep, Q**m))


def _stack_last(parts: Sequence[int], m: int) -> int:
    arr = np.stack([bits_to_array(p, m) for p in parts], axis=-1)
    return array_to_bits(arr)


def complete(first: int, second: int, third: np.ndarray, family: np.ndarray, kind: str, m: int):
    """Valid third layers and the forced fourth layers (vectorised over `third`)."""
    a, b = np.uint64(first), np.uint64(second)
    third = np.asarray(third, dtype=np.uint64)
    fourth = a ^ b ^ third
    if kind == "dmds":
        ok = ((a | b | third) == np.uint64(_full(m))) & ((a & b & third) == 0)
    elif kind == "doublecode":
        ok = (a & b & third) == 0
    elif kind == "unitrade":
        ok = np.ones(len(third), dtype=bool)
    else:
        raise ConfigurationError(f"unknown kind {kind!r}")
    pos = np.searchsorted(family, fourth)
    pos[pos == len(family)] = 0
    ok &= family[pos] == fourth
    return third[ok], fourth[ok]


def complete_fourth_layer(l1: CodeSet, l2: CodeSet, l3: CodeSet) -> CodeSet:
    """Fourth layer of a double-MDS-code from its first three layers; ValueError if impossible."""
    m = l1.n
    arrs = [bits_to_array(x.bits, m).astype(np.int8) for x in (l1, l2, l3)]
    fourth = 2 - (arrs[0] + arrs[1] + arrs[2])
    if ((fourth < 0) | (fourth > 1)).any():
        raise ValueError("not completable: some line of the last direction has 0 or 3 codewords")
    l4 = CodeSet(m, array_to_bits(fourth.astype(bool)))
    code = CodeSet(m + 1, _stack_last([l1.bits, l2.bits, l3.bits, l4.bits], m))
    if not has_kind(code, "dmds"):
        raise ValueError("not completable: the layers are not double-MDS-codes")
    return l4


# ---------------------------------------------------------------------------
# Records


def make_record(rep: CodeSet, kind: str) -> ClassRecord:
    canon, group = sym.canonical_form(rep)
    if canon != rep:
        raise ValidationError("representative is not canonical")
    equiv, isot = sym.complement_flags(rep)
    split = splittable(rep) if kind in ("dmds", "doublecode") else False
    return ClassRecord(rep.n, kind, rep, group, group_order(rep.n) // group.aut_order, equiv, isot, split)


def _base_classification(kind: str) -> Classification:
    reps = set()
    for bits in range(16):
        s = CodeSet(1, bits)
        if has_kind(s, kind):
            reps.add(sym.canonical_rep(s).bits)
    records = [make_record(CodeSet(1, b), kind) for b in sorted(reps)]
    return Classification(1, kind, records)


# ---------------------------------------------------------------------------
# Steps


@dataclass
class Level:
    """Everything known about length m that the next step needs."""

    m: int
    kind: str
    reps: list[int]
    family: np.ndarray  # sorted masks of all codes of length m
    family_class: np.ndarray  # class index of each family member

    @classmethod
    def from_classification(cls, c: Classification) -> "Level":
        if c.n > 3:
            raise ConfigurationError("layers must have length <= 3")
        reps = [r.representative.bits for r in c.records]
        parts, labels = [], []
        for j, r in enumerate(reps):
            orb = orbit_masks(r, c.n)
            parts.append(orb)
            labels.append(np.full(len(orb), j, dtype=np.int32))
        fam = np.concatenate(parts)
        lab = np.concatenate(labels)
        order = np.argsort(fam)
        fam, lab = fam[order], lab[order]
        if len(np.unique(fam)) != len(fam):
            raise ValidationError("class orbits overlap")
        if len(fam) != c.total:
            raise ValidationError(f"orbit expansion gives {len(fam)} codes, class sizes sum to {c.total}")
        return cls(c.n, c.kind, reps, fam, lab)


def semi_code_classes(level: Level) -> list[SemiClass]:
    """One representative per class of semi-codes (first layer, second layer)."""
    m, w = level.m, Q**level.m
    semi_order = 2 * group_order(m)
    seen: dict[tuple[int, int], int] = {}
    for j, a in enumerate(level.reps):
        cand = level.family[level.family_class >= j]
        aut = sym._aut_small(m, a, False)
        key = cand.copy()
        for g in aut:
            np.minimum(key, permute_masks(cand, g, w), out=key)
        for b in np.unique(key):
            k, stab = sym.semicode_key(a, int(b), m)
            seen.setdefault(k, stab)
    out = [SemiClass(CodeSet(m, a), CodeSet(m, b), stab, semi_order // stab)
           for (a, b), stab in sorted(seen.items())]
    total = sum(s.size for s in out)
    if total != len(level.family) ** 2:
        raise ValidationError(f"semi-code classes cover {total} semi-codes, expected {len(level.family) ** 2}")
    return out


def _stabilizer_perms(a: int, b: int, m: int) -> np.ndarray:
    res = sym._extend([a, b], m, iso=False)
    return np.unique(np.concatenate([blk.gprime for blk in res.blocks]), axis=0)


def extend_semicode(semi: SemiClass, level: Level) -> tuple[int, set[int]]:
    """(R_i, canonical forms of the completed codes) for one semi-code representative."""
    m, w = level.m, Q**level.m
    a, b = semi.first.bits, semi.second.bits
    third, fourth = complete(a, b, level.family, level.family, level.kind, m)
    r = len(third)
    if r == 0:
        return 0, set()
    key = np.minimum(third, fourth)
    for g in _stabilizer_perms(a, b, m):
        np.minimum(key, permute_masks(third, g, w), out=key)
        np.minimum(key, permute_masks(fourth, g, w), out=key)
    _, first_idx = np.unique(key, return_index=True)
    found = set()
    for i in first_idx:
        bits = _stack_last([a, b, int(third[i]), int(fourth[i])], m)
        res = sym._search(bits, m + 1, False)
        found.add(sym._key_to_bits(res.key, m + 1))
    return r, found


# worker-side state for process pools
_WORK: dict = {}


def _init_worker(semis, level):
    _WORK["semis"] = semis
    _WORK["level"] = level


def _run_shard(indices: Sequence[int]):
    semis, level = _WORK["semis"], _WORK["level"]
    rs, found = {}, set()
    for i in indices:
        r, f = extend_semicode(semis[i], level)
        rs[i] = r
        found |= f
    return list(indices), rs, found


def _read_journal(path: Path, n: int, kind: str):
    done, rs, found = set(), {}, set()
    if not path.exists():
        return done, rs, found
    with open(path, encoding="utf-8") as fh:
        for line in fh:
            if not line.endswith("\n"):
                break  # torn final write
            rec = json.loads(line)
            if rec.get("n") != n or rec.get("kind") != kind:
                raise PreconditionError(f"journal {path} belongs to another run")
            done.add(rec["shard"])
            rs.update({int(k): v for k, v in rec["R"].items()})
            found.update(int(h, 16) for h in rec["codes"])
    return done, rs, found


def classify(n: int, kind: str = "dmds", previous: Optional[Classification] = None,
             budget: Optional[ComputeBudget] = None, progress: bool = False) -> Classification:
    """Classify all codes of length n of the given kind up to equivalence."""
    if kind not in KINDS:
        raise ConfigurationError(f"unknown kind {kind!r}; expected one of {KINDS}")
    if not 1 <= n <= MAX_CLASSIFY_N:
        raise ConfigurationError(f"classification supports 1 <= n <= {MAX_CLASSIFY_N}")
    if n == 1:
        return _base_classification(kind)
    if previous is None:
        if n == MAX_CLASSIFY_N:
            raise PreconditionError("classification of length n-1 must be supplied for n=4")
        previous = classify(n - 1, kind)
    if previous.n != n - 1 or previous.kind != kind:
        raise PreconditionError(f"need the length-{n - 1} {kind} classification, got n={previous.n} {previous.kind}")
    budget = budget or ComputeBudget()
    level = Level.from_classification(previous)
    semis = semi_code_classes(level)
    log.info("n=%d %s: %d semi-code classes", n, kind, len(semis))

    shards = [list(range(len(semis)))[k::budget.shards] for k in range(budget.shards)]
    done, rs, found = set(), {}, set()
    if budget.journal is not None and budget.resume:
        done, rs, found = _read_journal(budget.journal, n, kind)
    todo = [k for k in range(len(shards)) if k not in done and shards[k]]

    def record(k, idx, r, f):
        rs.update(r)
        found.update(f)
        if budget.journal is not None:
            line = json.dumps({"n": n, "kind": kind, "shard": k, "R": {str(i): r[i] for i in idx},
                               "codes": sorted(format(x, "x") for x in f)})
            with open(budget.journal, "a", encoding="utf-8") as fh:
                fh.write(line + "\n")
        if progress:
            log.warning("shard %d done: %d classes so far", k, len(found))

    if budget.workers > 1 and len(todo) > 1:
        with ProcessPoolExecutor(budget.workers, initializer=_init_worker, initargs=(semis, level)) as ex:
            futs = {ex.submit(_run_shard, shards[k]): k for k in todo}
            for fut in futs:
                idx, r, f = fut.result()
                record(futs[fut], idx, r, f)
    else:
        _init_worker(semis, level)
        for k in todo:
            idx, r, f = _run_shard(shards[k])
            record(k, idx, r, f)

    semis = [SemiClass(s.first, s.second, s.stabilizer, s.size, rs[i]) for i, s in enumerate(semis)]
    records = [make_record(CodeSet(n, bits), kind) for bits in sorted(found)]
    return Classification(n, kind, records, semis)


def classify_upto(n: int, kind: str = "dmds", **kw) -> list[Classification]:
    """Classifications for lengths 1..n."""
    out = [classify(1, kind)]
    for m in range(2, n + 1):
        out.append(classify(m, kind, previous=out[-1], **kw))
    return out


def count_completions(previous: Classification) -> list[SemiClass]:
    """Semi-code classes with R_i filled in, without canonicalising completed codes."""
    level = Level.from_classification(previous)
    out = []
    for s in semi_code_classes(level):
        third, _ = complete(s.first.bits, s.second.bits, level.family, level.family, level.kind, level.m)
        out.append(SemiClass(s.first, s.second, s.stabilizer, s.size, len(third)))
    return out


def validate_double_count(n: int, semi_classes: Sequence[SemiClass],
                          final_classes: Sequence[ClassRecord]) -> tuple[int, int, bool]:
    """(total via semi-codes, total via class sizes, equal)."""
    if any(s.completions is None for s in semi_classes):
        raise PreconditionError("semi-code classes lack completion counts")
    if any(r.n != n for r in final_classes):
        raise PreconditionError("class records of another length")
    via_semis = sum(s.size * s.completions for s in semi_classes)
    via_classes = sum(group_order(n) // r.group.aut_order for r in final_classes)
    return via_semis, via_classes, via_semis == via_classes


def check_double_count(n, semi_classes, final_classes) -> int:
    a, b, ok = validate_double_count(n, semi_classes, final_classes)
    if not ok:
        raise ValidationError(f"double counting mismatch: {a} via semi-codes vs {b} via classes")
    return a


def all_codes(c: Classification) -> np.ndarray:
    """Every code of the classified family as sorted uint64 masks (n <= 3)."""
    return Level.from_classification(c).family
