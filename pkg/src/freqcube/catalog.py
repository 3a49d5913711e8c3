"""Catalog files of class representatives, and the summary tables built from them.

Format (UTF-8, LF)::

    # n=3 kind=dmds total=51678 classes=10
    # generator=freqcube <version>
    <hex-rep> <aut> <atop> <perm-type> <class-size> <equiv-compl:0|1> <isot-compl:0|1> <splittable:0|1>
    ...
"""
from __future__ import annotations

import math
from collections import Counter, defaultdict
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path
from typing import Iterable, Sequence

from .classifier import ClassRecord, Classification, ValidationError
from .cube import KINDS, MAX_N, Q, CodeSet, has_kind
from .symmetry import PERM_TYPES, GroupSummary, canonical_form, group_order

GENERATOR = "freqcube 0.1.0"


class CatalogError(ValueError):
    """Raised when a catalog file cannot be loaded; the message names the line."""


@dataclass
class CatalogFile:
    n: int
    kind: str
    records: list[ClassRecord]
    total: int = 0
    generator: str = GENERATOR
    extra: dict = field(default_factory=dict)

    def __post_init__(self):
        if not self.total:
            self.total = sum(r.class_size for r in self.records)

    @classmethod
    def from_classification(cls, c: Classification) -> "CatalogFile":
        return cls(c.n, c.kind, sorted(c.records, key=lambda r: r.representative.bits))

    def to_classification(self) -> Classification:
        return Classification(self.n, self.kind, list(self.records))

    def __len__(self) -> int:
        return len(self.records)


def _flag(b: bool) -> str:
    return "1" if b else "0"


def format_record(r: ClassRecord) -> str:
    g = r.group
    return " ".join([r.representative.to_hex(), str(g.aut_order), str(g.atop_order), g.perm_group_type,
                     str(r.class_size), _flag(r.equiv_to_complement), _flag(r.isotopic_to_complement),
                     _flag(r.splittable)])


def format_catalog(cat: CatalogFile) -> str:
    lines = [f"# n={cat.n} kind={cat.kind} total={cat.total} classes={len(cat.records)}",
             f"# generator={cat.generator}"]
    lines += [format_record(r) for r in cat.records]
    return "\n".join(lines) + "\n"


def write_catalog(cat: CatalogFile | Classification, path: str | Path) -> None:
    if isinstance(cat, Classification):
        cat = CatalogFile.from_classification(cat)
    Path(path).write_text(format_catalog(cat), encoding="utf-8", newline="\n")


def _parse_header(line: str) -> dict[str, str]:
    if not line.startswith("#"):
        raise CatalogError(f"line 1: expected header, got {line!r}")
    try:
        return dict(tok.split("=", 1) for tok in line[1:].split())
    except ValueError:
        raise CatalogError(f"line 1: malformed header {line!r}") from None


def _parse_bool(tok: str, lineno: int) -> bool:
    if tok not in ("0", "1"):
        raise CatalogError(f"line {lineno}: flag must be 0 or 1, got {tok!r}")
    return tok == "1"


def parse_catalog(text: str, check_canonical: bool = True) -> CatalogFile:
    lines = text.split("\n")
    if lines and lines[-1] == "":
        lines.pop()
    if not lines:
        raise CatalogError("line 1: empty catalog")
    head = _parse_header(lines[0])
    try:
        n, kind, total, classes = int(head["n"]), head["kind"], int(head["total"]), int(head["classes"])
    except (KeyError, ValueError):
        raise CatalogError(f"line 1: header needs n, kind, total, classes: {lines[0]!r}") from None
    if not 1 <= n <= MAX_N:
        raise CatalogError(f"line 1: n={n} out of range")
    if kind not in KINDS:
        raise CatalogError(f"line 1: unknown kind {kind!r}")
    generator = GENERATOR
    records: list[ClassRecord] = []
    prev = -1
    gorder = group_order(n)
    for lineno, line in enumerate(lines[1:], start=2):
        if line.startswith("#"):
            if line.startswith("# generator="):
                generator = line[len("# generator="):]
            continue
        tok = line.split()
        if len(tok) != 8:
            raise CatalogError(f"line {lineno}: expected 8 fields, got {len(tok)}")
        try:
            rep = CodeSet.from_hex(n, tok[0])
            aut, atop, size = int(tok[1]), int(tok[2]), int(tok[4])
        except ValueError as e:
            raise CatalogError(f"line {lineno}: {e}") from None
        ptype = tok[3]
        if ptype not in PERM_TYPES:
            raise CatalogError(f"line {lineno}: unknown permutation group type {ptype!r}")
        if aut <= 0 or atop <= 0 or aut % atop or gorder % aut:
            raise CatalogError(f"line {lineno}: inconsistent group orders {aut}, {atop}")
        p = aut // atop
        if int(ptype.rstrip("'°")) != p:
            raise CatalogError(f"line {lineno}: type {ptype} does not match |Aut|/|Atop| = {p}")
        if size * aut != gorder:
            raise CatalogError(f"line {lineno}: class size {size} does not match |Aut| = {aut}")
        if rep.bits <= prev:
            raise CatalogError(f"line {lineno}: representatives must be strictly increasing")
        prev = rep.bits
        if not has_kind(rep, kind):
            raise CatalogError(f"line {lineno}: representative is not a {kind} set")
        equiv, isot, split = (_parse_bool(t, lineno) for t in tok[5:8])
        group = GroupSummary(aut, atop, p, ptype)
        if check_canonical:
            canon, g = canonical_form(rep)
            if canon != rep:
                raise CatalogError(f"line {lineno}: representative is not canonical")
            if g != group:
                raise CatalogError(f"line {lineno}: recorded group {ptype}*{atop} differs from computed "
                                   f"{g.perm_group_type}*{g.atop_order}")
        records.append(ClassRecord(n, kind, rep, group, size, equiv, isot, split))
    if len(records) != classes:
        raise CatalogError(f"line 1: header says {classes} classes, found {len(records)}")
    found = sum(r.class_size for r in records)
    if found != total:
        raise CatalogError(f"line 1: header total {total} differs from the sum of class sizes {found}")
    return CatalogFile(n, kind, records, total, generator)


def read_catalog(path: str | Path, check_canonical: bool = True) -> CatalogFile:
    return parse_catalog(Path(path).read_text(encoding="utf-8"), check_canonical=check_canonical)


# ---------------------------------------------------------------------------
# Tables


@dataclass(frozen=True)
class AutRow:
    perm_order: int
    perm_type: str
    atop: int
    N: int
    N1: int  # equivalent to complement
    N2: int  # isotopic to complement
    Nstar: int  # splittable

    def label(self, accents: bool = True) -> str:
        t = self.perm_type if accents else str(self.perm_order)
        return f"{t}·{self.atop}"


_TYPE_RANK = {t: i for i, t in enumerate(PERM_TYPES)}


def aut_rows(records: Sequence[ClassRecord]) -> list[AutRow]:
    """Rows of the automorphism table sorted by |Atop| then P, both descending."""
    groups: dict[tuple, list[ClassRecord]] = defaultdict(list)
    for r in records:
        groups[(r.group.perm_group_order, r.group.perm_group_type, r.group.atop_order)].append(r)
    rows = [AutRow(p, t, a, len(rs), sum(r.equiv_to_complement for r in rs),
                   sum(r.isotopic_to_complement for r in rs), sum(r.splittable for r in rs))
            for (p, t, a), rs in groups.items()]
    rows.sort(key=lambda r: (-r.atop, -r.perm_order, _TYPE_RANK[r.perm_type]))
    return rows


@dataclass(frozen=True)
class FrequencyCubeCounts:
    equivalence_classes: int
    isotopy_classes: int
    code_isotopy_classes: int
    rows: tuple  # (label, eq classes, with P*T autos, with 2PT, iso classes, with T, with 2T)


def frequency_cube_counts(records: Sequence[ClassRecord], n: int | None = None) -> FrequencyCubeCounts:
    if not records:
        raise ValidationError("no classes")
    n = records[0].n if n is None else n
    fact = math.factorial(n)
    eq = iso = code_iso = Fraction(0)
    out = []
    for r in aut_rows(records):
        if r.N1 > r.N or r.N2 > r.N1:
            raise ValidationError(f"inconsistent row {r.label()}: N={r.N} N'={r.N1} N''={r.N2}")
        p = r.perm_order
        row_eq = Fraction(r.N + r.N1, 2)
        row_iso = Fraction((r.N + r.N1) * fact, 2 * p)
        out.append((r.label(), row_eq, Fraction(r.N - r.N1, 2), r.N1, row_iso,
                    Fraction((r.N + r.N1 - 2 * r.N2) * fact, 2 * p), Fraction(r.N2 * fact, p)))
        eq += row_eq
        iso += row_iso
        code_iso += Fraction(r.N * fact, p)
    for x in (eq, iso, code_iso):
        if x.denominator != 1:
            raise ValidationError(f"non-integral class count {x}")
    return FrequencyCubeCounts(int(eq), int(iso), int(code_iso), tuple(out))


def _fmt_frac(x: Fraction) -> str:
    return str(x.numerator) if x.denominator == 1 else f"{float(x):g}"


def render_aut_table(cat: CatalogFile) -> str:
    if cat.kind != "dmds":
        raise ValueError("the automorphism table is for double-MDS-codes")
    accents = cat.n >= 4
    rows = aut_rows(cat.records)
    w = max([len(r.label(accents)) for r in rows] + [7])
    out = [f"double-MDS-codes, n={cat.n}: classes by |Aut| = P·T",
           f"{'|Aut|':>{w}} {'N':>6} {'N′':>6} {'N″':>6} {'N*':>6}"]
    for r in rows:
        out.append(f"{r.label(accents):>{w}} {r.N:>6} {r.N1:>6} {r.N2:>6} {r.Nstar:>6}")
    tot = [sum(getattr(r, a) for r in rows) for a in ("N", "N1", "N2", "Nstar")]
    out.append(f"{'total:':>{w}} {tot[0]:>6} {tot[1]:>6} {tot[2]:>6} {tot[3]:>6}")
    fc = frequency_cube_counts(cat.records, cat.n)
    out.append(f"codes: {cat.total}; isotopy classes of codes: {fc.code_isotopy_classes}")
    out.append(f"frequency cubes: {fc.equivalence_classes} equivalence classes, "
               f"{fc.isotopy_classes} isotopy classes")
    return "\n".join(out)


def size_rows(records: Sequence[ClassRecord], n: int) -> dict[int, int]:
    """Number of classes with each cardinality."""
    return dict(sorted(Counter(r.size for r in records).items()))


def render_unitrade_table(unitrades: CatalogFile, doublecodes: CatalogFile | None = None) -> str:
    """Classes by size, pairing size s with its complement size 4**n - s.

    The totals count both members of each pair, as for the unitrade column.
    """
    n = unitrades.n
    full = Q**n
    u = size_rows(unitrades.records, n)
    d = size_rows(doublecodes.records, n) if doublecodes is not None else {}
    out = [f"unitrades, n={n}: classes by size", f"{'size':>10} {'unitrades':>10} {'double-codes':>13}"]
    tot_u = tot_d = 0
    for s in range(0, full // 2 + 1):
        cu = u.get(s, 0)
        if cu == 0:
            continue
        if u.get(full - s, 0) != cu:
            raise ValidationError(f"size {s} and {full - s} class counts differ")
        cd = d.get(s, 0)
        mult = 1 if 2 * s == full else 2
        tot_u += mult * cu
        tot_d += mult * cd
        label = f"{s}" if 2 * s == full else f"{s} or {full - s}"
        out.append(f"{label:>10} {cu:>10} {cd:>13}")
    if tot_u != len(unitrades.records):
        raise ValidationError(f"paired total {tot_u} differs from {len(unitrades.records)} classes")
    out.append(f"{'total:':>10} {tot_u:>10} {tot_d if doublecodes is not None else '':>13}")
    return "\n".join(out)


def unitrade_table_rows(unitrades: CatalogFile, doublecodes: CatalogFile) -> list[tuple[int, int, int]]:
    """(size, unitrade classes, double-code classes) for sizes up to half the cube."""
    full = Q**unitrades.n
    u = size_rows(unitrades.records, unitrades.n)
    d = size_rows(doublecodes.records, doublecodes.n)
    return [(s, u[s], d.get(s, 0)) for s in sorted(u) if 2 * s <= full]


def paired_total(rows: Iterable[tuple[int, int, int]], full: int, column: int) -> int:
    return sum((1 if 2 * r[0] == full else 2) * r[column] for r in rows)


def render_tables(catalogs: Iterable[CatalogFile]) -> str:
    cats = list(catalogs)
    by = {(c.n, c.kind): c for c in cats}
    parts = []
    for (n, kind), c in sorted(by.items()):
        if kind == "dmds":
            parts.append(render_aut_table(c))
        elif kind == "unitrade":
            parts.append(render_unitrade_table(c, by.get((n, "doublecode"))))
        elif (n, "unitrade") not in by:
            sizes = size_rows(c.records, n)
            parts.append(f"double-codes, n={n}: {len(c.records)} classes, {c.total} sets; sizes "
                         + ", ".join(f"{s}:{k}" for s, k in sizes.items()))
    return "\n\n".join(parts) + "\n"
