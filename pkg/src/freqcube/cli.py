"""Command line interface: ``python -m freqcube <command> ...``.

Exit codes: 0 success, 1 validation mismatch or unreadable input, 2 usage error.
"""
from __future__ import annotations

import argparse
import logging
import sys
from pathlib import Path

from . import catalog as cat
from . import classifier as clf
from . import split, testing
from .cube import KINDS, ConfigurationError, CodeSet, classify_set
from .symmetry import canonical_form, isotopy_canonical_form

log = logging.getLogger("freqcube")


class UsageError(Exception):
    pass


class Mismatch(Exception):
    pass


def _previous(n: int, kind: str, path: str | None) -> clf.Classification | None:
    if n == 1:
        return None
    if path:
        prev = cat.read_catalog(path).to_classification()
        if prev.n != n - 1 or prev.kind != kind:
            raise UsageError(f"--previous must be the n={n - 1} {kind} catalog")
        return prev
    return clf.classify_upto(n - 1, kind)[-1]


def cmd_classify(args) -> int:
    if not 1 <= args.n <= clf.MAX_CLASSIFY_N:
        raise UsageError(f"classification supports 1 <= n <= {clf.MAX_CLASSIFY_N}")
    if args.shards < 1:
        raise UsageError("--shards must be positive")
    budget = clf.ComputeBudget.from_env(shards=args.shards, resume=args.resume,
                                        journal=Path(args.out + ".journal") if args.shards > 1 or args.resume else None)
    prev = _previous(args.n, args.kind, args.previous)
    c = clf.classify(args.n, args.kind, previous=prev, budget=budget, progress=args.verbose)
    if c.semi_classes:
        a, b, ok = clf.validate_double_count(c.n, c.semi_classes, c.records)
        print(f"double count: {a} via semi-codes, {b} via classes")
        if not ok:
            raise Mismatch("double counting failed")
    cat.write_catalog(c, args.out)
    print(f"n={c.n} kind={c.kind} classes={len(c)} total={c.total} isotopy-classes={c.isotopy_classes}")
    return 0


def cmd_validate(args) -> int:
    catalog = cat.read_catalog(args.catalog, check_canonical=not args.fast)
    if catalog.n != args.n:
        raise UsageError(f"catalog is for n={catalog.n}, not {args.n}")
    if args.n > clf.MAX_CLASSIFY_N:
        raise UsageError(f"validation supports n <= {clf.MAX_CLASSIFY_N}")
    if args.n == 1:
        print(f"n=1: {catalog.total} codes in {len(catalog)} classes")
        return 0
    prev = _previous(args.n, catalog.kind, args.previous)
    semis = clf.count_completions(prev)
    a, b, ok = clf.validate_double_count(args.n, semis, catalog.records)
    print(f"n={args.n} kind={catalog.kind}: {a} via semi-codes, {b} via class sizes")
    if not ok:
        raise Mismatch("totals differ")
    return 0


def cmd_tables(args) -> int:
    cats = [cat.read_catalog(p, check_canonical=not args.fast) for p in args.catalogs]
    sys.stdout.write(cat.render_tables(cats))
    return 0


def cmd_split_census(args) -> int:
    catalog = cat.read_catalog(args.catalog, check_canonical=not args.fast)
    if catalog.kind != "dmds":
        raise UsageError("the census runs on a double-MDS catalog")
    report = split.layer_splittability_census(r.representative for r in catalog.records)
    print(report.summary())
    for row in report.exceptional:
        print("exceptional", row.representative.to_hex())
    return 1 if report.violations else 0


def cmd_construct(args) -> int:
    if not args.nonsplittable:
        raise UsageError("only --nonsplittable is available")
    code = split.construct_nonsplittable(args.n)
    cyc = split.nonsplittable_cycle(args.n)
    kind = classify_set(code)
    ok_cycle = all(p in code for p in cyc) and len(cyc) % 2 == 1
    checks = {
        "double-mds": kind.is_double_mds,
        "splittable": split.splittable(code),
        "layers-splittable": split.layers_all_splittable(code),
        f"odd-cycle-{len(cyc)}": ok_cycle,
        "cycle-colours": split.odd_cycle_color_check(cyc),
    }
    print(code.to_hex())
    for k, v in checks.items():
        print(f"{k}: {v}")
    if args.out:
        Path(args.out).write_text(code.to_hex() + "\n", encoding="utf-8", newline="\n")
    good = checks["double-mds"] and not checks["splittable"] and checks["layers-splittable"] and ok_cycle
    return 0 if good else 1


def cmd_testset(args) -> int:
    if args.n != 3:
        raise UsageError("testing sets are derived for n=3")
    cats = {c.kind: c for c in (cat.read_catalog(p, check_canonical=not args.fast) for p in args.catalogs)}
    if "dmds" not in cats or "unitrade" not in cats or any(c.n != 3 for c in cats.values()):
        raise UsageError("need the n=3 dmds and unitrade catalogs")
    codes = clf.all_codes(cats["dmds"].to_classification())
    special, hist = testing.find_special_unitrades([r.representative for r in cats["unitrade"].records], codes)
    print("k_D histogram:", " ".join(f"{k}:{v}" for k, v in sorted(hist.items())))
    status = 0
    for i, s in enumerate(special):
        t = testing.derive_testing_set(s)
        line = f"D size={s.size} k_D={s.k_D} hex={s.D.to_hex()} -> testing set size={len(t)}"
        if args.verify:
            ok = testing.verify_testing_set(t, codes)
            line += f" verified={ok}"
            status |= 0 if ok else 1
        print(line)
        if args.out:
            out = Path(args.out)
            path = out if len(special) == 1 else out.with_name(f"{out.stem}-{i}{out.suffix}")
            testing.write_testing_set(t, path)
    if args.verify:
        ok = testing.verify_testing_set(testing.trivial_testing_set(3), codes)
        print(f"trivial testing set size=27 verified={ok}")
        status |= 0 if ok else 1
    return status


def cmd_bound(args) -> int:
    alpha, bits = testing.upper_bound(args.n)
    print(f"n={args.n} testing-set size={int(bits)} alpha={alpha:.12f} bound=2^{int(bits)}")
    return 0


def _read_set(path: str) -> CodeSet:
    text = Path(path).read_text(encoding="utf-8")
    rows = [r.strip() for r in text.splitlines() if r.strip() and not r.startswith("#")]
    if len(rows) == 1 and len(rows[0].split()) == 1:
        h = rows[0]
        n, width = 1, 1
        while width < len(h):
            n, width = n + 1, width * 4
        if width != len(h):
            raise UsageError(f"hex length {len(h)} is not a power of 4")
        return CodeSet.from_hex(n, h)
    pts = [tuple(int(x) for x in r.split()) for r in rows]
    if not pts or len({len(p) for p in pts}) != 1:
        raise UsageError("points must all have the same length")
    return CodeSet.from_points(len(pts[0]), pts)


def cmd_check(args) -> int:
    s = _read_set(args.file)
    k = classify_set(s, diagnostic=True)
    print(f"n={s.n} size={len(s)} double-mds={k.is_double_mds} double-code={k.is_double_code} "
          f"unitrade={k.is_unitrade}")
    if s.n <= 4:
        canon, g = canonical_form(s)
        print(f"canonical={canon.to_hex()} is-canonical={canon == s} aut={g.aut_order} atop={g.atop_order} "
              f"type={g.perm_group_type}")
        print(f"isotopy-canonical={isotopy_canonical_form(s).to_hex()}")
    if k.is_double_code:
        print(f"splittable={split.splittable(s)}")
    return 0


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="freqcube", description=__doc__.splitlines()[0])
    p.add_argument("-v", "--verbose", action="store_true")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("classify", help="classify codes of length n")
    s.add_argument("--n", type=int, required=True)
    s.add_argument("--kind", choices=KINDS, default="dmds")
    s.add_argument("--shards", type=int, default=1)
    s.add_argument("--resume", action="store_true")
    s.add_argument("--previous", help="catalog for length n-1 (otherwise computed)")
    s.add_argument("--out", required=True)
    s.set_defaults(func=cmd_classify)

    s = sub.add_parser("validate", help="double-count check of a catalog")
    s.add_argument("--n", type=int, required=True)
    s.add_argument("--catalog", required=True)
    s.add_argument("--previous")
    s.add_argument("--fast", action="store_true", help="skip the canonical check on load")
    s.set_defaults(func=cmd_validate)

    s = sub.add_parser("tables", help="render summary tables")
    s.add_argument("--catalogs", nargs="+", required=True)
    s.add_argument("--fast", action="store_true")
    s.set_defaults(func=cmd_tables)

    s = sub.add_parser("split-census", help="layer splittability census")
    s.add_argument("--catalog", required=True)
    s.add_argument("--fast", action="store_true")
    s.set_defaults(func=cmd_split_census)

    s = sub.add_parser("construct", help="build the non-splittable code")
    s.add_argument("--nonsplittable", action="store_true")
    s.add_argument("--n", type=int, required=True)
    s.add_argument("--out")
    s.set_defaults(func=cmd_construct)

    s = sub.add_parser("testset", help="search special unitrades and derive testing sets")
    s.add_argument("--n", type=int, required=True)
    s.add_argument("--catalogs", nargs="+", required=True)
    s.add_argument("--verify", action="store_true")
    s.add_argument("--out")
    s.add_argument("--fast", action="store_true")
    s.set_defaults(func=cmd_testset)

    s = sub.add_parser("bound", help="upper bound on the number of codes")
    s.add_argument("--n", type=int, required=True)
    s.set_defaults(func=cmd_bound)

    s = sub.add_parser("check", help="inspect one set (hex or point list)")
    s.add_argument("--file", required=True)
    s.set_defaults(func=cmd_check)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(message)s")
    try:
        return args.func(args)
    except (UsageError, ConfigurationError, clf.PreconditionError) as e:
        print(f"error: {e}", file=sys.stderr)
        return 2
    except (Mismatch, cat.CatalogError, clf.ValidationError) as e:
        print(f"validation failed: {e}", file=sys.stderr)
        return 1
    except OSError as e:
        print(f"error: {e}", file=sys.stderr)
        return 2
