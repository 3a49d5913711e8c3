"""Classify the length-3 double-MDS-codes and unitrades layer by layer.

Run: python demos/02_classify_n3.py   (about a minute)
"""
import time

from freqcube import catalog
from freqcube.classifier import classify_upto, validate_double_count

for kind in ("dmds", "unitrade", "doublecode"):
    t = time.perf_counter()
    levels = classify_upto(3, kind)
    c = levels[-1]
    a, b, ok = validate_double_count(3, c.semi_classes, c.records)
    print(f"{kind:>10}: {len(c)} classes, {c.total} sets, "
          f"{len(c.semi_classes)} semi-code classes, double count {a} = {b}: {ok}, "
          f"{time.perf_counter() - t:.1f}s")
    if kind == "dmds":
        dmds = catalog.CatalogFile.from_classification(c)
    elif kind == "unitrade":
        uni = catalog.CatalogFile.from_classification(c)
        print("  equivalent to complement:", sum(r.equiv_to_complement for r in c.records))
    else:
        dbl = catalog.CatalogFile.from_classification(c)

print()
print(catalog.render_tables([dmds, uni, dbl]))

# The ten representatives, with their automorphism groups written P·T.
for r in dmds.records:
    g = r.group
    print(r.representative.to_hex(), f"{g.perm_group_order}·{g.atop_order}", "splittable" if r.splittable else "")
