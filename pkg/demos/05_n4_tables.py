"""The length-4 catalog: 8895 classes of double-MDS-codes.

The catalog in data/dmds4.cat comes from `freqcube classify --n 4` (about half
an hour on one core). This script reads it and prints the summary table.
Run: python demos/05_n4_tables.py
"""
from pathlib import Path

from freqcube import catalog
from freqcube.split import layer_splittability_census

path = Path(__file__).resolve().parents[1] / "data" / "dmds4.cat"
c4 = catalog.read_catalog(path, check_canonical=False)
print(catalog.render_tables([c4]))

report = layer_splittability_census(r.representative for r in c4.records)
print(report.summary())
for row in report.exceptional:
    print("  all layers split, code does not:", row.representative.to_hex())
