import json

import numpy as np
import pytest

from freqcube import classifier as clf
from freqcube.classifier import ComputeBudget, classify, complete_fourth_layer
from freqcube.cube import CodeSet, ConfigurationError, classify_set, has_kind
from freqcube.symmetry import canonical_rep


@pytest.fixture(scope="module")
def n2_brute():
    out = {"dmds": [], "unitrade": [], "doublecode": []}
    for b in range(2**16):
        s = CodeSet(2, b)
        k = classify_set(s)
        if k.is_unitrade:
            out["unitrade"].append(b)
            if k.is_double_code:
                out["doublecode"].append(b)
            if k.is_double_mds:
                out["dmds"].append(b)
    return out


@pytest.mark.parametrize("kind, total, classes", [("dmds", 6, 1), ("doublecode", 7, 2), ("unitrade", 8, 3)])
def test_n1(kind, total, classes):
    c = classify(1, kind)
    assert c.total == total and len(c) == classes


@pytest.mark.parametrize("kind", ["dmds", "doublecode", "unitrade"])
def test_n2_against_brute_force(kind, n2_brute):
    brute = n2_brute[kind]
    c = classify(2, kind)
    assert c.total == len(brute)
    assert np.array_equal(clf.all_codes(c), np.array(brute, dtype=np.uint64))
    reps = {canonical_rep(CodeSet(2, b)).bits for b in brute}
    assert sorted(reps) == [r.representative.bits for r in c.records]
    a, b, ok = clf.validate_double_count(2, c.semi_classes, c.records)
    assert ok and a == len(brute)


def test_n2_expected_totals(n2_brute):
    assert len(n2_brute["dmds"]) == 90
    assert len(n2_brute["unitrade"]) == 2**9


def test_semi_code_sizes_sum(dmds_levels):
    c3 = dmds_levels[-1]
    n2 = dmds_levels[1].total
    assert sum(s.size for s in c3.semi_classes) == n2 * n2


def test_records_are_kind_and_canonical(dmds3):
    for r in dmds3.records:
        assert has_kind(r.representative, "dmds")
        assert canonical_rep(r.representative) == r.representative


def test_fourth_layer():
    a = CodeSet.from_points(1, [(0,), (1,)])
    b = CodeSet.from_points(1, [(2,), (3,)])
    assert complete_fourth_layer(a, b, a) == b
    with pytest.raises(ValueError):
        complete_fourth_layer(a, a, a)


def test_errors(dmds_levels):
    with pytest.raises(ConfigurationError):
        classify(5)
    with pytest.raises(ConfigurationError):
        classify(2, "latin")
    with pytest.raises(clf.PreconditionError):
        classify(4)
    with pytest.raises(clf.PreconditionError):
        classify(3, previous=dmds_levels[0])


def test_double_count_mismatch_detected(dmds3):
    bad = list(dmds3.semi_classes)
    s = bad[0]
    bad[0] = clf.SemiClass(s.first, s.second, s.stabilizer, s.size, s.completions + 1)
    with pytest.raises(clf.ValidationError):
        clf.check_double_count(3, bad, dmds3.records)


def test_sharded_journal_and_resume(tmp_path, dmds_levels):
    prev = dmds_levels[1]
    journal = tmp_path / "n3.journal"
    c = classify(3, previous=prev, budget=ComputeBudget(shards=4, journal=journal))
    lines = journal.read_text().splitlines()
    assert len(lines) == 4 and all(json.loads(l)["n"] == 3 for l in lines)
    assert [r.representative for r in c.records] == dmds_levels[2].representatives
    # drop the last shard, resume recomputes only that one
    journal.write_text("\n".join(lines[:3]) + "\n")
    again = classify(3, previous=prev, budget=ComputeBudget(shards=4, journal=journal, resume=True))
    assert len(journal.read_text().splitlines()) == 4
    assert again.total == c.total == 51678
    assert again.total_via_semicodes == 51678


def test_worker_pool(dmds_levels, monkeypatch):
    monkeypatch.setenv("FREQCUBE_THREADS", "2")
    budget = ComputeBudget.from_env(shards=2)
    assert budget.workers == 2
    c = classify(3, previous=dmds_levels[1], budget=budget)
    assert len(c) == 10
