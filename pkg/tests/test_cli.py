import pytest

from freqcube.cli import main


def test_classify_validate_tables(tmp_path, capsys):
    out = tmp_path / "dmds2.cat"
    assert main(["classify", "--n", "2", "--kind", "dmds", "--out", str(out)]) == 0
    assert "total=90" in capsys.readouterr().out
    assert main(["validate", "--n", "2", "--catalog", str(out)]) == 0
    assert "90 via semi-codes, 90 via class sizes" in capsys.readouterr().out
    assert main(["tables", "--catalogs", str(out)]) == 0
    assert "total:" in capsys.readouterr().out


def test_classify_sharded_resume(tmp_path):
    out = tmp_path / "u2.cat"
    assert main(["classify", "--n", "2", "--kind", "unitrade", "--shards", "3", "--out", str(out)]) == 0
    assert (tmp_path / "u2.cat.journal").exists()
    assert main(["classify", "--n", "2", "--kind", "unitrade", "--shards", "3", "--resume", "--out", str(out)]) == 0
    assert out.read_text().startswith("# n=2 kind=unitrade total=512 classes=10")


def test_validate_mismatch(tmp_path, capsys):
    good = tmp_path / "d2.cat"
    main(["classify", "--n", "2", "--out", str(good)])
    lines = good.read_text().splitlines()
    lines[0] = lines[0].replace("total=90", "total=91")
    bad = tmp_path / "bad.cat"
    bad.write_text("\n".join(lines) + "\n")
    assert main(["validate", "--n", "2", "--catalog", str(bad)]) == 1
    assert "line 1" in capsys.readouterr().err


def test_usage_errors(tmp_path):
    with pytest.raises(SystemExit) as e:
        main(["classify", "--n", "2"])
    assert e.value.code == 2
    assert main(["bound", "--n", "2"]) == 2
    assert main(["classify", "--n", "9", "--out", str(tmp_path / "x")]) == 2
    assert main(["check", "--file", str(tmp_path / "missing")]) == 2


def test_construct(capsys):
    assert main(["construct", "--nonsplittable", "--n", "4"]) == 0
    out = capsys.readouterr().out
    assert "double-mds: True" in out and "splittable: False" in out and "odd-cycle-9: True" in out


def test_bound(capsys):
    assert main(["bound", "--n", "5"]) == 0
    assert "testing-set size=225" in capsys.readouterr().out


def test_check_hex_and_points(tmp_path, capsys):
    f = tmp_path / "s.txt"
    f.write_text("33cc\n")
    assert main(["check", "--file", str(f)]) == 0
    out = capsys.readouterr().out
    assert "n=2 size=8 double-mds=True" in out and "is-canonical=True" in out
    f.write_text("0 0\n0 1\n")
    assert main(["check", "--file", str(f)]) == 0
    assert "double-mds=False" in capsys.readouterr().out


def test_split_census(tmp_path, capsys):
    out = tmp_path / "d3.cat"
    main(["classify", "--n", "3", "--out", str(out)])
    capsys.readouterr()
    assert main(["split-census", "--catalog", str(out)]) == 0
    assert "classes=10" in capsys.readouterr().out
