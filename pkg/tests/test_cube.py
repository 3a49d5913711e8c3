import itertools

import numpy as np
import pytest

from freqcube.cube import (CodeSet, ConfigurationError, classify_set, complement, enumerate_lines, index_point,
                           is_double_code, is_double_mds, is_unitrade, layer, layers, line_counts, point_index,
                           stack_layers)

# the n=2 pictures: rows are the first coordinate
EMPTY = []
BLOCK = [(0, 0), (0, 1), (1, 0), (1, 1)]
DIAGONAL_BLOCKS = [(0, 0), (0, 1), (1, 0), (1, 1), (2, 2), (2, 3), (3, 2), (3, 3)]
LATIN_LIKE = [(0, 0), (0, 1), (1, 0), (1, 2), (2, 1), (2, 3), (3, 2), (3, 3)]
HOOK = [(0, 0), (0, 1), (1, 0), (1, 2), (2, 0), (2, 3), (3, 0), (3, 1), (3, 2), (3, 3)]


@pytest.mark.parametrize("n, count", [(1, 1), (2, 8), (3, 48), (4, 256)])
def test_line_count(n, count):
    lines = enumerate_lines(n)
    assert len(lines) == count == n * 4 ** (n - 1)
    assert len({frozenset(l.indices()) for l in lines}) == count


def test_lines_are_cliques():
    for line in enumerate_lines(3):
        pts = line.points()
        assert len(pts) == 4
        for a, b in itertools.combinations(pts, 2):
            assert sum(x != y for x, y in zip(a, b)) == 1


def test_every_point_on_n_lines():
    n = 3
    hits = np.zeros(4**n, dtype=int)
    for line in enumerate_lines(n):
        hits[line.indices()] += 1
    assert (hits == n).all()


@pytest.mark.parametrize("n", [0, 9])
def test_dimension_range(n):
    with pytest.raises(ConfigurationError):
        enumerate_lines(n)


def test_index_roundtrip():
    for n in (1, 2, 3):
        for i in range(4**n):
            assert point_index(index_point(i, n)) == i
    assert point_index((1, 2, 3)) == 16 + 8 + 3


def test_bad_symbol():
    with pytest.raises(ValueError):
        point_index((0, 4))


def test_hex_msb_is_first_cell():
    s = CodeSet.from_points(2, [(0, 0)])
    assert s.to_hex() == "8000"
    assert CodeSet.from_hex(2, "8000") == s
    assert len(CodeSet.full(3).to_hex()) == 16


def test_hex_wrong_length():
    with pytest.raises(ValueError):
        CodeSet.from_hex(2, "800")


def test_n1_pair_is_everything():
    s = CodeSet.from_points(1, [(0,), (1,)])
    k = classify_set(s)
    assert k.is_double_mds and k.is_double_code and k.is_unitrade


def test_pictures():
    n = 2
    sets = [CodeSet.from_points(n, p) for p in (EMPTY, BLOCK, DIAGONAL_BLOCKS, LATIN_LIKE, HOOK)]
    assert [is_double_code(s) for s in sets[:4]] == [True] * 4
    assert [is_double_mds(s) for s in sets] == [False, False, True, True, False]
    assert is_unitrade(sets[4]) and not is_double_code(sets[4])
    assert is_double_code(complement(sets[4]))


def test_kinds_nest(rng):
    for _ in range(300):
        s = CodeSet.from_array(rng.random((4, 4)) < 0.5)
        k = classify_set(s, diagnostic=True)
        assert not k.is_double_mds or k.is_double_code
        assert not k.is_double_code or k.is_unitrade
        counts = line_counts(s)
        assert k.is_unitrade == bool((counts % 2 == 0).all())
        assert k.is_double_code == bool(np.isin(counts, (0, 2)).all())
        assert k.is_double_mds == bool((counts == 2).all())


def test_layer_of_full():
    assert layer(CodeSet.full(2), 0, 3) == CodeSet.full(1)


def test_layers_and_stack_roundtrip(dmds3):
    for rep in dmds3.representatives:
        grid = layers(rep)
        assert len(grid) == 3 and all(len(row) == 4 for row in grid)
        for d, row in enumerate(grid):
            assert all(is_double_mds(l) for l in row)
            assert stack_layers(row, d) == rep
        assert stack_layers(grid[-1]) == rep


def test_layer_needs_n2():
    with pytest.raises(ValueError):
        layer(CodeSet.full(1), 0, 0)


def test_complement_involution(rng):
    for n in (1, 2, 3):
        s = CodeSet.from_array(rng.random((4,) * n) < 0.3)
        assert complement(complement(s)) == s
        assert len(complement(s)) == 4**n - len(s)


def test_set_ops_need_same_n():
    with pytest.raises(ValueError):
        CodeSet.full(1) ^ CodeSet.full(2)
