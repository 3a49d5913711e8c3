import itertools

import pytest

from freqcube import split
from freqcube.cube import CodeSet, ConfigurationError, is_double_mds, layers
from freqcube.split import (construct_nonsplittable, cycle_edges, edge_color, is_splittable,
                            layer_splittability_census, nonsplittable_cycle, odd_cycle_color_check, splittable)


def latin_squares(order=4):
    rows = list(itertools.permutations(range(order)))
    out = []

    def extend(square):
        if len(square) == order:
            out.append(tuple(square))
            return
        for r in rows:
            if all(r[j] != s[j] for s in square for j in range(order)):
                extend(square + [r])

    extend([])
    return out


def mds_mask(square):
    bits = 0
    for x, row in enumerate(square):
        for y, z in enumerate(row):
            bits |= 1 << (63 - (16 * x + 4 * y + z))
    return bits


def test_edge_colors():
    assert edge_color(0, 1) == edge_color(2, 3) == 1
    assert edge_color(0, 2) == edge_color(1, 3) == 2
    assert edge_color(0, 3) == edge_color(1, 2) == 3
    with pytest.raises(ValueError):
        edge_color(1, 1)


def test_n2_codes_all_split():
    codes = [CodeSet(2, b) for b in range(2**16) if bin(b).count("1") == 8]
    codes = [c for c in codes if is_double_mds(c)]
    assert len(codes) == 90
    for c in codes:
        res = is_splittable(c)
        a, b = res.parts
        assert (a | b) == c and not (a & b).bits


def test_parts_are_mds(dmds3):
    for rep in dmds3.representatives:
        res = is_splittable(rep)
        if res:
            for part in res.parts:
                assert len(part) == 16
        else:
            cyc = res.witness_cycle
            assert len(cyc) % 2 == 1 and all(p in rep for p in cyc)
            assert odd_cycle_color_check(cyc)


def test_splittable_codes_are_unions_of_two_latin_squares(codes3):
    squares = latin_squares()
    assert len(squares) == 576
    masks = [mds_mask(s) for s in squares]
    unions = {a | b for a, b in itertools.combinations(masks, 2) if not a & b}
    split_codes = {int(c) for c in codes3 if splittable(CodeSet(3, int(c)))}
    assert split_codes == unions
    assert len(unions) == 8478


def test_not_a_double_code():
    with pytest.raises(ValueError):
        is_splittable(CodeSet.full(2))


@pytest.mark.parametrize("n", [3, 4, 5, 6])
def test_construction(n):
    code = construct_nonsplittable(n)
    assert is_double_mds(code)
    assert not splittable(code)
    assert all(splittable(l) for row in layers(code) for l in row)
    cyc = nonsplittable_cycle(n)
    assert len(cyc) == 2 * n + 1
    assert all(p in code for p in cyc)
    cycle_edges(cyc)  # validates adjacency
    assert odd_cycle_color_check(cyc)


def test_construction_range():
    with pytest.raises(ConfigurationError):
        construct_nonsplittable(2)


def test_cycle_validation():
    with pytest.raises(ValueError):
        cycle_edges([(0, 0), (1, 1), (0, 1)])


def test_even_cycle_has_no_three_colours():
    square = [(0, 0), (0, 1), (1, 1), (1, 0)]
    assert not odd_cycle_color_check(square)


def test_census_n3(dmds3):
    report = layer_splittability_census(dmds3.representatives)
    assert report.violations == 0
    assert report.splittable_count + len(report.exceptional) == len(dmds3)


def test_sector():
    assert split.sector((3, 1, 2)) == (2, 0, 0)
