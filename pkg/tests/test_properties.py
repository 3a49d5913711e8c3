"""Property tests that need no catalog: random codes are built on the fly."""
import itertools

import numpy as np
from hypothesis import HealthCheck, given, settings
from hypothesis import strategies as st

from freqcube import gf2
from freqcube.cube import CodeSet, classify_set, complement, layers, line_counts
from freqcube.split import construct_nonsplittable, is_splittable, odd_cycle_color_check
from freqcube.symmetry import Transform, apply, canonical_form, isotopy_canonical_form

def slow(examples):
    return settings(max_examples=examples, deadline=None, suppress_health_check=[HealthCheck.too_slow])

pairs = st.sampled_from(list(itertools.combinations(range(4), 2)))
perms = st.permutations(range(4))


@st.composite
def transforms(draw, n):
    sigma = tuple(draw(st.permutations(range(n))))
    thetas = tuple(tuple(draw(perms)) for _ in range(n))
    return Transform(sigma, thetas)


@st.composite
def xor_codes(draw, n):
    """x -> g_1(x_1) + ... + g_n(x_n) with each g_i two-to-one onto {0, 1}."""
    arr = np.zeros((4,) * n, dtype=bool)
    for i in range(n):
        g = np.zeros(4, dtype=bool)
        g[list(draw(pairs))] = True
        shape = [1] * n
        shape[i] = 4
        arr ^= g.reshape(shape)
    return CodeSet.from_array(arr)


@st.composite
def stacked_codes(draw):
    """Length-3 codes glued from three length-2 xor codes and the forced fourth layer."""
    while True:
        l1, l2, l3 = (draw(xor_codes(2)) for _ in range(3))
        l4 = l1 ^ l2 ^ l3
        if classify_set(l4).is_double_mds and ((l1 | l2 | l3) == CodeSet.full(2)) and not (l1 & l2 & l3).bits:
            arr = np.stack([l.to_array() for l in (l1, l2, l3, l4)], axis=-1)
            return CodeSet.from_array(arr)


@st.composite
def codes3(draw):
    base = draw(st.one_of(xor_codes(3), stacked_codes(), st.just(construct_nonsplittable(3))))
    return apply(draw(transforms(3)), base)


@slow(1000)
@given(st.integers(0, 2**27 - 1))
def test_unitrade_bijection(mask):
    cells = list(itertools.product(range(1, 4), repeat=3))
    core = [c for i, c in enumerate(cells) if mask >> i & 1]
    u = gf2.unitrade_from_core(3, core)
    assert classify_set(u).is_unitrade
    assert sorted(gf2.core_of(u).points()) == sorted(core)


@slow(200)
@given(codes3(), codes3())
def test_symmetric_difference_is_unitrade(a, b):
    assert classify_set(a).is_double_mds and classify_set(b).is_double_mds
    assert classify_set(a ^ b).is_unitrade


@slow(100)
@given(codes3(), st.lists(transforms(3), min_size=100, max_size=100))
def test_canonical_orbit_invariance(code, ts):
    rep, group = canonical_form(code)
    iso = isotopy_canonical_form(code)
    for t in ts:
        image = apply(t, code)
        assert canonical_form(image) == (rep, group)
        if t.is_isotopy():
            assert isotopy_canonical_form(image) == iso


@slow(200)
@given(codes3())
def test_witness_cycles_carry_three_colours(code):
    res = is_splittable(code)
    if res.splittable:
        a, b = res.parts
        assert (line_counts(a) == 1).all() and (line_counts(b) == 1).all()
    else:
        assert len(res.witness_cycle) % 2 == 1
        assert odd_cycle_color_check(res.witness_cycle)


@given(st.integers(3, 6), st.data())
@settings(max_examples=20, deadline=None)
def test_construction_witness(n, data):
    code = apply(data.draw(transforms(n)), construct_nonsplittable(n))
    res = is_splittable(code)
    assert not res.splittable and odd_cycle_color_check(res.witness_cycle)


@given(st.integers(1, 4), st.data())
@settings(max_examples=100, deadline=None)
def test_line_and_layer_tests_agree(n, data):
    bits = data.draw(st.integers(0, 2 ** (4**n) - 1))
    s = CodeSet(n, bits)
    k = classify_set(s)
    if n >= 2:
        layerwise = all(classify_set(l).is_double_mds for row in layers(s) for l in row)
        assert k.is_double_mds == (layerwise and bool((line_counts(s) == 2).all()))
    c = classify_set(complement(s))
    assert c.is_unitrade == k.is_unitrade and c.is_double_mds == k.is_double_mds


@given(xor_codes(4), transforms(4))
@settings(max_examples=10, deadline=None)
def test_xor_codes_are_double_mds(code, t):
    assert classify_set(code).is_double_mds
    assert classify_set(apply(t, code)).is_double_mds
