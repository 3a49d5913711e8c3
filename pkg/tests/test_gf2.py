import itertools

import numpy as np
import pytest

from freqcube import gf2
from freqcube.cube import CodeSet, classify_set, is_unitrade


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_rank_of_A(n):
    a = gf2.build_A(n)
    assert a.nrows == n * 4 ** (n - 1)
    assert a.rank() == 4**n - 3**n


def test_rank_matches_dense_elimination(rng):
    for _ in range(20):
        m = rng.integers(0, 2, size=(7, 9))
        # independent oracle: rank over GF(2) by brute force over row subsets
        rows = [int("".join(map(str, r)), 2) for r in m]
        span = {0}
        for r in rows:
            span |= {x ^ r for x in span}
        assert 2 ** gf2.rank(rows) == len(span)


def test_nullspace_and_solve(rng):
    for _ in range(20):
        m = gf2.Gf2Matrix.from_dense(rng.integers(0, 2, size=(5, 8)))
        ns = gf2.nullspace(m.rows, 8)
        assert len(ns) == 8 - m.rank()
        assert all(m.mul(v) == 0 for v in ns)
        x = int(rng.integers(0, 256))
        b = m.mul(x)
        rhs = [(b >> (m.nrows - 1 - i)) & 1 for i in range(m.nrows)]
        x0, basis = gf2.solve_affine(m.rows, rhs, 8)
        assert m.mul(x0) == b


def test_inconsistent_system():
    assert gf2.solve_affine([0b11, 0b11], [0, 1], 2) is None


def test_dense_roundtrip():
    arr = np.array([[1, 0, 1], [0, 1, 1]], dtype=np.uint8)
    assert (gf2.Gf2Matrix.from_dense(arr).to_dense() == arr).all()


def test_xor_basis_membership():
    b = gf2.XorBasis([0b110, 0b011])
    assert 0b101 in b and 0b100 not in b and len(b) == 2


def test_kernel_basis_sets_are_unitrades():
    for n in (1, 2, 3):
        basis = gf2.kernel_basis(n)
        assert len(basis) == 3**n
        assert all(is_unitrade(d) and len(d) == 2**n for d in basis)
        assert gf2.rank(d.bits for d in basis) == 3**n


def test_unitrade_bijection_n2():
    # 2^9 cores, 2^9 unitrades in H(2,4)
    cells = list(itertools.product(range(1, 4), repeat=2))
    seen = set()
    for mask in range(2**9):
        core = [c for i, c in enumerate(cells) if mask >> i & 1]
        u = gf2.unitrade_from_core(2, core)
        assert is_unitrade(u)
        assert set(gf2.core_of(u).points()) == set(core)
        seen.add(u.bits)
    assert len(seen) == 512
    all_unitrades = sum(is_unitrade(CodeSet(2, b)) for b in range(2**16))
    assert all_unitrades == 512


def test_linear_and_line_tests_agree(rng):
    for _ in range(100):
        s = CodeSet.from_array(rng.random((4, 4, 4)) < 0.5)
        assert gf2.is_unitrade_linear(s) == classify_set(s).is_unitrade


def test_basis_set_rejects_zero():
    with pytest.raises(ValueError):
        gf2.basis_set((0, 1))
