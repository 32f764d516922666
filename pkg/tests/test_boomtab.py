import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from bctkit import boomtab, difftab
from bctkit.boomtab import (
    bct, bct_entry, bct_entry_inverse, bct_entry_naive, bct_inverse_row, bct_row, bct_row_powermap,
    bct_solutions, boomerang_uniformity,
)
from bctkit.difftab import BudgetExceeded
from bctkit.gf2n import coset_leader, field_new
from bctkit.vecfun import FuncSpec, UnsupportedInput, from_table, is_permutation, random_lut

from conftest import pm


def bct_pairs(f):
    """All q^2 pairs for every a; independent of the bucketed path."""
    q = f.field.q
    v = f.values
    xs = np.arange(q)
    out = np.zeros((q, q), dtype=np.int64)
    s = v[:, None] ^ v[None, :]
    for a in range(q):
        va = v[xs ^ a]
        t = va[:, None] ^ va[None, :]
        out[a] = np.bincount(s[s == t], minlength=q)
    return out


def bct_loops(f):
    q = f.field.q
    v = f.values.tolist()
    out = [[0] * q for _ in range(q)]
    for a in range(q):
        for x in range(q):
            for y in range(q):
                b = v[x] ^ v[y]
                if v[x ^ a] ^ v[y ^ a] == b:
                    out[a][b] += 1
    return np.array(out)


def test_pair_oracles_agree():
    f = pm(4, 7)
    assert np.array_equal(bct_loops(f), bct_pairs(f))


@pytest.mark.parametrize("n,d", [(3, 3), (4, 3), (4, 5), (4, 7), (5, 3), (6, 7), (6, 9), (6, 1)])
def test_bucketed_matches_pairs(n, d):
    f = pm(n, d)
    ref = bct_pairs(f)
    assert np.array_equal(bct(f, method="naive").full, ref)
    assert np.array_equal(bct(f, method="reduce").full, ref)


def test_random_luts_match_pairs():
    rng = np.random.default_rng(11)
    for n in (3, 4, 5):
        for _ in range(5):
            f = random_lut(field_new(n), rng)
            assert np.array_equal(bct(f).full, bct_pairs(f))


def test_entry_forms_agree():
    f = pm(6, 7)
    for a, b in [(1, 1), (1, 58), (3, 0), (0, 5), (17, 33)]:
        assert bct_entry(f, a, b) == bct_entry_naive(f, a, b)


def test_permutation_b0_is_q():
    f = pm(5, 3)
    for a in range(32):
        assert bct_entry(f, a, 0) == 32


def test_uniformity_examples():
    assert boomerang_uniformity(bct(pm(6, 7))) == 4
    assert boomerang_uniformity(bct(pm(8, 15))) == 2
    assert boomerang_uniformity(bct(pm(8, 45))) == 2
    assert boomerang_uniformity(bct(pm(4, 3), method="naive")) == 2


def test_a0_row():
    f = pm(4, 7)
    v = f.values
    row = bct(f).full[0]
    for b in range(16):
        assert row[b] == np.count_nonzero((v[:, None] ^ v[None, :]) == b)


def test_b0_column_excluded_from_max():
    # constant map: every pair solves b = 0, nothing else
    f = from_table(field_new(4), [1] * 16)
    t = bct(f)
    assert t.full[1:, 0].min() == 256
    assert boomerang_uniformity(t) == 0


def test_theorem1_positions():
    f = pm(6, 7)
    F = f.field
    w = F.cube_roots_of_unity() - {1}
    row = bct_row(f, 1)
    assert set(np.flatnonzero(row == 4).tolist()) >= {1} | w


def test_row_powermap():
    f = pm(6, 7)
    assert np.array_equal(bct_row_powermap(f, 1), bct_row(f, 1))
    with pytest.raises(ValueError):
        bct_row_powermap(f, 0)


@pytest.mark.parametrize("n", range(2, 9))
def test_scaling_and_frobenius_all_leaders(n):
    F = field_new(n)
    sq = F.pow_vec(F.elements(), 2)
    for d in sorted({coset_leader(d, n) for d in range(1, F.q - 1)}):
        f = FuncSpec(F, d=d)
        naive = bct(f, method="naive", threads=1).full
        assert np.array_equal(bct(f, method="reduce").full, naive)
        assert naive[1:, 1:].max(initial=0) == bct_row(f, 1)[1:].max(initial=0)
        r = naive[1]
        assert np.array_equal(r[sq], r)


def test_inverse_formulation():
    f = pm(5, 3)
    for a in range(32):
        assert np.array_equal(bct_inverse_row(f, a), bct_row(f, a))
    assert bct_entry_inverse(f, 3, 0) == 32
    assert bct_entry_inverse(f, 3, 7) == bct_entry(f, 3, 7)
    with pytest.raises(UnsupportedInput):
        bct_entry_inverse(pm(6, 7), 1, 1)


def test_inverse_formulation_random_permutations():
    rng = np.random.default_rng(4)
    for _ in range(10):
        f = random_lut(field_new(4), rng, permutation=True)
        t = bct(f).full
        for a in range(16):
            assert np.array_equal(bct_inverse_row(f, a), t[a])


def test_dominance_and_evenness():
    rng = np.random.default_rng(8)
    funcs = [pm(6, d) for d in range(1, 63)] + [random_lut(field_new(5), rng) for _ in range(10)]
    for f in funcs:
        d = difftab.ddt(f).full
        b = bct(f).full
        assert np.all(d[1:, 1:] <= b[1:, 1:])
        assert np.all(b[:, 1:] % 2 == 0)


def test_solution_symmetry():
    f = pm(6, 7)
    for b in range(1, 64):
        sols = set(bct_solutions(f, 1, b))
        assert len(sols) == bct_entry(f, 1, b)
        assert {(y, x) for x, y in sols} == sols
        assert {(x ^ 1, y ^ 1) for x, y in sols} == sols


def test_solutions_b1_theorem1():
    f = pm(6, 7)
    w1, w2 = sorted(f.field.cube_roots_of_unity() - {1})
    assert bct_solutions(f, 1, 1) == sorted([(0, 1), (1, 0), (w1, w2), (w2, w1)])


def test_budget_refusal():
    with pytest.raises(BudgetExceeded):
        bct(pm(13, 3), method="naive")
    with pytest.raises(BudgetExceeded):
        bct(pm(17, 3))
    # identity at n=12: q^3/2 pairs is far over the pair budget
    with pytest.raises(BudgetExceeded) as e:
        bct(FuncSpec(field_new(12), table=tuple(range(4096))))
    assert e.value.estimate > 1e10


def test_threads_do_not_change_result():
    f = random_lut(field_new(6), np.random.default_rng(2))
    assert np.array_equal(bct(f, threads=1).full, bct(f, threads=3).full)


@settings(max_examples=40, deadline=None)
@given(st.integers(2, 6), st.data())
def test_bucketed_row_property(n, data):
    q = 1 << n
    table = data.draw(st.lists(st.integers(0, q - 1), min_size=q, max_size=q))
    a = data.draw(st.integers(0, q - 1))
    f = from_table(field_new(n), table)
    v = f.values
    va = v[np.arange(q) ^ a]
    s = v[:, None] ^ v[None, :]
    t = va[:, None] ^ va[None, :]
    assert np.array_equal(bct_row(f, a), np.bincount(s[s == t], minlength=q))
