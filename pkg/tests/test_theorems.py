import numpy as np
import pytest

from bctkit import boomtab, theorems as T
from bctkit.gf2n import coset_leader, field_new
from bctkit.vecfun import FuncSpec, from_table, random_lut

from conftest import pm


@pytest.mark.parametrize("m,d10,d11", [(2, 2, 2), (3, 6, 4), (4, 14, 2)])
def test_lemma2(m, d10, d11):
    o = T.verify_lemma2(m)
    assert o.passed
    assert o.observed["ddt_1_0"] == d10
    assert o.observed["ddt_1_1"] == d11


def test_lemma2_range():
    with pytest.raises(ValueError):
        T.verify_lemma2(1)
    with pytest.raises(ValueError):
        T.verify_lemma2(9)


def test_theorem1():
    o = T.verify_theorem1(3)
    assert o.passed, o.line()
    assert "boomerang_naive_full" in o.observed
    assert T.verify_theorem1(5).passed
    with pytest.raises(ValueError):
        T.verify_theorem1(4)


def test_theorem2():
    for m in (2, 4, 6):
        assert T.verify_theorem2(m).passed
    with pytest.raises(ValueError):
        T.verify_theorem2(3)


def test_theorem_p2():
    assert T.verify_theoremP2(pm(5, 3)).passed
    assert T.verify_theoremP2(pm(4, 3)).passed
    with pytest.raises(T.PreconditionError):
        T.verify_theoremP2(pm(6, 7))


def test_theorem_p2_random_apn_not_power():
    # translating input and output of x^3 keeps it APN but leaves the power-map family
    f = pm(5, 3)
    F = f.field
    table = [int(f.values[x ^ 5]) ^ 9 for x in range(F.q)]
    assert T.verify_theoremP2(from_table(F, table)).passed


def test_proposition():
    assert T.verify_proposition(pm(5, 3)).passed
    with pytest.raises(T.PreconditionError, match="not a permutation"):
        T.verify_proposition(pm(8, 15))
    ident = FuncSpec(field_new(4), d=1)
    with pytest.raises(T.PreconditionError, match="boomerang uniformity 16"):
        T.verify_proposition(ident)


def test_converse_remark():
    o = T.verify_converse_remark()
    assert o.passed
    assert o.observed == {"boomerang": 2, "permutation": False, "apn": False}


def test_ll2():
    assert T.verify_ll2(pm(5, 3)).passed
    with pytest.raises(T.PreconditionError):
        T.verify_ll2(pm(6, 3))


def test_quartic_containment():
    for m in (2, 3, 4):
        assert T.linearized_roots_contained_in_quartic(m)
        ddt_row, roots = T.quartic_root_counts(m)
        assert np.all(ddt_row <= roots)
        assert roots.max() <= 2


def test_outcome_pass_iff_equal():
    o = T.VerificationOutcome("x", {"n": 4}, {"v": 1}, {"v": 1})
    assert o.passed and o.to_dict()["pass"]
    o.observed["v"] = 2
    assert not o.passed
    assert o.line().startswith("FAIL")


def test_analyze_report():
    rep = T.analyze(pm(6, 7))
    assert (rep.delta, rep.boomerang, rep.permutation, rep.apn, rep.locally_apn) == (6, 4, False, False, True)
    for a, b, c in rep.boomerang_witnesses:
        assert boomtab.bct_entry_naive(pm(6, 7), a, b) == c == 4
    assert all(b == 0 for _, b, _ in rep.delta_witnesses)
    lut = T.analyze(random_lut(field_new(4), np.random.default_rng(0)))
    assert lut.d == "lut" and lut.locally_apn is None


def test_permutations_have_delta_le_boomerang():
    rng = np.random.default_rng(12)
    funcs = [pm(6, d) for d in (1, 5, 11, 13, 31, 62)]
    funcs += [random_lut(field_new(5), rng, permutation=True) for _ in range(10)]
    for f in funcs:
        rep = T.analyze(f)
        assert rep.permutation
        assert rep.delta <= rep.boomerang


def test_degenerate_flag():
    rep = T.analyze(pm(4, 15))
    assert rep.degenerate


def test_search():
    assert [(r.d, r.delta, r.boomerang) for r in T.search_b_lt_delta(field_new(6))] == [(7, 6, 4)]
    got = {r.d: r for r in T.search_b_lt_delta(field_new(8))}
    assert (got[15].delta, got[15].boomerang) == (14, 2)
    assert (got[45].delta, got[45].boomerang, got[45].locally_apn) == (14, 2, True)
    assert T.search_b_lt_delta(field_new(4)) == []


def test_search_threads_deterministic():
    F = field_new(8)
    a = [r.to_dict() for r in T.search_b_lt_delta(F, threads=1)]
    b = [r.to_dict() for r in T.search_b_lt_delta(F, threads=4)]
    for r in a + b:
        r.pop("runtime_ms")
    assert a == b


@pytest.mark.parametrize("n", range(3, 9))
def test_coset_shortcut_sound(n):
    F = field_new(n)
    for d in range(1, F.q - 1):
        f, g = FuncSpec(F, d=d), FuncSpec(F, d=2 * d % (F.q - 1))
        assert T._delta_boom(f) == T._delta_boom(g)


def test_verify_all():
    out = T.verify_all(4)
    assert all(o.passed for o in out)
    ids = {o.claim_id for o in out}
    assert {"lemma2", "theorem1", "theorem2", "theoremP2", "proposition", "example"} <= ids
    assert {o.parameters["m"] for o in out if o.claim_id == "lemma2"} == {2, 3, 4}
    assert {o.parameters["m"] for o in out if o.claim_id == "theorem1"} == {3}
    assert {o.parameters["m"] for o in out if o.claim_id == "theorem2"} == {2, 4}
    small = T.verify_all(2)
    assert [(o.claim_id, o.parameters["m"]) for o in small] == [("lemma2", 2), ("theorem2", 2)]
    assert any(o.claim_id == "theorem1" and o.parameters["m"] == 5 for o in T.verify_all(5))
    with pytest.raises(ValueError):
        T.verify_all(1)
    with pytest.raises(ValueError):
        T.verify_all(9)


def test_manifest():
    man = T.manifest(T.verify_all(2))
    assert man["passed"] and man["moduli"] == {"4": "0x13"}
