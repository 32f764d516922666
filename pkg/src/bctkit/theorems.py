"""Executable checks for the x^(2^m - 1) family and the APN/boomerang relations,
plus an exponent search for power maps whose boomerang uniformity is strictly
below their differential uniformity.

Every ``expected`` value below is a closed form in m (or a fixed reference
number), never a cached observation.
"""

from __future__ import annotations

import logging
import time
from dataclasses import dataclass, field as dc_field, asdict
from typing import Any

import numpy as np

from . import __version__, boomtab, difftab
from .difftab import default_threads, map_rows
from .gf2n import Field, coset_leader, cyclotomic_coset, field_new
from .vecfun import FuncSpec, is_permutation, power_map, random_lut

log = logging.getLogger(__name__)

WITNESS_RECHECK_MAX_N = 8


class PreconditionError(ValueError):
    """The claim does not apply to this input."""


@dataclass
class VerificationOutcome:
    claim_id: str
    parameters: dict[str, Any]
    expected: dict[str, Any]
    observed: dict[str, Any]

    @property
    def passed(self) -> bool:
        return self.expected == self.observed

    def to_dict(self) -> dict:
        d = asdict(self)
        d["pass"] = self.passed
        return d

    def line(self) -> str:
        params = ", ".join(f"{k}={v}" for k, v in self.parameters.items())
        status = "PASS" if self.passed else "FAIL"
        return f"{status} {self.claim_id}({params}) expected={self.expected} observed={self.observed}"


@dataclass
class AnalysisReport:
    n: int
    modulus: str
    d: int | str
    permutation: bool
    apn: bool
    locally_apn: bool | None
    delta: int
    boomerang: int
    delta_witnesses: list[tuple[int, int, int]]
    boomerang_witnesses: list[tuple[int, int, int]]
    runtime_ms: int
    degenerate: bool = False
    coset: list[int] = dc_field(default_factory=list)

    def to_dict(self) -> dict:
        d = asdict(self)
        d["delta_witnesses"] = [list(w) for w in self.delta_witnesses]
        d["boomerang_witnesses"] = [list(w) for w in self.boomerang_witnesses]
        if not self.coset:
            del d["coset"]
        return d


def analyze(f: FuncSpec, method: str = "auto", threads: int | None = None, witness_limit: int = 8,
            budget: float = boomtab.PAIR_BUDGET) -> AnalysisReport:
    """Full summary of one function; witnesses are re-counted by direct enumeration for n <= 8."""
    t0 = time.perf_counter()
    dt = difftab.ddt(f, method=method, threads=threads)
    bt = boomtab.bct(f, method=method, threads=threads, budget=budget)
    delta = difftab.differential_uniformity(dt)
    boom = boomtab.boomerang_uniformity(bt)
    dw = dt.witnesses(witness_limit)
    bw = bt.witnesses(witness_limit)
    if f.field.n <= WITNESS_RECHECK_MAX_N:
        for a, b, c in dw:
            if difftab.ddt_entry(f, a, b) != c:
                raise AssertionError(f"DDT witness ({a},{b}) does not re-verify")
        for a, b, c in bw:
            if boomtab.bct_entry_naive(f, a, b) != c:
                raise AssertionError(f"BCT witness ({a},{b}) does not re-verify")
    return AnalysisReport(
        n=f.field.n,
        modulus=f.field.modulus_hex,
        d=f.d if f.is_power_map else "lut",
        permutation=is_permutation(f),
        apn=delta == 2,
        locally_apn=difftab.is_locally_apn(f) if f.is_power_map else None,
        delta=delta,
        boomerang=boom,
        delta_witnesses=dw,
        boomerang_witnesses=bw,
        runtime_ms=int((time.perf_counter() - t0) * 1000),
        degenerate=f.is_power_map and f.degenerate,
    )


def family_map(m: int, modulus: int | None = None) -> FuncSpec:
    """x^(2^m - 1) over GF(2^(2m))."""
    return FuncSpec(field_new(2 * m, modulus), d=(1 << m) - 1)


def _params(f: FuncSpec, m: int | None = None) -> dict:
    p = {"n": f.field.n}
    if m is not None:
        p["m"] = m
    p["d"] = f.d if f.is_power_map else "lut"
    return p


def verify_lemma2(m: int) -> VerificationOutcome:
    if not 2 <= m <= 8:
        raise ValueError("m must be in [2, 8]")
    f = family_map(m)
    row = difftab.ddt_row(f, 1)
    return VerificationOutcome(
        "lemma2",
        _params(f, m),
        expected={"ddt_1_0": (1 << m) - 2, "ddt_1_1": 2 if m % 2 == 0 else 4, "ddt_1_b_le_2_off_F2": True},
        observed={"ddt_1_0": int(row[0]), "ddt_1_1": int(row[1]), "ddt_1_b_le_2_off_F2": bool(row[2:].max() <= 2)},
    )


def quartic_root_counts(m: int) -> tuple[np.ndarray, np.ndarray]:
    """For every b in F_q \\ F_2: (DDT(1,b), roots outside F_2 of the quartic
    b^(2^m+2) x^4 + (b^(2^m+2)+b^(2^m+1)+b^(2^m)+b) x^2 + (b^(2^m+1)+b^(2^m)+b) x).
    The quartic is derived from (x+1)^(2^m-1) + x^(2^m-1) = b by eliminating x^(2^(m+1)),
    so its roots contain those of the original equation.
    """
    f = family_map(m)
    fld = f.field
    xs = fld.elements()
    row = difftab.ddt_row(f, 1)
    x2, x4 = fld.pow_vec(xs, 2), fld.pow_vec(xs, 4)
    e = 1 << m
    roots = np.zeros(fld.q, dtype=np.int64)
    for b in range(2, fld.q):
        p = lambda k: fld.pow(b, k)
        c4 = p(e + 2)
        c2 = p(e + 2) ^ p(e + 1) ^ p(e) ^ b
        c1 = p(e + 1) ^ p(e) ^ b
        val = fld.mul_vec(c4, x4) ^ fld.mul_vec(c2, x2) ^ fld.mul_vec(c1, xs)
        roots[b] = np.count_nonzero(val[2:] == 0)
    return row[2:], roots[2:]


def linearized_roots_contained_in_quartic(m: int) -> bool:
    """Every solution of x^(2^m) + b x^2 + (b+1) x = 0 also kills the quartic, for all b."""
    f = family_map(m)
    fld = f.field
    xs = fld.elements()
    e = 1 << m
    xe, x2, x4 = fld.pow_vec(xs, e), fld.pow_vec(xs, 2), fld.pow_vec(xs, 4)
    for b in range(2, fld.q):
        lin = xe ^ fld.mul_vec(b, x2) ^ fld.mul_vec(b ^ 1, xs)
        p = lambda k: fld.pow(b, k)
        quart = fld.mul_vec(p(e + 2), x4) ^ fld.mul_vec(p(e + 2) ^ p(e + 1) ^ p(e) ^ b, x2) ^ fld.mul_vec(p(e + 1) ^ p(e) ^ b, xs)
        if np.any(quart[lin == 0] != 0):
            return False
    return True


def _x01_targets(f: FuncSpec) -> set[int]:
    # symmetric in x <-> y, so fixing x covers solutions with y in {0, 1} too
    return boomtab.solution_targets_with_fixed_x(f, 1, [0, 1])


def verify_theorem1(m: int, naive_full: bool | None = None) -> VerificationOutcome:
    """B = 4 for odd m, via the a=1 row (and the full naive BCT when ``naive_full``)."""
    if m % 2 == 0:
        raise ValueError("theorem 1 concerns odd m")
    if not 3 <= m <= 7:
        raise ValueError("m must be in {3, 5, 7}")
    if naive_full is None:
        naive_full = m == 3
    f = family_map(m)
    fld = f.field
    w = sorted(fld.cube_roots_of_unity() - {1})
    w1, w2 = w[0], fld.mul(w[0], w[0])
    expected = {
        "boomerang_row1": 4,
        "b_with_x_in_F2": sorted({1, w1, w2}),
        "solutions_b_1": sorted([(0, 1), (1, 0), (w1, w2), (w2, w1)]),
    }
    observed = {
        "boomerang_row1": int(boomtab.bct_row(f, 1)[1:].max()),
        "b_with_x_in_F2": sorted(_x01_targets(f)),
        "solutions_b_1": boomtab.bct_solutions(f, 1, 1),
    }
    if naive_full:
        expected["boomerang_naive_full"] = 4
        observed["boomerang_naive_full"] = boomtab.boomerang_uniformity(boomtab.bct(f, method="naive"))
    return VerificationOutcome("theorem1", _params(f, m), expected, observed)


def verify_theorem2(m: int) -> VerificationOutcome:
    """B = 2 for even m; the only solutions touching {0, 1} are (0,1), (1,0) at b = 1."""
    if m % 2 == 1:
        raise ValueError("theorem 2 concerns even m")
    if not 2 <= m <= 8:
        raise ValueError("m must be in [2, 8]")
    f = family_map(m)
    sols = boomtab.bct_solutions(f, 1, 1)
    return VerificationOutcome(
        "theorem2",
        _params(f, m),
        expected={"boomerang_row1": 2, "b_with_x_in_F2": [1], "solutions_b_1_touching_F2": [(0, 1), (1, 0)]},
        observed={
            "boomerang_row1": int(boomtab.bct_row(f, 1)[1:].max()),
            "b_with_x_in_F2": sorted(_x01_targets(f)),
            "solutions_b_1_touching_F2": [s for s in sols if s[0] in (0, 1) or s[1] in (0, 1)],
        },
    )


def verify_theoremP2(f: FuncSpec) -> VerificationOutcome:
    """An APN function has boomerang uniformity 2 (under the two-equation count)."""
    if not difftab.is_apn(f):
        raise PreconditionError(f"{f!r} is not APN")
    return VerificationOutcome(
        "theoremP2", _params(f),
        expected={"boomerang": 2},
        observed={"boomerang": boomtab.boomerang_uniformity(boomtab.bct(f, method="naive"))},
    )


def verify_proposition(f: FuncSpec) -> VerificationOutcome:
    """A permutation with boomerang uniformity 2 is APN."""
    boom = boomtab.boomerang_uniformity_of(f)
    perm = is_permutation(f)
    if not perm:
        if boom == 2 and not difftab.is_apn(f):
            log.info("%r: boomerang uniformity 2 but not APN (non-permutation; converse fails)", f)
        raise PreconditionError(f"{f!r} is not a permutation")
    if boom != 2:
        raise PreconditionError(f"{f!r} has boomerang uniformity {boom}, not 2")
    return VerificationOutcome("proposition", _params(f), expected={"apn": True}, observed={"apn": difftab.is_apn(f)})


def verify_converse_remark() -> VerificationOutcome:
    """x^15 over GF(2^8): boomerang uniformity 2 yet neither a permutation nor APN."""
    f = power_map(8, 15)
    return VerificationOutcome(
        "remark_converse", _params(f),
        expected={"boomerang": 2, "permutation": False, "apn": False},
        observed={"boomerang": boomtab.boomerang_uniformity_of(f), "permutation": is_permutation(f), "apn": difftab.is_apn(f)},
    )


def verify_example(n: int, d: int, delta: int, boomerang: int, locally_apn: bool | None = None) -> VerificationOutcome:
    f = power_map(n, d)
    expected = {"delta": delta, "boomerang": boomerang, "permutation": False}
    observed = {
        "delta": difftab.differential_uniformity_of(f),
        "boomerang": boomtab.boomerang_uniformity_of(f),
        "permutation": is_permutation(f),
    }
    if locally_apn is not None:
        expected["locally_apn"] = locally_apn
        observed["locally_apn"] = difftab.is_locally_apn(f)
    return VerificationOutcome("example", _params(f), expected, observed)


def verify_ll2(f: FuncSpec) -> VerificationOutcome:
    """APN permutation: BCT equals DDT on every cell with a, b != 0."""
    if not (is_permutation(f) and difftab.is_apn(f)):
        raise PreconditionError(f"{f!r} is not an APN permutation")
    d = difftab.ddt(f, method="naive", full=True).full
    b = boomtab.bct(f, method="naive", full=True).full
    return VerificationOutcome(
        "lemmaLL2", _params(f),
        expected={"mismatched_cells": 0},
        observed={"mismatched_cells": int(np.count_nonzero(d[1:, 1:] != b[1:, 1:]))},
    )


def check_invariants(f: FuncSpec) -> VerificationOutcome:
    """Table invariants for one function at n <= 8 (naive tables, no reduction)."""
    q = f.field.q
    dt = difftab.ddt(f, method="naive", full=True).full.astype(np.int64)
    bt = boomtab.bct(f, method="naive", full=True).full.astype(np.int64)
    exp = {"row_sums_q": True, "ddt_even": True, "bct_even": True, "dominance": True}
    obs = {
        "row_sums_q": bool(np.all(dt.sum(axis=1) == q)),
        "ddt_even": bool(np.all(dt[1:] % 2 == 0)),
        "bct_even": bool(np.all(bt[:, 1:] % 2 == 0)),
        "dominance": bool(np.all(dt[1:, 1:] <= bt[1:, 1:])),
    }
    if f.is_power_map:
        exp["scaling_ddt"] = exp["scaling_bct"] = True
        obs["scaling_ddt"] = bool(np.array_equal(difftab.ddt(f, method="reduce", full=True).full, dt))
        obs["scaling_bct"] = bool(np.array_equal(boomtab.bct(f, method="reduce", full=True).full, bt))
        sq = f.field.pow_vec(f.field.elements(), 2)
        exp["frobenius"] = True
        obs["frobenius"] = bool(np.array_equal(dt[1][sq], dt[1]) and np.array_equal(bt[1][sq], bt[1]))
    if is_permutation(f):
        exp["inverse_bct"] = True
        obs["inverse_bct"] = all(np.array_equal(boomtab.bct_inverse_row(f, a), bt[a]) for a in range(q))
    return VerificationOutcome("invariants", _params(f), exp, obs)


def _delta_boom(f: FuncSpec) -> tuple[int, int]:
    return difftab.differential_uniformity_of(f), boomtab.boomerang_uniformity_of(f)


def search_b_lt_delta(fld: Field, threads: int | None = None) -> list[AnalysisReport]:
    """Power maps x^d on ``fld`` with boomerang uniformity < differential uniformity.

    Only cyclotomic coset leaders are scanned (x^d and x^(2d) are Frobenius
    conjugates with the same spectra); each hit is then recomputed from naive
    full tables, and the leader's value is cross-checked against the rest of its
    coset. Sorted by d.
    """
    n = fld.n
    if n > 10:
        raise difftab.BudgetExceeded(f"exhaustive exponent search at n={n} (limit 10)", float(fld.q) ** 3, float(1 << 30))
    leaders = sorted({coset_leader(d, n) for d in range(2, fld.q - 1)} - {0, 1})

    def scan(d):
        return d, _delta_boom(FuncSpec(fld, d=d))

    hits = [(d, db) for d, db in map_rows(scan, leaders, threads) if db[1] < db[0]]

    def confirm(item):
        d, (delta, boom) = item
        f = FuncSpec(fld, d=d)
        rep = analyze(f, method="naive", threads=1)
        if (rep.delta, rep.boomerang) != (delta, boom):
            raise AssertionError(f"x^{d}: naive recomputation disagrees with the reduced scan")
        coset = cyclotomic_coset(d, n)
        for e in coset[1:]:
            if _delta_boom(FuncSpec(fld, d=e)) != (delta, boom):
                raise AssertionError(f"x^{e} differs from its coset leader x^{d}")
        rep.coset = coset
        return rep

    return map_rows(confirm, hits, threads)


def verify_all(max_m: int) -> list[VerificationOutcome]:
    """Run every claim over its admissible range up to ``max_m``.

    For ``max_m = 2`` only the m = 2 family claims run; the auxiliary suite
    (examples, APN instances, table invariants) needs max_m >= 3.
    """
    if max_m < 2:
        raise ValueError("max_m must be at least 2 (empty range)")
    if max_m > 8:
        raise ValueError("max_m must be at most 8")
    out = []
    for m in range(2, max_m + 1):
        out.append(verify_lemma2(m))
    for m in range(3, min(max_m, 7) + 1, 2):
        out.append(verify_theorem1(m))
    for m in range(2, max_m + 1, 2):
        out.append(verify_theorem2(m))
    if max_m < 3:
        return out

    out.append(verify_example(6, 7, 6, 4, locally_apn=True))
    if max_m >= 4:
        out.append(verify_example(8, 15, 14, 2))
        out.append(verify_example(8, 45, 14, 2, locally_apn=True))
        out.append(verify_converse_remark())
    top = min(2 * max_m, 8)
    for n in range(4, top + 1):
        out.append(verify_theoremP2(power_map(n, 3)))
    out.append(verify_proposition(power_map(5, 3)))
    for n in (5, 7):
        if n <= 2 * max_m:
            out.append(verify_ll2(power_map(n, 3)))
    for m in range(2, min(max_m, 4) + 1):
        out.append(VerificationOutcome(
            "quartic_containment", {"n": 2 * m, "m": m},
            expected={"roots_contained": True, "quartic_roots_off_F2_le_2": True},
            observed={"roots_contained": linearized_roots_contained_in_quartic(m),
                      "quartic_roots_off_F2_le_2": bool(quartic_root_counts(m)[1].max() <= 2)},
        ))
    rng = np.random.default_rng(2024)
    for n in range(4, min(2 * max_m, 6) + 1):
        fld = field_new(n)
        for d in sorted({coset_leader(d, n) for d in range(1, fld.q - 1)}):
            out.append(check_invariants(FuncSpec(fld, d=d)))
        for perm in (False, True):
            out.append(check_invariants(random_lut(fld, rng, permutation=perm)))
    return out


def manifest(outcomes: list[VerificationOutcome]) -> dict:
    fields = sorted({(o.parameters["n"]) for o in outcomes})
    return {
        "version": __version__,
        "moduli": {str(n): field_new(n).modulus_hex for n in fields},
        "passed": all(o.passed for o in outcomes),
        "outcomes": [o.to_dict() for o in outcomes],
    }
