"""Boomerang Connectivity Tables.

B(a, b) counts pairs (x, y) with f(x) + f(y) = b and f(x+a) + f(y+a) = b.
Adding the two equations shows D_a f(x) = D_a f(y), so for a fixed a we
bucket x by its derivative value and only pair up elements of one bucket.
A row costs O(q log q) for the sort plus the number of in-bucket pairs.
"""

from __future__ import annotations

import numpy as np

from . import difftab
from .difftab import BCT, BudgetExceeded, UniformityTable
from .vecfun import FuncSpec, UnsupportedInput, inverse_table

NAIVE_BCT_MAX_N = 12
REDUCED_BCT_MAX_N = 16
PAIR_BUDGET = 4e9
_CHUNK = 1 << 22


def bct_row(f: FuncSpec, a: int) -> np.ndarray:
    """Row a of the BCT by derivative bucketing. Exact integer counts."""
    q = f.field.q
    v = f.values
    xs = f.field.elements()
    key = v ^ v[xs ^ a]
    order = np.argsort(key, kind="stable")
    ks = key[order]
    vs = v[order]
    starts = np.flatnonzero(np.r_[True, ks[1:] != ks[:-1]])
    sizes = np.diff(np.r_[starts, q])
    # number of later elements in the same bucket, per sorted position
    later = np.repeat(sizes, sizes) - (np.arange(q) - np.repeat(starts, sizes)) - 1

    counts = np.zeros(q, dtype=np.int64)
    counts[0] = q  # x = y
    idx = np.flatnonzero(later > 0)
    pending = []
    pending_len = 0
    k = 1
    while idx.size:
        diffs = vs[idx] ^ vs[idx + k]
        pending.append(diffs)
        pending_len += diffs.size
        if pending_len >= _CHUNK:
            counts += 2 * np.bincount(np.concatenate(pending), minlength=q)
            pending, pending_len = [], 0
        k += 1
        idx = idx[later[idx] >= k]
    if pending:
        counts += 2 * np.bincount(np.concatenate(pending), minlength=q)
    return counts


def bct_entry(f: FuncSpec, a: int, b: int) -> int:
    f.field.check(a)
    f.field.check(b)
    return int(bct_row(f, a)[b])


def bct_entry_naive(f: FuncSpec, a: int, b: int) -> int:
    """Direct enumeration of all q^2 pairs; no bucketing, no reduction."""
    v = f.values
    va = v[f.field.elements() ^ a]
    return int(np.count_nonzero(((v[:, None] ^ v[None, :]) == b) & ((va[:, None] ^ va[None, :]) == b)))


def bct_row_naive(f: FuncSpec, a: int) -> np.ndarray:
    v = f.values
    va = v[f.field.elements() ^ a]
    s = v[:, None] ^ v[None, :]
    t = va[:, None] ^ va[None, :]
    return np.bincount(s[s == t], minlength=f.field.q)


def bct_row_powermap(f: FuncSpec, a: int) -> np.ndarray:
    if not f.is_power_map:
        raise UnsupportedInput("power-map reduction needs a power map")
    return difftab.scale_row_powermap(f, bct_row(f, 1), a)


def bct_inverse_row(f: FuncSpec, a: int) -> np.ndarray:
    """Row a via the inverse-function formulation (permutations only):
    #{x : f^-1(f(x) + b) + f^-1(f(x + a) + b) = a} for every b.
    """
    inv = inverse_table(f)
    v = f.values
    va = v[f.field.elements() ^ a]
    bs = f.field.elements()[:, None]
    hits = (inv[v[None, :] ^ bs] ^ inv[va[None, :] ^ bs]) == a
    return hits.sum(axis=1)


def bct_entry_inverse(f: FuncSpec, a: int, b: int) -> int:
    inv = inverse_table(f)
    v = f.values
    va = v[f.field.elements() ^ a]
    return int(np.count_nonzero((inv[v ^ b] ^ inv[va ^ b]) == a))


def pair_cost(f: FuncSpec, rows) -> int:
    """In-bucket pair count for the given rows, from the DDT: sum_b DDT(a,b)^2 / 2."""
    total = 0
    for a in rows:
        r = difftab.ddt_row(f, a)
        total += int((r * r).sum()) // 2 + f.field.q
    return total


def bct_budget_check(f: FuncSpec, method: str, budget: float = PAIR_BUDGET) -> None:
    n = f.field.n
    q = f.field.q
    if method == "reduce":
        if n > REDUCED_BCT_MAX_N:
            raise BudgetExceeded(f"reduced BCT at n={n} (limit n={REDUCED_BCT_MAX_N})", float(q) ** 2 / 2, float(1 << (2 * REDUCED_BCT_MAX_N)))
        rows = [1]
    else:
        if n > NAIVE_BCT_MAX_N:
            raise BudgetExceeded(f"naive BCT at n={n} (limit n={NAIVE_BCT_MAX_N})", float(q) ** 3, float(1 << (3 * NAIVE_BCT_MAX_N)))
        rows = range(q)
    cost = pair_cost(f, rows)
    if cost > budget:
        raise BudgetExceeded(f"{method} BCT for {f!r}", float(cost), budget)


def bct(f: FuncSpec, method: str = "auto", full: bool | None = None, threads: int | None = None,
        budget: float = PAIR_BUDGET) -> UniformityTable:
    """Full BCT or row spectra. Row a=0 and column b=0 are kept but excluded from the max."""
    method = difftab._check_method(f, method)
    bct_budget_check(f, method, budget)
    return difftab.build_table(BCT, f, bct_row, method, full, threads)


def boomerang_uniformity(t: UniformityTable) -> int:
    if t.kind != BCT:
        raise ValueError("boomerang uniformity is read off a BCT")
    return t.max_nontrivial


def boomerang_uniformity_of(f: FuncSpec, budget: float = PAIR_BUDGET) -> int:
    if f.is_power_map:
        bct_budget_check(f, "reduce", budget)
        return int(bct_row(f, 1)[1:].max())
    return boomerang_uniformity(bct(f, full=False, budget=budget))


def bct_solutions(f: FuncSpec, a: int, b: int) -> list[tuple[int, int]]:
    """All (x, y) solving the boomerang system at (a, b), sorted."""
    v = f.values
    q = f.field.q
    xs = f.field.elements()
    key = (v << f.field.n) | (v ^ v[xs ^ a])
    want = ((v ^ b) << f.field.n) | (v ^ v[xs ^ a])
    order = np.argsort(key, kind="stable")
    sk = key[order]
    lo = np.searchsorted(sk, want, side="left")
    hi = np.searchsorted(sk, want, side="right")
    out = []
    for x in np.flatnonzero(hi > lo):
        for y in order[lo[x]:hi[x]]:
            out.append((int(x), int(y)))
    return sorted(out)


def solution_targets_with_fixed_x(f: FuncSpec, a: int, xs_fixed) -> set[int]:
    """Nonzero b for which the system at (a, b) has a solution with x in ``xs_fixed``."""
    v = f.values
    ys = f.field.elements()
    found = set()
    for x0 in xs_fixed:
        b1 = v[x0] ^ v[ys]
        b2 = v[x0 ^ a] ^ v[ys ^ a]
        found.update(int(b) for b in b1[(b1 == b2) & (b1 != 0)])
    return found
