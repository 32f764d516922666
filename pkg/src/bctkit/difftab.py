"""Difference Distribution Tables and the shared UniformityTable container.

Conventions used throughout:

* differential uniformity is the max over a != 0 and *every* b, b = 0 included;
* boomerang uniformity (see :mod:`bctkit.boomtab`) is the max over a != 0 and b != 0.

For a non-permutation the b = 0 column of the DDT can be large, which is how
the boomerang uniformity can end up strictly below the differential one.
"""

from __future__ import annotations

import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field as dc_field
from typing import Callable, Iterator

import numpy as np

from .gf2n import Field
from .vecfun import FuncSpec, UnsupportedInput

FULL_TABLE_MAX_N = 10
NAIVE_DDT_MAX_N = 14

DDT = "DDT"
BCT = "BCT"


class BudgetExceeded(RuntimeError):
    def __init__(self, what: str, estimate: float, limit: float):
        self.estimate = estimate
        self.limit = limit
        super().__init__(f"{what}: estimated {estimate:.3g} operations exceeds budget {limit:.3g}")


def default_threads() -> int:
    env = os.environ.get("BCTKIT_THREADS")
    if env:
        return max(1, int(env))
    return os.cpu_count() or 1


def map_rows(fn: Callable[[int], np.ndarray], rows, threads: int | None) -> list:
    """Apply ``fn`` to each row index; result order follows ``rows`` regardless of threads."""
    rows = list(rows)
    threads = threads or default_threads()
    if threads <= 1 or len(rows) < 2:
        return [fn(a) for a in rows]
    with ThreadPoolExecutor(threads) as pool:
        return list(pool.map(fn, rows))


def spectrum(row: np.ndarray) -> tuple[tuple[int, int], ...]:
    vals, mult = np.unique(row, return_counts=True)
    return tuple(zip(vals.tolist(), mult.tolist()))


def _spectrum_max(spec, drop: int | None = None) -> int:
    """Max value of a multiset, optionally after removing one occurrence of ``drop``."""
    best = 0
    for v, m in spec:
        if v == drop:
            m -= 1
        if m > 0 and v > best:
            best = v
    return best


@dataclass
class UniformityTable:
    """Counts for every (a, b), either as a dense q x q array or as per-row spectra.

    ``zero_column[a]`` always holds the b = 0 entry so the BCT max (which skips
    b = 0) can be taken from spectra alone. ``row`` regenerates any row on demand.
    """

    kind: str
    func: FuncSpec
    zero_column: np.ndarray
    full: np.ndarray | None = None
    spectra: dict[int, tuple[tuple[int, int], ...]] | None = None
    row_fn: Callable[[int], np.ndarray] | None = dc_field(default=None, repr=False)

    @property
    def field(self) -> Field:
        return self.func.field

    @property
    def q(self) -> int:
        return self.field.q

    def row(self, a: int) -> np.ndarray:
        if self.full is not None:
            return self.full[a]
        return self.row_fn(a)

    def row_spectrum(self, a: int):
        if self.spectra is not None:
            return self.spectra[a]
        return spectrum(self.full[a])

    def row_max(self, a: int) -> int:
        """Max of row ``a`` over the range this kind's uniformity uses."""
        if self.kind == DDT:
            return _spectrum_max(self.row_spectrum(a))
        return _spectrum_max(self.row_spectrum(a), drop=int(self.zero_column[a]))

    @property
    def max_nontrivial(self) -> int:
        if self.full is not None:
            body = self.full[1:] if self.kind == DDT else self.full[1:, 1:]
            return int(body.max())
        return max(self.row_max(a) for a in range(1, self.q))

    def witnesses(self, limit: int = 8) -> list[tuple[int, int, int]]:
        """Cells (a, b, count) attaining ``max_nontrivial``, in row-major order."""
        best = self.max_nontrivial
        out = []
        for a in range(1, self.q):
            if self.row_max(a) != best:
                continue
            r = self.row(a)
            lo = 0 if self.kind == DDT else 1
            for b in np.flatnonzero(r[lo:] == best) + lo:
                out.append((a, int(b), best))
                if len(out) >= limit:
                    return out
        return out

    def iter_rows(self) -> Iterator[tuple[int, np.ndarray]]:
        for a in range(self.q):
            yield a, self.row(a)


def ddt_row(f: FuncSpec, a: int) -> np.ndarray:
    """Row a of the DDT in one sweep: histogram of f(x+a) + f(x)."""
    v = f.values
    xs = f.field.elements()
    return np.bincount(v ^ v[xs ^ a], minlength=f.field.q)


def ddt_entry(f: FuncSpec, a: int, b: int) -> int:
    f.field.check(a)
    f.field.check(b)
    return int(ddt_row(f, a)[b])


def scale_row_powermap(f: FuncSpec, row1: np.ndarray, a: int) -> np.ndarray:
    """Entry (a, b) of a power-map table equals entry (1, b * a^-d)."""
    if a == 0:
        raise ValueError("row a=0 cannot be obtained by scaling")
    fld = f.field
    s = fld.inv(fld.pow(a, f.d))
    return row1[fld.mul_vec(fld.elements(), s)]


def ddt_row_powermap(f: FuncSpec, a: int) -> np.ndarray:
    if not f.is_power_map:
        raise UnsupportedInput("power-map reduction needs a power map")
    return scale_row_powermap(f, ddt_row(f, 1), a)


def _check_method(f: FuncSpec, method: str) -> str:
    if method == "auto":
        return "reduce" if f.is_power_map else "naive"
    if method == "reduce" and not f.is_power_map:
        raise UnsupportedInput("power-map reduction needs a power map")
    if method not in ("naive", "reduce"):
        raise ValueError(f"unknown method {method!r}")
    return method


def build_table(kind: str, f: FuncSpec, row_fn, method: str, full: bool | None, threads: int | None) -> UniformityTable:
    """Shared assembly for DDT and BCT. ``row_fn(f, a)`` computes a row directly."""
    q = f.field.q
    if full is None:
        full = f.field.n <= FULL_TABLE_MAX_N
    row0 = row_fn(f, 0)

    if method == "reduce":
        row1 = row_fn(f, 1)

        def get_row(a):
            if a == 0:
                return row0
            return row1 if a == 1 else scale_row_powermap(f, row1, a)
    else:
        def get_row(a):
            return row_fn(f, a)

    if full:
        rows = map_rows(get_row, range(1, q), threads)
        arr = np.empty((q, q), dtype=np.uint32)
        arr[0] = row0
        for a, r in enumerate(rows, start=1):
            if r.max(initial=0) > np.iinfo(np.uint32).max:
                raise OverflowError("count does not fit 32 bits")
            arr[a] = r
        return UniformityTable(kind, f, zero_column=arr[:, 0].astype(np.int64), full=arr, row_fn=get_row)

    zero = np.empty(q, dtype=np.int64)
    zero[0] = row0[0]
    spectra = {0: spectrum(row0)}
    if method == "reduce":
        # scaling permutes b and fixes b = 0, so every nonzero row shares row 1's spectrum
        sp = spectrum(row1)
        zero[1:] = row1[0]
        for a in range(1, q):
            spectra[a] = sp
    else:
        def summary(a):
            r = get_row(a)
            return int(r[0]), spectrum(r)

        for a, (z, sp) in enumerate(map_rows(summary, range(1, q), threads), start=1):
            zero[a] = z
            spectra[a] = sp
    return UniformityTable(kind, f, zero_column=zero, spectra=spectra, row_fn=get_row)


def ddt(f: FuncSpec, method: str = "auto", full: bool | None = None, threads: int | None = None) -> UniformityTable:
    """Full DDT (n <= 10 by default) or per-row spectra.

    ``method='reduce'`` builds every row of a power map from row 1;
    ``method='naive'`` sweeps each row directly.
    """
    method = _check_method(f, method)
    if method == "naive" and f.field.n > NAIVE_DDT_MAX_N:
        raise BudgetExceeded("naive DDT", float(f.field.q) ** 2, float(1 << (2 * NAIVE_DDT_MAX_N)))
    return build_table(DDT, f, ddt_row, method, full, threads)


def differential_uniformity(t: UniformityTable) -> int:
    if t.kind != DDT:
        raise ValueError("differential uniformity is read off a DDT")
    return t.max_nontrivial


def differential_uniformity_of(f: FuncSpec) -> int:
    """Shortcut: power maps need only row 1 (all nonzero rows are permutations of it)."""
    if f.is_power_map:
        return int(ddt_row(f, 1).max())
    return differential_uniformity(ddt(f, full=False))


def is_locally_apn(f: FuncSpec) -> bool:
    """Row a=1 is at most 2 for every b outside {0, 1}. Defined for power maps only."""
    if not f.is_power_map:
        raise UnsupportedInput("locally-APN is defined for power maps only")
    return int(ddt_row(f, 1)[2:].max()) <= 2


def is_apn(f: FuncSpec) -> bool:
    return differential_uniformity_of(f) == 2
