"""Functions F_q -> F_q: power maps x^d and explicit lookup tables."""

from __future__ import annotations

import warnings
from dataclasses import dataclass
from functools import cached_property
from math import gcd
from pathlib import Path

import numpy as np

from .gf2n import Field, field_new


class UnsupportedInput(ValueError):
    """The operation is not defined for this kind of function."""


class DegenerateMapWarning(UserWarning):
    pass


@dataclass(frozen=True, eq=False)
class FuncSpec:
    field: Field
    d: int | None = None
    table: tuple[int, ...] | None = None

    def __post_init__(self):
        if (self.d is None) == (self.table is None):
            raise ValueError("give exactly one of d or table")
        if self.d is not None:
            if self.d < 0:
                raise ValueError("exponent must be non-negative")
            if self.d > 0:
                # keep x^(q-1) distinct from x^0: the former still sends 0 to 0
                object.__setattr__(self, "d", (self.d - 1) % self.field.order + 1)
        else:
            if len(self.table) != self.field.q:
                raise ValueError(f"lookup table needs {self.field.q} entries, got {len(self.table)}")
            for v in self.table:
                self.field.check(v)

    @property
    def is_power_map(self) -> bool:
        return self.d is not None

    @property
    def degenerate(self) -> bool:
        """x^0 (the constant 1) or x^(q-1) (0 -> 0, else 1)."""
        return self.d is not None and self.d % self.field.order == 0

    @property
    def label(self) -> str:
        return f"x^{self.d}" if self.is_power_map else "lut"

    def __call__(self, x: int) -> int:
        return eval_at(self, x)

    @cached_property
    def values(self) -> np.ndarray:
        """All q outputs as an int64 array indexed by input."""
        if self.table is not None:
            arr = np.array(self.table, dtype=np.int64)
        else:
            arr = self.field.pow_vec(self.field.elements(), self.d)
        arr.flags.writeable = False
        return arr

    def __repr__(self):
        return f"FuncSpec({self.label} over {self.field})"


def power_map(n: int, d: int, modulus: int | None = None) -> FuncSpec:
    f = FuncSpec(field_new(n, modulus), d=d)
    if f.degenerate:
        warnings.warn(f"x^{d} over GF(2^{n}) is constant on the nonzero elements", DegenerateMapWarning, stacklevel=2)
    return f


def from_table(field: Field, table) -> FuncSpec:
    return FuncSpec(field, table=tuple(int(v) for v in table))


def eval_at(f: FuncSpec, x: int) -> int:
    f.field.check(x)
    if f.table is not None:
        return f.table[x]
    return f.field.pow(x, f.d)


def to_lut(f: FuncSpec) -> FuncSpec:
    if f.table is not None:
        return f
    return from_table(f.field, f.values)


def is_permutation(f: FuncSpec) -> bool:
    if f.is_power_map and not f.degenerate:
        return gcd(f.d, f.field.order) == 1
    return len(np.unique(f.values)) == f.field.q


def inverse_table(f: FuncSpec) -> np.ndarray:
    if not is_permutation(f):
        raise UnsupportedInput(f"{f!r} is not a permutation")
    inv = np.empty(f.field.q, dtype=np.int64)
    inv[f.values] = np.arange(f.field.q)
    return inv


def read_lut(path: str | Path, field: Field) -> FuncSpec:
    """One integer per line (decimal or 0x-hex); blank lines and '#' comments skipped."""
    vals = []
    for line in Path(path).read_text().splitlines():
        line = line.split("#", 1)[0].strip()
        if line:
            vals.append(int(line, 0))
    return from_table(field, vals)


def write_lut(path: str | Path, f: FuncSpec) -> None:
    Path(path).write_text("".join(f"{int(v)}\n" for v in f.values))


def random_lut(field: Field, rng: np.random.Generator, permutation: bool = False) -> FuncSpec:
    if permutation:
        return from_table(field, rng.permutation(field.q))
    return from_table(field, rng.integers(0, field.q, field.q))
