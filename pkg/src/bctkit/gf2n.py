"""Arithmetic in GF(2^n) with a polynomial basis.

Elements are plain ints: bit i is the coefficient of x^i, so addition is XOR.
A :class:`Field` carries the modulus plus log/antilog tables used by the
vectorized helpers (``mul_vec``, ``pow_vec``); the scalar operations use
carry-less multiplication and never touch the tables.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from functools import lru_cache
from math import gcd

import numpy as np

MIN_N = 2
MAX_N = 20


class ReducibleModulusError(ValueError):
    def __init__(self, modulus: int, factor: int | None):
        self.modulus = modulus
        self.factor = factor
        msg = f"modulus {poly_str(modulus)} is reducible"
        if factor is not None:
            msg += f" (divisible by {poly_str(factor)})"
        super().__init__(msg)


def degree(p: int) -> int:
    return p.bit_length() - 1


def clmul(a: int, b: int) -> int:
    """Carry-less product of two GF(2)[x] polynomials."""
    r = 0
    while b:
        if b & 1:
            r ^= a
        a <<= 1
        b >>= 1
    return r


def polymod(a: int, m: int) -> int:
    dm = degree(m)
    while a and degree(a) >= dm:
        a ^= m << (degree(a) - dm)
    return a


def poly_str(p: int) -> str:
    """Human-readable form, e.g. 0b1011 -> 'x^3+x+1'."""
    if p == 0:
        return "0"
    terms = []
    for i in range(degree(p), -1, -1):
        if p >> i & 1:
            terms.append("1" if i == 0 else "x" if i == 1 else f"x^{i}")
    return "+".join(terms)


def parse_modulus(text: str) -> int:
    """Accept '0x11b', '0b1011', a decimal int, or 'x^8+x^4+x^3+x+1'."""
    s = text.strip().replace(" ", "")
    if "x" in s and not s.lower().startswith("0x"):
        p = 0
        for term in s.split("+"):
            if term == "1":
                p ^= 1
            elif term == "x":
                p ^= 2
            elif term.startswith("x^"):
                p ^= 1 << int(term[2:])
            else:
                raise ValueError(f"cannot parse polynomial term {term!r}")
        return p
    return int(s, 0)


def find_factor(p: int) -> int | None:
    """Smallest nontrivial factor of ``p`` by trial division, or None if irreducible."""
    d = degree(p)
    for cand in range(2, 1 << (d // 2 + 1)):
        if degree(cand) > d // 2:
            break
        if polymod(p, cand) == 0:
            return cand
    return None


def is_irreducible(p: int) -> bool:
    return degree(p) >= 1 and find_factor(p) is None


@lru_cache(maxsize=None)
def smallest_irreducible(n: int) -> int:
    for p in range((1 << n) | 1, 1 << (n + 1), 2):
        if is_irreducible(p):
            return p
    raise AssertionError("unreachable: irreducibles exist in every degree")


@dataclass(frozen=True, eq=False)
class Field:
    """A concrete GF(2^n). Build with :func:`field_new`."""

    n: int
    modulus: int
    _exp: np.ndarray = dc_field(repr=False, compare=False)
    _log: np.ndarray = dc_field(repr=False, compare=False)

    @property
    def q(self) -> int:
        return 1 << self.n

    @property
    def order(self) -> int:
        """Order of the multiplicative group, q - 1."""
        return (1 << self.n) - 1

    def __eq__(self, other):
        return isinstance(other, Field) and (self.n, self.modulus) == (other.n, other.modulus)

    def __hash__(self):
        return hash((self.n, self.modulus))

    def __str__(self):
        return f"GF(2^{self.n}) mod {poly_str(self.modulus)}"

    @property
    def modulus_hex(self) -> str:
        return hex(self.modulus)

    def elements(self) -> np.ndarray:
        return np.arange(self.q, dtype=np.int64)

    def check(self, a: int) -> int:
        if not 0 <= a < self.q:
            raise ValueError(f"{a} is not an element of {self}")
        return a

    # scalar arithmetic

    def add(self, a: int, b: int) -> int:
        return a ^ b

    def mul(self, a: int, b: int) -> int:
        r = 0
        top = 1 << self.n
        m = self.modulus
        while b:
            if b & 1:
                r ^= a
            b >>= 1
            a <<= 1
            if a & top:
                a ^= m
        return r

    def pow(self, a: int, e: int) -> int:
        """Square-and-multiply; 0**0 is 1."""
        if e < 0:
            raise ValueError("negative exponent")
        r = 1
        while e:
            if e & 1:
                r = self.mul(r, a)
            a = self.mul(a, a)
            e >>= 1
        return r

    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("0 has no inverse")
        return self.pow(a, self.q - 2)

    def generator(self) -> int:
        return int(self._exp[1])

    # vectorized arithmetic via log tables

    def log_vec(self, a: np.ndarray) -> np.ndarray:
        """Discrete log to base ``generator()``; undefined (returns -1) at 0."""
        return self._log[a]

    def exp_vec(self, k: np.ndarray) -> np.ndarray:
        return self._exp[np.asarray(k) % self.order]

    def mul_vec(self, a, b) -> np.ndarray:
        a = np.asarray(a, dtype=np.int64)
        b = np.asarray(b, dtype=np.int64)
        a, b = np.broadcast_arrays(a, b)
        out = self._exp[(self._log[a] + self._log[b]) % self.order]
        return np.where((a == 0) | (b == 0), 0, out)

    def pow_vec(self, a, e: int) -> np.ndarray:
        a = np.asarray(a, dtype=np.int64)
        if e == 0:
            return np.ones_like(a)
        out = self._exp[(self._log[a] * (e % self.order)) % self.order]
        return np.where(a == 0, 0, out)

    def cube_roots_of_unity(self) -> set[int]:
        return {x for x in range(1, self.q) if self.pow(x, 3) == 1}

    def subfield(self, k: int) -> np.ndarray:
        """Elements of the subfield GF(2^k), i.e. solutions of x^(2^k) = x."""
        if self.n % k:
            raise ValueError(f"GF(2^{k}) is not a subfield of GF(2^{self.n})")
        xs = self.elements()
        return xs[self.pow_vec(xs, 1 << k) == xs]


def _log_tables(n: int, modulus: int) -> tuple[np.ndarray, np.ndarray]:
    q = 1 << n
    order = q - 1
    factors = _prime_factors(order)
    f = Field(n, modulus, np.empty(0), np.empty(0))
    for g in range(2, q) if n > 1 else [1]:
        if all(f.pow(g, order // p) != 1 for p in factors):
            break
    exp = np.zeros(order, dtype=np.int64)
    x = 1
    for i in range(order):
        exp[i] = x
        x = f.mul(x, g)
    log = np.full(q, -1, dtype=np.int64)
    log[exp] = np.arange(order)
    return exp, log


def _prime_factors(k: int) -> list[int]:
    out = []
    p = 2
    while p * p <= k:
        if k % p == 0:
            out.append(p)
            while k % p == 0:
                k //= p
        p += 1
    if k > 1:
        out.append(k)
    return out


@lru_cache(maxsize=64)
def field_new(n: int, modulus: int | None = None) -> Field:
    """Validated GF(2^n); the default modulus is the smallest irreducible of degree n."""
    if not MIN_N <= n <= MAX_N:
        raise ValueError(f"n must be in [{MIN_N}, {MAX_N}], got {n}")
    if modulus is None:
        modulus = smallest_irreducible(n)
    elif degree(modulus) != n:
        raise ValueError(f"modulus {poly_str(modulus)} has degree {degree(modulus)}, expected {n}")
    else:
        factor = find_factor(modulus)
        if factor is not None:
            raise ReducibleModulusError(modulus, factor)
    exp, log = _log_tables(n, modulus)
    return Field(n, modulus, exp, log)


def cyclotomic_coset(d: int, n: int) -> list[int]:
    """Sorted orbit {d * 2^i mod 2^n - 1}."""
    order = (1 << n) - 1
    d %= order
    out = {d}
    x = d
    for _ in range(n):
        x = x * 2 % order
        out.add(x)
    return sorted(out)


def coset_leader(d: int, n: int) -> int:
    return cyclotomic_coset(d, n)[0]


def power_map_is_bijective(d: int, n: int) -> bool:
    return gcd(d, (1 << n) - 1) == 1
