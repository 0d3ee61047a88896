"""Exact arithmetic in GF(p^m) over an integer element encoding.

An element is an integer in ``[0, q)`` whose base-``p`` digits are the
coefficients of a polynomial over GF(p), constant term in the least
significant digit.  Multiplication goes through log/antilog tables built
from a primitive element, so every operation is a table lookup or a few
digit operations.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

MAX_ORDER = 1 << 16


class FieldError(ValueError):
    """Raised for invalid field parameters or undefined operations."""


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


def prime_power(q: int) -> tuple[int, int]:
    """Split ``q`` into ``(p, m)`` with ``q == p**m``; raise if impossible."""
    if q < 2:
        raise FieldError(f"{q} is not a prime power")
    p = next(d for d in range(2, q + 1) if q % d == 0)
    m, rest = 0, q
    while rest % p == 0:
        rest //= p
        m += 1
    if rest != 1:
        raise FieldError(f"{q} is not a prime power")
    return p, m


# --- polynomials over GF(p), coefficient lists with constant term first ---

def _poly_trim(a: list[int]) -> list[int]:
    while a and a[-1] == 0:
        a.pop()
    return a


def _poly_mod(a: Sequence[int], b: Sequence[int], p: int) -> list[int]:
    a = _poly_trim(list(a))
    b = _poly_trim(list(b))
    inv_lead = pow(b[-1], p - 2, p)
    while len(a) >= len(b):
        coef = a[-1] * inv_lead % p
        shift = len(a) - len(b)
        for i, bc in enumerate(b):
            a[shift + i] = (a[shift + i] - coef * bc) % p
        _poly_trim(a)
    return a


def is_irreducible(poly: Sequence[int], p: int) -> bool:
    """Trial division by every monic polynomial of degree 1..deg/2."""
    poly = _poly_trim(list(poly))
    deg = len(poly) - 1
    if deg < 1:
        return False
    for d in range(1, deg // 2 + 1):
        for low in itertools.product(range(p), repeat=d):
            if not _poly_mod(poly, list(low) + [1], p):
                return False
    return True


def smallest_irreducible(p: int, m: int) -> tuple[int, ...]:
    """Lexicographically smallest monic irreducible of degree ``m``.

    Coefficients are compared from the constant term upward.
    """
    for low in itertools.product(range(p), repeat=m):
        cand = list(low) + [1]
        if is_irreducible(cand, p):
            return tuple(cand)
    raise FieldError(f"no irreducible polynomial of degree {m} over GF({p})")  # pragma: no cover


@dataclass(frozen=True, eq=False)
class FieldSpec:
    """A concrete GF(p^m).  Build with :func:`make_field`."""

    p: int
    m: int
    reduction_poly: tuple[int, ...]
    digits: np.ndarray = field(repr=False)
    exp: np.ndarray = field(repr=False)
    log: np.ndarray = field(repr=False)
    neg_table: np.ndarray = field(repr=False)
    inv_table: np.ndarray = field(repr=False)

    @property
    def q(self) -> int:
        return self.p ** self.m

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, FieldSpec):
            return NotImplemented
        return (self.p, self.m, self.reduction_poly) == (other.p, other.m, other.reduction_poly)

    def __hash__(self) -> int:
        return hash((self.p, self.m, self.reduction_poly))

    def __str__(self) -> str:
        return f"GF({self.q})"

    # scalar operations

    def _check(self, *xs: int) -> None:
        for x in xs:
            if not 0 <= x < self.q:
                raise FieldError(f"{x} is not an element of {self}")

    def add(self, a: int, b: int) -> int:
        self._check(a, b)
        return int(self.vadd(a, b))

    def neg(self, a: int) -> int:
        self._check(a)
        return int(self.neg_table[a])

    def sub(self, a: int, b: int) -> int:
        self._check(a, b)
        return int(self.vsub(a, b))

    def mul(self, a: int, b: int) -> int:
        self._check(a, b)
        return int(self.vmul(a, b))

    def inv(self, a: int) -> int:
        self._check(a)
        if a == 0:
            raise FieldError("0 has no multiplicative inverse")
        return int(self.inv_table[a])

    def div(self, a: int, b: int) -> int:
        return self.mul(a, self.inv(b))

    def to_digits(self, a: int) -> tuple[int, ...]:
        self._check(a)
        return tuple(int(x) for x in self.digits[a])

    def from_digits(self, ds: Sequence[int]) -> int:
        if len(ds) != self.m or any(not 0 <= d < self.p for d in ds):
            raise FieldError(f"bad digit vector {ds!r} for {self}")
        return sum(d * self.p ** i for i, d in enumerate(ds))

    # vectorised operations on integer arrays

    def vadd(self, a, b):
        a = np.asarray(a, dtype=np.int64)
        b = np.asarray(b, dtype=np.int64)
        if self.p == 2:
            return a ^ b
        if self.m == 1:
            return (a + b) % self.p
        s = (self.digits[a] + self.digits[b]) % self.p
        return s @ (self.p ** np.arange(self.m, dtype=np.int64))

    def vneg(self, a):
        return self.neg_table[np.asarray(a, dtype=np.int64)]

    def vsub(self, a, b):
        return self.vadd(a, self.vneg(b))

    def vmul(self, a, b):
        a = np.asarray(a, dtype=np.int64)
        b = np.asarray(b, dtype=np.int64)
        if self.m == 1:
            return (a * b) % self.p
        prod = self.exp[(self.log[a] + self.log[b]) % (self.q - 1)]
        return np.where((a == 0) | (b == 0), 0, prod)

    def vinv(self, a):
        a = np.asarray(a, dtype=np.int64)
        if np.any(a == 0):
            raise FieldError("0 has no multiplicative inverse")
        return self.inv_table[a]

    def elements(self) -> range:
        return range(self.q)

    def nonzero(self) -> range:
        return range(1, self.q)


def _poly_mul_mod(a: int, b: int, p: int, m: int, red: Sequence[int]) -> int:
    """Reference multiplication on encoded elements (used to seed the tables)."""
    da = [(a // p ** i) % p for i in range(m)]
    db = [(b // p ** i) % p for i in range(m)]
    prod = [0] * (2 * m - 1)
    for i, x in enumerate(da):
        if x:
            for j, y in enumerate(db):
                prod[i + j] = (prod[i + j] + x * y) % p
    rem = _poly_mod(prod, red, p) if m > 1 else [prod[0] % p]
    rem = rem + [0] * (m - len(rem))
    return sum(c * p ** i for i, c in enumerate(rem))


def make_field(p: int, m: int = 1, reduction_poly: Sequence[int] | None = None) -> FieldSpec:
    """Build GF(p^m).

    ``reduction_poly`` lists coefficients constant-term first; it must be
    monic of degree ``m`` and irreducible.  When omitted the smallest such
    polynomial is chosen (see :func:`smallest_irreducible`).
    """
    if not is_prime(p):
        raise FieldError(f"characteristic {p} is not prime")
    if m < 1:
        raise FieldError("field exponent must be positive")
    q = p ** m
    if q > MAX_ORDER:
        raise FieldError(f"field order {q} exceeds cap {MAX_ORDER}")
    if reduction_poly is None:
        red = smallest_irreducible(p, m) if m > 1 else (0, 1)
    else:
        red = tuple(int(c) % p for c in reduction_poly)
        if len(red) != m + 1 or red[-1] != 1:
            raise FieldError(f"reduction polynomial must be monic of degree {m}")
        if not is_irreducible(red, p):
            raise FieldError(f"{list(red)} is reducible over GF({p})")

    idx = np.arange(q, dtype=np.int64)
    digits = np.stack([(idx // p ** i) % p for i in range(m)], axis=1)
    neg_digits = (-digits) % p
    neg_table = neg_digits @ (p ** np.arange(m, dtype=np.int64))

    # find a primitive element and tabulate its powers
    exp = np.zeros(q, dtype=np.int64)
    log = np.zeros(q, dtype=np.int64)
    if q == 2:
        exp[0] = 1
    else:
        for g in range(2 if q > 2 else 1, q):
            x, seen = 1, 0
            powers = []
            while True:
                powers.append(x)
                x = _poly_mul_mod(x, g, p, m, red)
                seen += 1
                if x == 1:
                    break
            if seen == q - 1:
                exp[: q - 1] = powers
                break
        else:  # pragma: no cover
            raise FieldError("no primitive element found")
    exp[q - 1] = exp[0]
    log[exp[: q - 1]] = np.arange(q - 1)
    inv_table = np.zeros(q, dtype=np.int64)
    inv_table[1:] = exp[(q - 1 - log[1:]) % (q - 1)]

    for arr in (digits, exp, log, neg_table, inv_table):
        arr.setflags(write=False)
    return FieldSpec(p, m, red, digits, exp, log, neg_table, inv_table)


@dataclass(frozen=True)
class CayleyTable:
    kind: str  # "additive" | "multiplicative"
    entries: np.ndarray

    def __post_init__(self):
        self.entries.setflags(write=False)

    def tolist(self) -> list[list[int]]:
        return self.entries.tolist()


def cayley_add_table(f: FieldSpec) -> CayleyTable:
    """Addition table, rows and columns in ascending element order."""
    a = np.arange(f.q)
    return CayleyTable("additive", np.asarray(f.vadd(a[:, None], a[None, :]), dtype=np.int64))


def cayley_mul_table(f: FieldSpec) -> CayleyTable:
    """Multiplication table including the zero row and column."""
    a = np.arange(f.q)
    return CayleyTable("multiplicative", np.asarray(f.vmul(a[:, None], a[None, :]), dtype=np.int64))


__all__ = [
    "MAX_ORDER",
    "CayleyTable",
    "FieldError",
    "FieldSpec",
    "cayley_add_table",
    "cayley_mul_table",
    "is_irreducible",
    "is_prime",
    "make_field",
    "prime_power",
    "smallest_irreducible",
]
