"""Finite fields GF(p^m) with exact arithmetic.

Elements are coefficient vectors ``(c_0, ..., c_{m-1})`` of polynomials in
``x`` reduced modulo a monic irreducible polynomial.  The fixed enumeration
order of the field is lexicographic on that vector (``c_0`` most
significant); every construction downstream indexes rows and columns by this
order, so it must never change.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import cached_property

import numpy as np

from .errors import DegreeZero, DivisionByZero, EvenCharacteristic, NonPrimeCharacteristic

__all__ = [
    "Field",
    "FieldElement",
    "build_field",
    "arith",
    "quadratic_character",
    "is_prime",
    "prime_power",
]


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


def prime_power(n: int) -> tuple[int, int] | None:
    """Return ``(p, m)`` with ``n == p**m`` and ``p`` prime, else None."""
    if n < 2:
        return None
    for p in range(2, n + 1):
        if n % p == 0:
            break
    if not is_prime(p):
        return None
    m = 0
    while n % p == 0:
        n //= p
        m += 1
    return (p, m) if n == 1 else None


# -- polynomial helpers over GF(p); coefficient lists, low degree first ------

def _trim(a: list[int]) -> list[int]:
    while a and a[-1] == 0:
        a.pop()
    return a


def _poly_mod(a: list[int], m: list[int], p: int) -> list[int]:
    """Remainder of ``a`` modulo the monic polynomial ``m``."""
    a = _trim([c % p for c in a])
    dm = len(m) - 1
    while len(a) - 1 >= dm:
        lead = a[-1]
        shift = len(a) - 1 - dm
        for k, c in enumerate(m):
            a[shift + k] = (a[shift + k] - lead * c) % p
        _trim(a)
    return a


def _is_irreducible(m: list[int], p: int) -> bool:
    # trial division by every monic polynomial of degree 1..deg/2
    deg = len(m) - 1
    for d in range(1, deg // 2 + 1):
        for low in itertools.product(range(p), repeat=d):
            if not _poly_mod(m, list(low) + [1], p):
                return False
    return True


def _smallest_irreducible(p: int, m: int) -> tuple[int, ...]:
    for low in itertools.product(range(p), repeat=m):
        cand = list(low) + [1]
        if m == 1 or _is_irreducible(cand, p):
            return tuple(cand)
    raise AssertionError("no irreducible polynomial found")  # pragma: no cover


@dataclass(frozen=True)
class FieldElement:
    coefficients: tuple[int, ...]

    def __repr__(self) -> str:
        return f"FieldElement{self.coefficients}"


@dataclass(frozen=True, eq=True)
class Field:
    """GF(characteristic ** degree) modulo ``modulus``.

    ``modulus`` is the full coefficient tuple of the monic modulus, low degree
    first, so it has ``degree + 1`` entries and ends with 1.
    """

    characteristic: int
    degree: int
    modulus: tuple[int, ...]

    @property
    def order(self) -> int:
        return self.characteristic**self.degree

    def __repr__(self) -> str:
        return f"GF({self.characteristic}^{self.degree})"

    # -- enumeration -------------------------------------------------------
    def element(self, index: int) -> FieldElement:
        if not 0 <= index < self.order:
            raise IndexError(f"element index {index} out of range for {self!r}")
        p, coeffs = self.characteristic, []
        for _ in range(self.degree):
            coeffs.append(index % p)
            index //= p
        return FieldElement(tuple(reversed(coeffs)))

    def index(self, a: FieldElement) -> int:
        self._check(a)
        idx = 0
        for c in a.coefficients:
            idx = idx * self.characteristic + c
        return idx

    def elements(self) -> list[FieldElement]:
        return [self.element(i) for i in range(self.order)]

    @property
    def zero(self) -> FieldElement:
        return FieldElement((0,) * self.degree)

    @property
    def one(self) -> FieldElement:
        return FieldElement((1,) + (0,) * (self.degree - 1))

    def _check(self, a: FieldElement) -> None:
        if len(a.coefficients) != self.degree or any(
            not 0 <= c < self.characteristic for c in a.coefficients
        ):
            raise ValueError(f"{a!r} is not an element of {self!r}")

    # -- arithmetic ----------------------------------------------------------
    def add(self, a: FieldElement, b: FieldElement) -> FieldElement:
        self._check(a)
        self._check(b)
        p = self.characteristic
        return FieldElement(tuple((x + y) % p for x, y in zip(a.coefficients, b.coefficients)))

    def neg(self, a: FieldElement) -> FieldElement:
        self._check(a)
        p = self.characteristic
        return FieldElement(tuple((-x) % p for x in a.coefficients))

    def sub(self, a: FieldElement, b: FieldElement) -> FieldElement:
        return self.add(a, self.neg(b))

    def mul(self, a: FieldElement, b: FieldElement) -> FieldElement:
        self._check(a)
        self._check(b)
        p, m = self.characteristic, self.degree
        prod = [0] * (2 * m - 1)
        for i, x in enumerate(a.coefficients):
            if x:
                for j, y in enumerate(b.coefficients):
                    prod[i + j] += x * y
        rem = _poly_mod(prod, list(self.modulus), p)
        rem += [0] * (m - len(rem))
        return FieldElement(tuple(rem))

    def pow(self, a: FieldElement, e: int) -> FieldElement:
        self._check(a)
        if e < 0:
            return self.pow(self.inv(a), -e)
        result, base = self.one, a
        while e:
            if e & 1:
                result = self.mul(result, base)
            base = self.mul(base, base)
            e >>= 1
        return result

    def inv(self, a: FieldElement) -> FieldElement:
        self._check(a)
        if not any(a.coefficients):
            raise DivisionByZero(f"0 has no inverse in {self!r}")
        # multiplicative group has order q - 1
        return self.pow(a, self.order - 2)

    # -- index-level tables, used by the constructions -----------------------
    @cached_property
    def add_table(self) -> np.ndarray:
        q = self.order
        els = self.elements()
        t = np.empty((q, q), dtype=np.int64)
        for i, a in enumerate(els):
            for j, b in enumerate(els):
                t[i, j] = self.index(self.add(a, b))
        return t

    @cached_property
    def mul_table(self) -> np.ndarray:
        q = self.order
        els = self.elements()
        t = np.empty((q, q), dtype=np.int64)
        for i, a in enumerate(els):
            for j in range(i, q):
                t[i, j] = t[j, i] = self.index(self.mul(a, els[j]))
        return t

    @cached_property
    def neg_table(self) -> np.ndarray:
        return np.array([self.index(self.neg(a)) for a in self.elements()], dtype=np.int64)

    @cached_property
    def character_table(self) -> np.ndarray:
        """Quadratic character of every element, in enumeration order."""
        return np.array([quadratic_character(self, a) for a in self.elements()], dtype=np.int64)


def build_field(p: int, m: int = 1) -> Field:
    """Build GF(p^m) using the lexicographically smallest monic irreducible modulus."""
    if not is_prime(p):
        raise NonPrimeCharacteristic(f"characteristic {p} is not prime")
    if m < 1:
        raise DegreeZero(f"degree must be >= 1, got {m}")
    return Field(p, m, _smallest_irreducible(p, m))


def arith(f: Field, op: str, a: FieldElement, b: FieldElement | int | None = None) -> FieldElement:
    """Dispatch ``add, sub, mul, inv, neg, pow`` by name."""
    if op in ("inv", "neg"):
        return getattr(f, op)(a)
    if op == "pow":
        if not isinstance(b, int):
            raise TypeError("pow needs an integer exponent")
        return f.pow(a, b)
    if op in ("add", "sub", "mul"):
        return getattr(f, op)(a, b)
    raise ValueError(f"unknown field operation {op!r}")


def quadratic_character(f: Field, x: FieldElement) -> int:
    """Legendre-type character: 0 at zero, +1 on nonzero squares, -1 otherwise."""
    if f.characteristic == 2:
        raise EvenCharacteristic(f"{f!r} has even order")
    if not any(x.coefficients):
        f._check(x)
        return 0
    r = f.pow(x, (f.order - 1) // 2)
    if r == f.one:
        return 1
    if r == f.neg(f.one):
        return -1
    raise AssertionError("Euler criterion produced a non-unit")  # pragma: no cover
