"""Exact arithmetic in GF(p^n).

Elements are coefficient vectors over GF(p) in the polynomial basis
1, x, ..., x^(n-1), constant term first. For hashing and batch work each
element is also packed into a single integer ``sum(c_i * p**i)``; that
integer is the element's *value* and is what the lookup tables index.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import cached_property

import numpy as np

from .errors import (
    DegreeTooLarge,
    DivisionByZero,
    FieldMismatch,
    NotPrime,
    NotSquareField,
)
from .numtheory import is_prime

MAX_DEGREE = 6
MAX_CARDINALITY = 2**20
# q*q lookup tables are only materialised below this size.
TABLE_LIMIT = 1024


def _poly_eval(coeffs, x, p):
    """Evaluate a polynomial given constant-term-first at x mod p."""
    acc = 0
    for c in reversed(coeffs):
        acc = (acc * x + c) % p
    return acc


def _poly_rem(num, den, p):
    """Remainder of num modulo a monic den, both constant-term-first."""
    num = list(num)
    d = len(den) - 1
    for i in range(len(num) - 1, d - 1, -1):
        c = num[i]
        if c:
            for j in range(d + 1):
                num[i - d + j] = (num[i - d + j] - c * den[j]) % p
    return num[:d]


def is_irreducible(monic_coeffs, p):
    """Irreducibility of a monic polynomial of degree <= MAX_DEGREE over GF(p).

    ``monic_coeffs`` is constant-term-first and includes the leading 1.
    No roots, then trial division by every monic polynomial of degree
    2..deg//2.
    """
    deg = len(monic_coeffs) - 1
    if deg < 1:
        return False
    if deg == 1:
        return True
    if deg > MAX_DEGREE:
        raise DegreeTooLarge(f"irreducibility test supports degree <= {MAX_DEGREE}")
    if any(_poly_eval(monic_coeffs, x, p) == 0 for x in range(p)):
        return False
    for d in range(2, deg // 2 + 1):
        for low in itertools.product(range(p), repeat=d):
            if not any(_poly_rem(monic_coeffs, low + (1,), p)):
                return False
    return True


def smallest_irreducible(p, n):
    """Lexicographically smallest monic irreducible of degree n over GF(p).

    Candidates are ordered by (c_{n-1}, ..., c_0); the result is returned
    as the n low coefficients, constant term first.
    """
    if n == 1:
        return (0,)
    for high_first in itertools.product(range(p), repeat=n):
        low = tuple(reversed(high_first))
        if is_irreducible(low + (1,), p):
            return low
    raise AssertionError(f"no irreducible of degree {n} over GF({p})")


@dataclass(frozen=True, eq=False)
class FieldSpec:
    """GF(p^n) with a fixed defining polynomial.

    ``poly`` holds the n non-leading coefficients of the monic defining
    polynomial, constant term first.
    """

    p: int
    n: int
    poly: tuple[int, ...]

    def __post_init__(self):
        if not is_prime(self.p):
            raise NotPrime(f"{self.p} is not prime")
        if not 1 <= self.n <= MAX_DEGREE:
            raise DegreeTooLarge(f"degree {self.n} outside 1..{MAX_DEGREE}")
        if len(self.poly) != self.n or not is_irreducible(tuple(self.poly) + (1,), self.p):
            raise ValueError(f"defining polynomial {self.poly} is not irreducible of degree {self.n}")

    @property
    def q(self) -> int:
        return self.p**self.n

    def __repr__(self):
        return f"GF({self.p}^{self.n})" if self.n > 1 else f"GF({self.p})"

    def __eq__(self, other):
        return (
            isinstance(other, FieldSpec)
            and (self.p, self.n, self.poly) == (other.p, other.n, other.poly)
        )

    def __hash__(self):
        return hash((self.p, self.n, self.poly))

    # -- element construction -------------------------------------------

    def __call__(self, value) -> FieldElement:
        """Build an element from a packed integer or a coefficient sequence."""
        if isinstance(value, FieldElement):
            if value.field != self:
                raise FieldMismatch(f"{value!r} is not in {self!r}")
            return value
        if isinstance(value, (int, np.integer)):
            value = int(value)
            if self.n == 1:
                return FieldElement(self, value % self.p)
            if not 0 <= value < self.q:
                raise ValueError(f"packed value {value} out of range for {self!r}")
            return FieldElement(self, value)
        coeffs = [int(c) % self.p for c in value]
        if len(coeffs) != self.n:
            raise ValueError(f"expected {self.n} coefficients, got {len(coeffs)}")
        return FieldElement(self, self.pack(coeffs))

    @property
    def zero(self) -> FieldElement:
        return FieldElement(self, 0)

    @property
    def one(self) -> FieldElement:
        return FieldElement(self, 1)

    @property
    def gen(self) -> FieldElement:
        """The class of x, a root of the defining polynomial."""
        return FieldElement(self, self.p if self.n > 1 else -self.poly[0] % self.p)

    def elements(self) -> list[FieldElement]:
        return [FieldElement(self, v) for v in range(self.q)]

    def prime_basis(self) -> list[FieldElement]:
        """The GF(p)-basis 1, x, ..., x^(n-1)."""
        return [FieldElement(self, self.p**i) for i in range(self.n)]

    # -- packed-integer arithmetic ----------------------------------------

    def pack(self, coeffs) -> int:
        return sum((int(c) % self.p) * self.p**i for i, c in enumerate(coeffs))

    def unpack(self, value: int) -> tuple[int, ...]:
        out = []
        for _ in range(self.n):
            value, c = divmod(value, self.p)
            out.append(c)
        return tuple(out)

    def add_values(self, a: int, b: int) -> int:
        if self.n == 1:
            return (a + b) % self.p
        return self.pack(x + y for x, y in zip(self.unpack(a), self.unpack(b)))

    def neg_value(self, a: int) -> int:
        if self.n == 1:
            return -a % self.p
        return self.pack(-x for x in self.unpack(a))

    def mul_values(self, a: int, b: int) -> int:
        if self.n == 1:
            return a * b % self.p
        if self.q <= TABLE_LIMIT:
            return int(self.mul_table[a, b])
        return self._poly_mul(a, b)

    def _poly_mul(self, a: int, b: int) -> int:
        ca, cb = self.unpack(a), self.unpack(b)
        prod = [0] * (2 * self.n - 1)
        for i, x in enumerate(ca):
            if x:
                for j, y in enumerate(cb):
                    prod[i + j] = (prod[i + j] + x * y) % self.p
        return self.pack(_poly_rem(prod, tuple(self.poly) + (1,), self.p))

    def pow_value(self, a: int, e: int) -> int:
        result, base = 1, a
        if e < 0:
            base, e = self.inv_value(a), -e
        while e:
            if e & 1:
                result = self._poly_mul(result, base) if self.n > 1 else result * base % self.p
            base = self._poly_mul(base, base) if self.n > 1 else base * base % self.p
            e >>= 1
        return result

    def inv_value(self, a: int) -> int:
        if a == 0:
            raise DivisionByZero(f"inverse of zero in {self!r}")
        if self.n == 1:
            return pow(a, -1, self.p)
        return self.pow_value(a, self.q - 2)

    # -- tables for vectorised work -----------------------------------------

    def _require_tables(self):
        if self.q > TABLE_LIMIT:
            raise ValueError(f"lookup tables for {self!r} would exceed {TABLE_LIMIT}^2 entries")

    @cached_property
    def digits(self) -> np.ndarray:
        """``digits[v, i]`` is coefficient i of the element with value v."""
        v = np.arange(self.q, dtype=np.int64)
        return np.stack([(v // self.p**i) % self.p for i in range(self.n)], axis=1)

    @cached_property
    def add_table(self) -> np.ndarray:
        self._require_tables()
        d = self.digits
        s = (d[:, None, :] + d[None, :, :]) % self.p
        weights = self.p ** np.arange(self.n, dtype=np.int64)
        return _readonly(s @ weights)

    @cached_property
    def mul_table(self) -> np.ndarray:
        self._require_tables()
        q = self.q
        if self.n == 1:
            v = np.arange(q, dtype=np.int64)
            return _readonly(np.outer(v, v) % q)
        # exp/log tables over a primitive element
        exp = self._primitive_powers()
        log = np.zeros(q, dtype=np.int64)
        log[exp] = np.arange(q - 1)
        la = log[:, None] + log[None, :]
        t = exp[la % (q - 1)]
        t[0, :] = 0
        t[:, 0] = 0
        return _readonly(t)

    def _primitive_powers(self) -> np.ndarray:
        q = self.q
        for g in range(2, q):
            powers = [1]
            x = g
            while x != 1:
                powers.append(x)
                x = self._poly_mul(x, g)
            if len(powers) == q - 1:
                return np.array(powers, dtype=np.int64)
        raise AssertionError("multiplicative group is not cyclic")

    @cached_property
    def neg_table(self) -> np.ndarray:
        return _readonly(np.array([self.neg_value(v) for v in range(self.q)], dtype=np.int64))

    @cached_property
    def inv_table(self) -> np.ndarray:
        """Inverse by value; entry 0 is 0 and must not be used."""
        t = [0] + [self.inv_value(v) for v in range(1, self.q)]
        return _readonly(np.array(t, dtype=np.int64))

    # -- subfield structure -------------------------------------------------

    @property
    def sqrt_q(self) -> int:
        """q0 with q == q0**2, i.e. the size of the fixed field of the bar map."""
        if self.n % 2:
            raise NotSquareField(f"{self!r} has odd degree; no subfield of index 2")
        return self.p ** (self.n // 2)

    @cached_property
    def frobenius_table(self) -> np.ndarray:
        e = self.sqrt_q
        return _readonly(np.array([self.pow_value(v, e) for v in range(self.q)], dtype=np.int64))


def _readonly(a: np.ndarray) -> np.ndarray:
    a.setflags(write=False)
    return a


@dataclass(frozen=True)
class FieldElement:
    """An element of a FieldSpec, stored as its packed value."""

    field: FieldSpec
    value: int

    @property
    def coeffs(self) -> tuple[int, ...]:
        return self.field.unpack(self.value)

    def _check(self, other) -> FieldElement:
        # a bare int in arithmetic means the integer multiple of 1
        if isinstance(other, int):
            return FieldElement(self.field, other % self.field.p)
        if not isinstance(other, FieldElement):
            return NotImplemented
        if other.field != self.field:
            raise FieldMismatch(f"{self.field!r} vs {other.field!r}")
        return other

    def __add__(self, other):
        other = self._check(other)
        if other is NotImplemented:
            return other
        return FieldElement(self.field, self.field.add_values(self.value, other.value))

    __radd__ = __add__

    def __neg__(self):
        return FieldElement(self.field, self.field.neg_value(self.value))

    def __sub__(self, other):
        other = self._check(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return self._check(other) - self

    def __mul__(self, other):
        other = self._check(other)
        if other is NotImplemented:
            return other
        return FieldElement(self.field, self.field.mul_values(self.value, other.value))

    __rmul__ = __mul__

    def inverse(self) -> FieldElement:
        return FieldElement(self.field, self.field.inv_value(self.value))

    def __truediv__(self, other):
        other = self._check(other)
        if other is NotImplemented:
            return other
        return self * other.inverse()

    def __pow__(self, e: int):
        return FieldElement(self.field, self.field.pow_value(self.value, e))

    def __bool__(self):
        return self.value != 0

    def frobenius(self) -> FieldElement:
        """x -> x^q0 where the field has q0^2 elements."""
        return FieldElement(self.field, self.field.pow_value(self.value, self.field.sqrt_q))

    def multiplicative_order(self) -> int:
        if not self.value:
            raise DivisionByZero("zero has no multiplicative order")
        k, x = 1, self.value
        while x != 1:
            x = self.field.mul_values(x, self.value)
            k += 1
        return k

    def __repr__(self):
        if self.field.n == 1:
            return f"{self.value}"
        terms = []
        for i, c in reversed(list(enumerate(self.coeffs))):
            if not c:
                continue
            mono = "" if i == 0 else ("x" if i == 1 else f"x^{i}")
            terms.append(f"{c if c != 1 or i == 0 else ''}{mono}")
        return " + ".join(terms) or "0"


_FIELDS: dict[tuple[int, int], FieldSpec] = {}


def field_make(p: int, n: int = 1) -> FieldSpec:
    """GF(p^n) defined by the lexicographically smallest monic irreducible."""
    if not is_prime(p):
        raise NotPrime(f"{p} is not prime")
    if not 1 <= n <= MAX_DEGREE or p**n > MAX_CARDINALITY:
        raise DegreeTooLarge(f"GF({p}^{n}) is outside the supported range")
    key = (p, n)
    if key not in _FIELDS:
        _FIELDS[key] = FieldSpec(p, n, smallest_irreducible(p, n))
    return _FIELDS[key]


def ff_add(a: FieldElement, b: FieldElement) -> FieldElement:
    return a + b


def ff_mul(a: FieldElement, b: FieldElement) -> FieldElement:
    return a * b


def ff_inv(a: FieldElement) -> FieldElement:
    return a.inverse()


def ff_frobenius_sqrtq(x: FieldElement) -> FieldElement:
    return x.frobenius()
