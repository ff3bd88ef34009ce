"""Exact arithmetic over the cyclic group Z_N.

Subsets are stored as integer bitmasks, weighted vectors as tuples of Python
ints (arbitrary width, so there is no overflow to guard against).  Fourier
zeros are decided exactly through cyclotomic divisibility: the character sum
sum_t u[t] w^(tk), w = exp(2 pi i/N), vanishes iff Phi_d divides the mask
polynomial, d = N/gcd(N, k).
"""
from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Sequence


class ModulusMismatch(ValueError):
    pass


def _check_modulus(n: int) -> None:
    if not isinstance(n, int) or n < 1:
        raise ValueError(f"modulus must be a positive integer, got {n!r}")


@dataclass(frozen=True)
class CyclicSet:
    """A subset of Z_N held as a bitmask (bit i set iff i is a member)."""

    modulus: int
    bits: int = 0

    def __post_init__(self):
        _check_modulus(self.modulus)
        if self.bits < 0 or self.bits >> self.modulus:
            raise ValueError(f"bitmask {self.bits:#x} has members outside Z_{self.modulus}")

    @classmethod
    def from_members(cls, modulus: int, members: Iterable[int]) -> "CyclicSet":
        _check_modulus(modulus)
        bits = 0
        for m in members:
            bits |= 1 << (int(m) % modulus)
        return cls(modulus, bits)

    @classmethod
    def full(cls, modulus: int) -> "CyclicSet":
        _check_modulus(modulus)
        return cls(modulus, (1 << modulus) - 1)

    @classmethod
    def empty(cls, modulus: int) -> "CyclicSet":
        return cls(modulus, 0)

    @property
    def members(self) -> tuple[int, ...]:
        b, out = self.bits, []
        while b:
            low = b & -b
            out.append(low.bit_length() - 1)
            b ^= low
        return tuple(out)

    def __len__(self) -> int:
        return self.bits.bit_count()

    def __contains__(self, t: int) -> bool:
        return bool(self.bits >> (t % self.modulus) & 1)

    def __iter__(self):
        return iter(self.members)

    def translate(self, t: int) -> "CyclicSet":
        n = self.modulus
        t %= n
        if t == 0:
            return self
        full = (1 << n) - 1
        return CyclicSet(n, ((self.bits << t) | (self.bits >> (n - t))) & full)

    def scale(self, u: int) -> "CyclicSet":
        return CyclicSet.from_members(self.modulus, (u * m for m in self.members))

    def union(self, other: "CyclicSet") -> "CyclicSet":
        _same_modulus(self, other)
        return CyclicSet(self.modulus, self.bits | other.bits)

    def intersection(self, other: "CyclicSet") -> "CyclicSet":
        _same_modulus(self, other)
        return CyclicSet(self.modulus, self.bits & other.bits)

    def indicator(self) -> "WeightedCyclicVector":
        n = self.modulus
        return WeightedCyclicVector(n, tuple((self.bits >> i) & 1 for i in range(n)))

    def sort_key(self) -> tuple[int, ...]:
        """Canonical order: lexicographic on the ascending member list."""
        return self.members

    def __repr__(self) -> str:
        return f"CyclicSet({self.modulus}, {set(self.members) or '{}'})"


@dataclass(frozen=True)
class WeightedCyclicVector:
    modulus: int
    weights: tuple[int, ...]

    def __post_init__(self):
        _check_modulus(self.modulus)
        if len(self.weights) != self.modulus:
            raise ValueError(
                f"expected {self.modulus} weights, got {len(self.weights)}")
        object.__setattr__(self, "weights", tuple(int(w) for w in self.weights))

    @classmethod
    def zeros(cls, modulus: int) -> "WeightedCyclicVector":
        return cls(modulus, (0,) * modulus)

    @classmethod
    def delta(cls, modulus: int, at: int = 0) -> "WeightedCyclicVector":
        w = [0] * modulus
        w[at % modulus] = 1
        return cls(modulus, tuple(w))

    @classmethod
    def constant(cls, modulus: int, value: int) -> "WeightedCyclicVector":
        return cls(modulus, (value,) * modulus)

    def __getitem__(self, t: int) -> int:
        return self.weights[t % self.modulus]

    def __add__(self, other):
        other = _as_vector(other)
        _same_modulus(self, other)
        return WeightedCyclicVector(self.modulus, tuple(a + b for a, b in zip(self.weights, other.weights)))

    def __sub__(self, other):
        other = _as_vector(other)
        _same_modulus(self, other)
        return WeightedCyclicVector(self.modulus, tuple(a - b for a, b in zip(self.weights, other.weights)))

    def __neg__(self):
        return WeightedCyclicVector(self.modulus, tuple(-a for a in self.weights))

    def translate(self, t: int) -> "WeightedCyclicVector":
        n = self.modulus
        t %= n
        return WeightedCyclicVector(n, self.weights[n - t:] + self.weights[:n - t])

    def total(self) -> int:
        return sum(self.weights)

    def is_constant(self, value: int | None = None) -> bool:
        first = self.weights[0]
        if value is not None and first != value:
            return False
        return all(w == first for w in self.weights)

    def support(self) -> tuple[int, ...]:
        return tuple(i for i, w in enumerate(self.weights) if w)


def _as_vector(v) -> WeightedCyclicVector:
    if isinstance(v, CyclicSet):
        return v.indicator()
    if isinstance(v, WeightedCyclicVector):
        return v
    raise TypeError(f"expected CyclicSet or WeightedCyclicVector, got {type(v).__name__}")


def _same_modulus(u, v) -> None:
    if u.modulus != v.modulus:
        raise ModulusMismatch(f"modulus mismatch: Z_{u.modulus} vs Z_{v.modulus}")


def convolve(u, v) -> WeightedCyclicVector:
    """Cyclic convolution: result[t] = sum_s u[s] * v[t - s mod N]."""
    u, v = _as_vector(u), _as_vector(v)
    _same_modulus(u, v)
    n = u.modulus
    out = [0] * n
    vw = v.weights
    for s, a in enumerate(u.weights):
        if a == 0:
            continue
        for j, b in enumerate(vw):
            if b:
                out[(s + j) % n] += a * b
    return WeightedCyclicVector(n, tuple(out))


# ---------------------------------------------------------------------------
# integer polynomials and cyclotomic machinery


@dataclass(frozen=True)
class IntegerPolynomial:
    """Polynomial with integer coefficients, lowest degree first."""

    coefficients: tuple[int, ...] = ()

    def __post_init__(self):
        c = [int(a) for a in self.coefficients]
        while c and c[-1] == 0:
            c.pop()
        object.__setattr__(self, "coefficients", tuple(c))

    @property
    def degree(self) -> int:
        return len(self.coefficients) - 1

    def is_zero(self) -> bool:
        return not self.coefficients

    def __add__(self, other: "IntegerPolynomial") -> "IntegerPolynomial":
        a, b = self.coefficients, other.coefficients
        m = max(len(a), len(b))
        return IntegerPolynomial(tuple((a[i] if i < len(a) else 0) + (b[i] if i < len(b) else 0) for i in range(m)))

    def __sub__(self, other: "IntegerPolynomial") -> "IntegerPolynomial":
        return self + IntegerPolynomial(tuple(-x for x in other.coefficients))

    def __mul__(self, other: "IntegerPolynomial") -> "IntegerPolynomial":
        a, b = self.coefficients, other.coefficients
        if not a or not b:
            return IntegerPolynomial()
        out = [0] * (len(a) + len(b) - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    out[i + j] += x * y
        return IntegerPolynomial(tuple(out))

    def divmod_monic(self, divisor: "IntegerPolynomial") -> tuple["IntegerPolynomial", "IntegerPolynomial"]:
        d = divisor.coefficients
        if not d or d[-1] != 1:
            raise ValueError("divisor must be monic")
        rem = list(self.coefficients)
        dd = len(d) - 1
        if len(rem) <= dd:
            return IntegerPolynomial(), IntegerPolynomial(tuple(rem))
        quot = [0] * (len(rem) - dd)
        for i in range(len(rem) - 1, dd - 1, -1):
            c = rem[i]
            if c:
                quot[i - dd] = c
                for j in range(dd + 1):
                    rem[i - dd + j] -= c * d[j]
        return IntegerPolynomial(tuple(quot)), IntegerPolynomial(tuple(rem[:dd]))

    def __call__(self, x):
        acc = 0
        for c in reversed(self.coefficients):
            acc = acc * x + c
        return acc


def divisors(n: int) -> list[int]:
    small, large = [], []
    i = 1
    while i * i <= n:
        if n % i == 0:
            small.append(i)
            if i * i != n:
                large.append(n // i)
        i += 1
    return small + large[::-1]


def totient(n: int) -> int:
    result, m, p = n, n, 2
    while p * p <= m:
        if m % p == 0:
            while m % p == 0:
                m //= p
            result -= result // p
        p += 1
    if m > 1:
        result -= result // m
    return result


@lru_cache(maxsize=None)
def cyclotomic_polynomial(d: int) -> IntegerPolynomial:
    """Phi_d, obtained by dividing x^d - 1 by Phi_e for every proper divisor e."""
    if d < 1:
        raise ValueError("cyclotomic index must be positive")
    p = IntegerPolynomial((-1,) + (0,) * (d - 1) + (1,))
    for e in divisors(d)[:-1]:
        p, r = p.divmod_monic(cyclotomic_polynomial(e))
        assert r.is_zero()
    return p


@lru_cache(maxsize=None)
def power_residues(d: int) -> tuple[tuple[int, ...], ...]:
    """Row j holds the coefficients of x^j mod Phi_d, for j < d (length phi(d))."""
    phi = cyclotomic_polynomial(d)
    width = phi.degree
    rows = []
    cur = [0] * width
    if width:
        cur[0] = 1
    for _ in range(d):
        rows.append(tuple(cur))
        # multiply by x and reduce with Phi_d monic
        top = cur[-1] if width else 0
        cur = [0] + cur[:-1] if width else []
        if top:
            for i in range(width):
                cur[i] -= top * phi.coefficients[i]
    return tuple(rows)


def mask_polynomial(u) -> IntegerPolynomial:
    return IntegerPolynomial(_as_vector(u).weights)


def _fold(weights: Sequence[int], d: int) -> list[int]:
    out = [0] * d
    for t, w in enumerate(weights):
        out[t % d] += w
    return out


def vanishes_at_root(weights: Sequence[int], d: int) -> bool:
    """Whether sum_t w[t] z^t = 0 for a primitive d-th root of unity z (d | len(weights) not required)."""
    folded = _fold(weights, d)
    rows = power_residues(d)
    width = len(rows[0]) if rows else 0
    acc = [0] * width
    for j, c in enumerate(folded):
        if c:
            r = rows[j]
            for i in range(width):
                acc[i] += c * r[i]
    return not any(acc)


def dft_zero_set(u) -> frozenset[int]:
    """Exact set of k in Z_N where the character sum of u vanishes."""
    u = _as_vector(u)
    n = u.modulus
    by_order: dict[int, bool] = {}
    zeros = []
    for k in range(n):
        d = n // math.gcd(n, k)
        if d not in by_order:
            by_order[d] = vanishes_at_root(u.weights, d)
        if by_order[d]:
            zeros.append(k)
    return frozenset(zeros)


def dft_numeric(u) -> list[complex]:
    """Floating-point character sums sum_t u[t] exp(2 pi i t k / N).

    Advisory only; exact decisions go through dft_zero_set.
    """
    u = _as_vector(u)
    n = u.modulus
    roots = [cmath.exp(2j * math.pi * t / n) for t in range(n)]
    return [complex(sum(w * roots[(t * k) % n] for t, w in enumerate(u.weights) if w)) for k in range(n)]


# ---------------------------------------------------------------------------
# elements of the cyclotomic field Q(z_M), stored as residues mod Phi_M


@dataclass(frozen=True)
class CyclotomicElement:
    order: int
    coefficients: tuple[Fraction, ...]

    def __post_init__(self):
        width = cyclotomic_polynomial(self.order).degree
        c = tuple(Fraction(x) for x in self.coefficients)
        if len(c) != width:
            raise ValueError(f"need {width} coefficients for order {self.order}")
        object.__setattr__(self, "coefficients", c)

    @classmethod
    def from_exponents(cls, order: int, terms: dict[int, Fraction | int]) -> "CyclotomicElement":
        """sum of coeff * z_M^e over the given {e: coeff} map."""
        rows = power_residues(order)
        width = len(rows[0])
        acc = [Fraction(0)] * width
        for e, c in terms.items():
            c = Fraction(c)
            if c:
                r = rows[e % order]
                for i in range(width):
                    acc[i] += c * r[i]
        return cls(order, tuple(acc))

    @classmethod
    def root(cls, exponent: Fraction) -> "CyclotomicElement":
        """exp(2 pi i * exponent) for rational exponent."""
        exponent = Fraction(exponent)
        return cls.from_exponents(exponent.denominator, {exponent.numerator: 1})

    @classmethod
    def rational(cls, value, order: int = 1) -> "CyclotomicElement":
        return cls.from_exponents(order, {0: Fraction(value)})

    def lift(self, order: int) -> "CyclotomicElement":
        if order % self.order:
            raise ValueError(f"cannot lift order {self.order} to {order}")
        step = order // self.order
        return CyclotomicElement.from_exponents(order, {i * step: c for i, c in enumerate(self.coefficients)})

    def _common(self, other) -> tuple["CyclotomicElement", "CyclotomicElement"]:
        if not isinstance(other, CyclotomicElement):
            other = CyclotomicElement.rational(other)
        m = math.lcm(self.order, other.order)
        return self.lift(m), other.lift(m)

    def __add__(self, other):
        a, b = self._common(other)
        return CyclotomicElement(a.order, tuple(x + y for x, y in zip(a.coefficients, b.coefficients)))

    __radd__ = __add__

    def __neg__(self):
        return CyclotomicElement(self.order, tuple(-x for x in self.coefficients))

    def __sub__(self, other):
        a, b = self._common(other)
        return a + (-b)

    def __mul__(self, other):
        a, b = self._common(other)
        m = a.order
        terms: dict[int, Fraction] = {}
        for i, x in enumerate(a.coefficients):
            if x:
                for j, y in enumerate(b.coefficients):
                    if y:
                        terms[i + j] = terms.get(i + j, Fraction(0)) + x * y
        return CyclotomicElement.from_exponents(m, terms)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("negative powers unsupported")
        out = CyclotomicElement.rational(1, self.order)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def is_zero(self) -> bool:
        return not any(self.coefficients)

    def __complex__(self) -> complex:
        z = cmath.exp(2j * math.pi / self.order)
        return complex(sum(float(c) * z ** i for i, c in enumerate(self.coefficients)))
