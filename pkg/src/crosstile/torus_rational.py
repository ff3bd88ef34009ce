"""Exact points of R/zZ with formal irrational parts, and tilings of the circle.

A point is ``q + c1*th1 + c2*th2 + ...`` where q is an exact rational reduced
into [0, z) and the th_k are formal symbols, assumed rationally independent
of 1 and of each other.  Two points are rationally equivalent exactly when
their symbol parts agree, so class membership is decided syntactically.
"""
from __future__ import annotations

import bisect
import math
import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

import numpy as np

from .tiling import DEFAULT_VIOLATION_CAP, TilingReport, report_from_values
from .zn_core import CyclotomicElement, WeightedCyclicVector, dft_zero_set


def _frac(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, float):
        raise TypeError("floats are not exact; pass a Fraction, int or 'p/q' string")
    return Fraction(x)


@dataclass(frozen=True, order=False)
class TorusPoint:
    rational: Fraction
    symbols: tuple[tuple[int, Fraction], ...] = ()
    period: Fraction = Fraction(1)

    def __post_init__(self):
        period = _frac(self.period)
        if period <= 0:
            raise ValueError("period must be positive")
        sym: dict[int, Fraction] = {}
        for k, c in self.symbols:
            sym[int(k)] = sym.get(int(k), Fraction(0)) + _frac(c)
        object.__setattr__(self, "period", period)
        object.__setattr__(self, "rational", _frac(self.rational) % period)
        object.__setattr__(self, "symbols", tuple(sorted((k, c) for k, c in sym.items() if c)))

    @classmethod
    def symbol(cls, k: int, coefficient=1, period=1) -> "TorusPoint":
        return cls(Fraction(0), ((k, _frac(coefficient)),), _frac(period))

    @property
    def is_rational(self) -> bool:
        return not self.symbols

    def _check(self, other: "TorusPoint") -> None:
        if self.period != other.period:
            raise ValueError(f"mixed periods {self.period} and {other.period}")

    def __add__(self, other):
        if not isinstance(other, TorusPoint):
            return TorusPoint(self.rational + _frac(other), self.symbols, self.period)
        self._check(other)
        return TorusPoint(self.rational + other.rational, self.symbols + other.symbols, self.period)

    def __neg__(self):
        return TorusPoint(-self.rational, tuple((k, -c) for k, c in self.symbols), self.period)

    def __sub__(self, other):
        if not isinstance(other, TorusPoint):
            return self + (-_frac(other))
        return self + (-other)

    def rationally_equivalent(self, other: "TorusPoint") -> bool:
        self._check(other)
        return self.symbols == other.symbols

    def sort_key(self):
        return (self.symbols, self.rational)

    def __str__(self) -> str:
        return format_point(self)


_TERM = re.compile(r"\s*([+-])?\s*(?:(\d+(?:/\d+)?)\s*(\*)?\s*)?(th(\d+))?\s*")


def parse_point(text: str, period=1) -> TorusPoint:
    """Parse ``"1/3"``, ``"1/3 + 1*th1"``, ``"th2 - 1/2*th1 + 1/4"`` and similar."""
    s = text.strip()
    if not s:
        raise ValueError("empty point expression")
    pos = 0
    rational = Fraction(0)
    symbols: list[tuple[int, Fraction]] = []
    first = True
    while pos < len(s):
        m = _TERM.match(s, pos)
        sign, num, star, sym, idx = m.group(1), m.group(2), m.group(3), m.group(4), m.group(5)
        if m.end() == pos or (num is None and sym is None):
            raise ValueError(f"cannot parse point {text!r} at column {pos + 1}")
        if sign is None and not first:
            raise ValueError(f"missing operator in {text!r} at column {pos + 1}")
        if star and sym is None:
            raise ValueError(f"dangling '*' in {text!r}")
        if num is not None and sym is not None and not star:
            raise ValueError(f"expected '*' between coefficient and symbol in {text!r}")
        value = Fraction(num) if num is not None else Fraction(1)
        if sign == "-":
            value = -value
        if sym is None:
            rational += value
        else:
            symbols.append((int(idx), value))
        first = False
        pos = m.end()
    return TorusPoint(rational, tuple(symbols), _frac(period))


def format_point(p: TorusPoint) -> str:
    out = str(p.rational)
    for k, c in p.symbols:
        if c < 0:
            out += f" - {-c}*th{k}"
        else:
            out += f" + {c}*th{k}"
    return out


def rational_classes(points: Sequence[TorusPoint]) -> list[list[TorusPoint]]:
    """Partition into rational equivalence classes, ordered by least member."""
    if not points:
        return []
    period = points[0].period
    for p in points:
        if p.period != period:
            raise ValueError(f"mixed periods {period} and {p.period}")
    groups: dict[tuple, list[TorusPoint]] = {}
    for p in points:
        groups.setdefault(p.symbols, []).append(p)
    classes = [sorted(g, key=TorusPoint.sort_key) for g in groups.values()]
    classes.sort(key=lambda c: c[0].sort_key())
    return classes


# ---------------------------------------------------------------------------
# exponential polynomials n -> sum c_l exp(2 pi i l n)


def _complex_rational(c) -> tuple[Fraction, Fraction]:
    if isinstance(c, tuple):
        return _frac(c[0]), _frac(c[1])
    if isinstance(c, complex):
        raise TypeError("complex floats are not exact; pass a (re, im) pair of rationals")
    return _frac(c), Fraction(0)


@dataclass(frozen=True)
class ExponentialPolynomial:
    terms: tuple[tuple[TorusPoint, tuple[Fraction, Fraction]], ...]

    def __post_init__(self):
        seen = set()
        clean = []
        for freq, coeff in self.terms:
            if not isinstance(freq, TorusPoint):
                freq = TorusPoint(_frac(freq))
            if freq.period != 1:
                raise ValueError("frequencies live on R/Z (period 1)")
            if freq in seen:
                raise ValueError(f"repeated frequency {format_point(freq)}")
            seen.add(freq)
            clean.append((freq, _complex_rational(coeff)))
        object.__setattr__(self, "terms", tuple(clean))

    @classmethod
    def from_pairs(cls, pairs: Iterable[tuple]) -> "ExponentialPolynomial":
        return cls(tuple(pairs))

    @property
    def is_rational(self) -> bool:
        return all(f.is_rational for f, _ in self.terms)

    def period(self) -> int:
        if not self.is_rational:
            raise ValueError("irrational frequencies have no integer period")
        return math.lcm(1, *(f.rational.denominator for f, _ in self.terms))

    def evaluate(self, n: int) -> complex:
        """Floating value at integer n (rational frequencies only)."""
        if not self.is_rational:
            raise ValueError("numeric evaluation needs rational frequencies")
        total = 0j
        for f, (re_, im_) in self.terms:
            total += complex(float(re_), float(im_)) * np.exp(2j * np.pi * float(f.rational) * n)
        return total

    def classes(self) -> list["ExponentialPolynomial"]:
        by_symbols = {}
        for cls_ in rational_classes([f for f, _ in self.terms]):
            by_symbols[cls_[0].symbols] = []
        for f, c in self.terms:
            by_symbols[f.symbols].append((f, c))
        return [ExponentialPolynomial(tuple(sorted(v, key=lambda t: t[0].sort_key())))
                for v in by_symbols.values()]


def zero_set_rational(f: ExponentialPolynomial, modulus: int | None = None) -> frozenset[int]:
    """Exact zeros of n -> f(n) as a subset of Z_P, P the common denominator.

    ``modulus`` (a multiple of P) lifts the answer to Z_modulus.
    """
    if not f.is_rational:
        raise ValueError("zero sets are only computed for rational frequencies")
    P = f.period()
    if modulus is not None:
        if modulus < 1 or modulus % P:
            raise ValueError(f"modulus {modulus} is not a multiple of the period {P}")
        base = zero_set_rational(f)
        return frozenset(n for n in range(modulus) if n % P in base)
    if all(im == 0 for _, (_, im) in f.terms):
        scale = math.lcm(1, *(re_.denominator for _, (re_, _) in f.terms))
        w = [0] * P
        for fr, (re_, _) in f.terms:
            w[int(fr.rational * P) % P] += int(re_ * scale)
        return dft_zero_set(WeightedCyclicVector(P, tuple(w)))
    # complex coefficients: work in Q(z_M) with M = lcm(P, 4) so that i = z_M^(M/4)
    M = math.lcm(P, 4)
    step, quarter = M // P, M // 4
    zeros = []
    for n in range(P):
        terms: dict[int, Fraction] = {}
        for fr, (re_, im_) in f.terms:
            e = int(fr.rational * P) * n * step
            terms[e % M] = terms.get(e % M, Fraction(0)) + re_
            terms[(e + quarter) % M] = terms.get((e + quarter) % M, Fraction(0)) + im_
        if CyclotomicElement.from_exponents(M, terms).is_zero():
            zeros.append(n)
    return frozenset(zeros)


# ---------------------------------------------------------------------------
# the Vandermonde step


@dataclass(frozen=True)
class VandermondeWitness:
    residuals: list           # sum_j z_j^k x_j for k = 1..r
    determinant: object
    forced_zero: bool         # the homogeneous system has only the zero solution
    system_satisfied: bool    # every residual vanishes
    exact: bool


def _as_cyclotomic(x) -> CyclotomicElement:
    if isinstance(x, CyclotomicElement):
        return x
    if isinstance(x, tuple):
        re_, im_ = _complex_rational(x)
        return CyclotomicElement.from_exponents(4, {0: re_, 1: im_})
    return CyclotomicElement.rational(_frac(x))


def vandermonde_witness(values: Sequence, bases: Sequence) -> VandermondeWitness:
    """Evaluate the r x r system sum_j z_j^k x_j (k = 1..r) and its determinant.

    ``bases`` given as rationals t mean the roots of unity exp(2 pi i t) and
    are handled exactly in a cyclotomic field; complex bases fall back to
    floating point.
    """
    r = len(bases)
    if len(values) != r:
        raise ValueError("need one value per base point")
    if r == 0:
        raise ValueError("empty system")
    exact = all(not isinstance(z, (complex, float)) for z in bases) and \
        all(not isinstance(x, (complex, float)) for x in values)
    if exact:
        ts = [_frac(z) % 1 for z in bases]
        if len(set(ts)) != r:
            raise ValueError("base points must be pairwise distinct")
        zs = [CyclotomicElement.root(t) for t in ts]
        xs = [_as_cyclotomic(x) for x in values]
        residuals = []
        for k in range(1, r + 1):
            acc = CyclotomicElement.rational(0)
            for z, x in zip(zs, xs):
                acc = acc + (z ** k) * x
            residuals.append(acc)
        det = CyclotomicElement.rational(1)
        for z in zs:
            det = det * z
        for i in range(r):
            for j in range(i + 1, r):
                det = det * (zs[j] - zs[i])
        return VandermondeWitness(residuals, det, not det.is_zero(),
                                  all(v.is_zero() for v in residuals), True)
    zs = np.array([complex(z) if not isinstance(z, Fraction) else np.exp(2j * np.pi * float(z)) for z in bases])
    for i in range(r):
        for j in range(i + 1, r):
            if abs(zs[i] - zs[j]) < 1e-12:
                raise ValueError("base points must be pairwise distinct")
    xs = np.array([complex(x) for x in values])
    V = np.array([[z ** k for z in zs] for k in range(1, r + 1)])
    residuals = list(V @ xs)
    det = complex(np.linalg.det(V))
    return VandermondeWitness(residuals, det, abs(det) > 1e-12,
                              all(abs(v) < 1e-9 for v in residuals), False)


def vandermonde_criterion(values: Sequence, bases: Sequence) -> bool:
    """Whether sum_j z_j^k x_j = 0 (k = 1..r) forces every x_j = 0."""
    return vandermonde_witness(values, bases).forced_zero


# ---------------------------------------------------------------------------
# weighted periodic point sets and piecewise-constant circle functions


@dataclass(frozen=True)
class WeightedPeriodicPointSet:
    """The measure delta_{zZ} * sum_s c_s delta_{x_s}, atoms held in [0, z)."""

    period: Fraction
    atoms: tuple[tuple[TorusPoint, int], ...]

    def __post_init__(self):
        period = _frac(self.period)
        merged: dict[TorusPoint, int] = {}
        for p, w in self.atoms:
            if not isinstance(p, TorusPoint):
                p = TorusPoint(_frac(p), (), period)
            if p.period != period:
                raise ValueError(f"atom {format_point(p)} has period {p.period}, expected {period}")
            if p in merged:
                raise ValueError(f"repeated atom position {format_point(p)}")
            if int(w) == 0:
                raise ValueError(f"zero weight at {format_point(p)}")
            merged[p] = int(w)
        object.__setattr__(self, "period", period)
        object.__setattr__(self, "atoms", tuple(sorted(merged.items(), key=lambda a: a[0].sort_key())))

    @classmethod
    def from_rationals(cls, pairs: Iterable[tuple], period=1) -> "WeightedPeriodicPointSet":
        period = _frac(period)
        return cls(period, tuple((TorusPoint(_frac(x), (), period), w) for x, w in pairs))

    @property
    def total_weight(self) -> int:
        return sum(w for _, w in self.atoms)

    def positions(self) -> list[TorusPoint]:
        return [p for p, _ in self.atoms]


def split_by_classes(tau: WeightedPeriodicPointSet) -> list[WeightedPeriodicPointSet]:
    out = []
    weights = dict(tau.atoms)
    for cls_ in rational_classes(tau.positions()):
        out.append(WeightedPeriodicPointSet(tau.period, tuple((p, weights[p]) for p in cls_)))
    return out


def eliminate_symbols(tau: WeightedPeriodicPointSet) -> tuple[TorusPoint, WeightedPeriodicPointSet]:
    """Translate a single rational class so that its atoms become rational.

    Returns (shift, rational set) with ``atom = shift + rational atom``.
    Translation does not change whether F * tau is constant, nor the constant.
    """
    if not tau.atoms:
        return TorusPoint(Fraction(0), (), tau.period), tau
    symbols = tau.atoms[0][0].symbols
    if any(p.symbols != symbols for p, _ in tau.atoms):
        raise ValueError("atoms span more than one rational class")
    shift = TorusPoint(Fraction(0), symbols, tau.period)
    return shift, WeightedPeriodicPointSet(
        tau.period, tuple((TorusPoint(p.rational, (), tau.period), w) for p, w in tau.atoms))


@dataclass(frozen=True)
class CircleFunction:
    """Integer-valued step function on R/zR; values[i] holds on [bp[i], bp[i+1])."""

    breakpoints: tuple[Fraction, ...]
    values: tuple[int, ...]
    period: Fraction = Fraction(1)

    def __post_init__(self):
        period = _frac(self.period)
        bps = [_frac(b) for b in self.breakpoints]
        vals = [int(v) for v in self.values]
        if len(bps) != len(vals) or not bps:
            raise ValueError("need one value per breakpoint and at least one breakpoint")
        if any(not (0 <= b < period) for b in bps):
            raise ValueError("breakpoints must lie in [0, period)")
        if any(b2 <= b1 for b1, b2 in zip(bps, bps[1:])):
            raise ValueError("breakpoints must be strictly increasing")
        if bps[0] != 0:
            # the cell wrapping through 0 carries the last value
            bps = [Fraction(0)] + bps
            vals = [vals[-1]] + vals
        # merge equal neighbours
        mb, mv = [bps[0]], [vals[0]]
        for b, v in zip(bps[1:], vals[1:]):
            if v != mv[-1]:
                mb.append(b)
                mv.append(v)
        object.__setattr__(self, "period", period)
        object.__setattr__(self, "breakpoints", tuple(mb))
        object.__setattr__(self, "values", tuple(mv))

    @classmethod
    def indicator(cls, intervals: Iterable[tuple], period=1) -> "CircleFunction":
        """Indicator of a union of half-open arcs [lo, hi); arcs may wrap past the period."""
        period = _frac(period)
        pts = {Fraction(0)}
        arcs = []
        for lo, hi in intervals:
            lo, hi = _frac(lo), _frac(hi)
            if hi - lo > period or hi < lo:
                raise ValueError(f"bad arc [{lo}, {hi})")
            if hi == lo:
                continue
            arcs.append((lo, hi))
            pts.add(lo % period)
            pts.add(hi % period)
        bps = sorted(pts)
        vals = []
        for b in bps:
            v = 0
            for lo, hi in arcs:
                if (b - lo) % period < hi - lo:
                    v += 1
            vals.append(v)
        return cls(tuple(bps), tuple(vals), period)

    @classmethod
    def constant(cls, value: int, period=1) -> "CircleFunction":
        return cls((Fraction(0),), (value,), _frac(period))

    def __call__(self, x) -> int:
        x = _frac(x) % self.period
        i = bisect.bisect_right(self.breakpoints, x) - 1
        return self.values[i]

    def cells(self) -> list[tuple[tuple[Fraction, Fraction], int]]:
        ends = list(self.breakpoints[1:]) + [self.period]
        return [((lo, hi), v) for lo, hi, v in zip(self.breakpoints, ends, self.values)]

    def integral(self) -> Fraction:
        return sum(((hi - lo) * v for (lo, hi), v in self.cells()), Fraction(0))

    def mean(self) -> Fraction:
        return self.integral() / self.period

    def is_constant(self) -> bool:
        return len(self.values) == 1

    def rotate(self, t) -> "CircleFunction":
        """x -> F(x - t)."""
        t = _frac(t) % self.period
        pairs = sorted(((b + t) % self.period, v) for b, v in zip(self.breakpoints, self.values))
        return CircleFunction(tuple(b for b, _ in pairs), tuple(v for _, v in pairs), self.period)

    def __add__(self, other: "CircleFunction") -> "CircleFunction":
        if self.period != other.period:
            raise ValueError("mixed periods")
        bps = sorted(set(self.breakpoints) | set(other.breakpoints))
        return CircleFunction(tuple(bps), tuple(self(b) + other(b) for b in bps), self.period)

    def __neg__(self):
        return CircleFunction(self.breakpoints, tuple(-v for v in self.values), self.period)

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c: int) -> "CircleFunction":
        return CircleFunction(self.breakpoints, tuple(c * v for v in self.values), self.period)


def convolve_atoms(F: CircleFunction, atoms: Iterable[tuple], period=None) -> CircleFunction:
    """x -> sum_l c_l F(x - l) over rational atoms (l, c_l)."""
    atoms = [(_frac(x), int(c)) for x, c in atoms]
    per = F.period if period is None else _frac(period)
    if per != F.period:
        raise ValueError("atom period differs from the function's period")
    bps = sorted({(b + x) % per for b in F.breakpoints for x, _ in atoms} | {Fraction(0)})
    vals = tuple(sum(c * F(b - x) for x, c in atoms) for b in bps)
    return CircleFunction(tuple(bps), vals, per)


def verify_torus_tiling(F: CircleFunction, tau: WeightedPeriodicPointSet,
                        cap: int = DEFAULT_VIOLATION_CAP) -> TilingReport:
    """Whether sum_l c_l F(x - l) is a.e. constant; violations are (cell, value)."""
    if tau.period != F.period:
        raise ValueError(f"tile period {F.period} differs from point-set period {tau.period}")
    if any(not p.is_rational for p, _ in tau.atoms):
        raise ValueError("irrational atoms are outside the exact regime; split and eliminate symbols first")
    G = convolve_atoms(F, [(p.rational, w) for p, w in tau.atoms])
    expected = G.mean()
    if expected.denominator == 1:
        expected = int(expected)
    cells = G.cells()
    return report_from_values([c for c, _ in cells], [v for _, v in cells], expected, cap)


@dataclass(frozen=True)
class ClassLevel:
    atoms: WeightedPeriodicPointSet
    shift: TorusPoint
    report: TilingReport


def class_levels(F: CircleFunction, tau: WeightedPeriodicPointSet) -> list[ClassLevel]:
    """Split tau into rational classes and check F * tau_j on each one."""
    out = []
    for part in split_by_classes(tau):
        shift, rational = eliminate_symbols(part)
        out.append(ClassLevel(part, shift, verify_torus_tiling(F, rational)))
    return out
