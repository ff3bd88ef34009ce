"""Multiplicative tilings of R, handled in log coordinates.

With Omega = exp(w+) u -exp(w-) and A = exp(a+) u -exp(a-), the tiling
A . Omega = R holds iff both

    a+ * w+ + a- * w- = 1    and    a- * w+ + a+ * w- = 1

almost everywhere.  After scaling, a+ and a- are Z + (1/L){alpha}, so the
check lives on one period [0, 1) and everything is exact rational arithmetic.
Per coset x + (1/L)Z the two identities become a cross tiling of Z_L.
"""
from __future__ import annotations

import itertools
import math
from collections import Counter
from dataclasses import dataclass
from decimal import Decimal, localcontext
from fractions import Fraction
from typing import Iterable, Sequence

from .cross import CrossTilingInstance, is_cross_tiling
from .tiling import DEFAULT_VIOLATION_CAP, TilingReport, report_from_values
from .torus_rational import CircleFunction, convolve_atoms
from .zn_core import CyclicSet


def _frac(x) -> Fraction:
    if isinstance(x, float):
        raise TypeError("floats are not exact; pass a Fraction, int or 'p/q' string")
    return Fraction(x)


@dataclass(frozen=True)
class IntervalUnion:
    """Finite union of half-open [lo, hi), kept sorted, disjoint and non-adjacent."""

    intervals: tuple[tuple[Fraction, Fraction], ...] = ()
    window: tuple[Fraction, Fraction] = (Fraction(0), Fraction(1))

    def __post_init__(self):
        w0, w1 = (_frac(w) for w in self.window)
        ivs = sorted((_frac(lo), _frac(hi)) for lo, hi in self.intervals)
        merged: list[list[Fraction]] = []
        for lo, hi in ivs:
            if hi < lo:
                raise ValueError(f"interval [{lo}, {hi}) is reversed")
            if hi == lo:
                continue
            if lo < w0 or hi > w1:
                raise ValueError(f"interval [{lo}, {hi}) leaves the window [{w0}, {w1})")
            if merged and lo <= merged[-1][1]:
                merged[-1][1] = max(merged[-1][1], hi)
            else:
                merged.append([lo, hi])
        object.__setattr__(self, "window", (w0, w1))
        object.__setattr__(self, "intervals", tuple((lo, hi) for lo, hi in merged))

    @classmethod
    def empty(cls) -> "IntervalUnion":
        return cls(())

    def measure(self) -> Fraction:
        return sum((hi - lo for lo, hi in self.intervals), Fraction(0))

    def __contains__(self, x) -> bool:
        x = _frac(x)
        return any(lo <= x < hi for lo, hi in self.intervals)

    def endpoints(self) -> list[Fraction]:
        return [e for iv in self.intervals for e in iv]

    def indicator(self) -> CircleFunction:
        """Indicator on R/(window length)Z."""
        w0, w1 = self.window
        return CircleFunction.indicator([(lo - w0, hi - w0) for lo, hi in self.intervals], w1 - w0)

    def scaled(self, c) -> "IntervalUnion":
        c = _frac(c)
        return IntervalUnion(tuple((lo * c, hi * c) for lo, hi in self.intervals),
                             (self.window[0] * c, self.window[1] * c))


@dataclass(frozen=True)
class PeriodicTranslateSet:
    """period * Z + {offsets}, offsets in [0, period) with offset * L / period integral."""

    offsets: tuple[Fraction, ...]
    L: int
    period: Fraction = Fraction(1)

    def __post_init__(self):
        period = _frac(self.period)
        offs = sorted(_frac(o) for o in self.offsets)
        if len(set(offs)) != len(offs):
            raise ValueError("offsets must be distinct")
        for o in offs:
            if not 0 <= o < period:
                raise ValueError(f"offset {o} outside [0, {period})")
            if (o * self.L / period).denominator != 1:
                raise ValueError(f"offset {o} is not a multiple of {period}/{self.L}")
        object.__setattr__(self, "period", period)
        object.__setattr__(self, "offsets", tuple(offs))

    @classmethod
    def from_residues(cls, L: int, residues: Iterable[int]) -> "PeriodicTranslateSet":
        return cls(tuple(Fraction(r % L, L) for r in set(residues)), L)

    def residues(self) -> CyclicSet:
        return CyclicSet.from_members(self.L, (int(o * self.L / self.period) for o in self.offsets))

    def __len__(self) -> int:
        return len(self.offsets)


@dataclass(frozen=True)
class MultTilingInstance:
    L: int
    omega_plus: IntervalUnion
    omega_minus: IntervalUnion
    a_plus: PeriodicTranslateSet
    a_minus: PeriodicTranslateSet

    def __post_init__(self):
        if self.L < 1:
            raise ValueError("L must be a positive integer")
        for name in ("omega_plus", "omega_minus"):
            w = getattr(self, name).window
            if w != (Fraction(0), Fraction(1)):
                raise ValueError(f"{name} must live in the window [0, 1)")
        for name in ("a_plus", "a_minus"):
            a = getattr(self, name)
            if a.period != 1:
                raise ValueError(f"{name} must have period 1")
            if self.L % a.L:
                raise ValueError(f"{name} declares L={a.L}, which does not divide {self.L}")

    @property
    def refinement(self) -> int:
        """Least M with every endpoint of w+- in (1/(L M))Z."""
        ends = self.omega_plus.endpoints() + self.omega_minus.endpoints()
        return math.lcm(1, *((e * self.L).denominator for e in ends))

    @classmethod
    def from_log_data(cls, period, omega_plus: Sequence[tuple], omega_minus: Sequence[tuple],
                      a_plus: Sequence, a_minus: Sequence) -> "MultTilingInstance":
        """Normalise raw log-coordinate data: scale the period to 1 and fold w+- mod 1."""
        period = _frac(period)
        if period <= 0:
            raise ValueError("period must be positive")

        def fold_intervals(ivs, label):
            pieces = []
            for lo, hi in ivs:
                lo, hi = _frac(lo) / period, _frac(hi) / period
                if hi < lo:
                    raise ValueError(f"{label}: reversed interval")
                if hi - lo > 1:
                    raise ValueError(f"{label}: interval longer than a period overlaps itself mod 1")
                if hi == lo:
                    continue
                start = lo - math.floor(lo)
                end = start + (hi - lo)
                if end <= 1:
                    pieces.append((start, end))
                else:
                    pieces.extend([(start, Fraction(1)), (Fraction(0), end - 1)])
            pieces.sort()
            for (l1, h1), (l2, h2) in zip(pieces, pieces[1:]):
                if l2 < h1:
                    raise ValueError(f"{label}: points coincide mod the period, cannot tile at level 1")
            return IntervalUnion(tuple(pieces))

        def fold_offsets(offs, label):
            out = [(_frac(o) / period) % 1 for o in offs]
            if len(set(out)) != len(out):
                raise ValueError(f"{label}: offsets coincide mod the period")
            return out

        op, om = fold_intervals(omega_plus, "omega_plus"), fold_intervals(omega_minus, "omega_minus")
        ap, am = fold_offsets(a_plus, "a_plus"), fold_offsets(a_minus, "a_minus")
        L = math.lcm(1, *(o.denominator for o in ap + am))
        return cls(L, op, om, PeriodicTranslateSet(tuple(ap), L), PeriodicTranslateSet(tuple(am), L))

    def level_functions(self) -> tuple[CircleFunction, CircleFunction]:
        wp, wm = self.omega_plus.indicator(), self.omega_minus.indicator()
        ap = [(o, 1) for o in self.a_plus.offsets]
        am = [(o, 1) for o in self.a_minus.offsets]
        first = convolve_atoms(wp, ap) + convolve_atoms(wm, am)
        second = convolve_atoms(wp, am) + convolve_atoms(wm, ap)
        return first, second


def _report(G: CircleFunction, expected: int, cap: int) -> TilingReport:
    cells = G.cells()
    return report_from_values([c for c, _ in cells], [v for _, v in cells], expected, cap)


def verify_mult_tiling(inst: MultTilingInstance,
                       cap: int = DEFAULT_VIOLATION_CAP) -> tuple[TilingReport, TilingReport]:
    """Both identities on one period; violations are ((lo, hi), level) cells."""
    first, second = inst.level_functions()
    return _report(first, 1, cap), _report(second, 1, cap)


def is_mult_tiling(inst: MultTilingInstance) -> bool:
    first, second = verify_mult_tiling(inst, cap=0)
    return first.is_tiling and second.is_tiling


def sum_diff_reports(inst: MultTilingInstance,
                     cap: int = DEFAULT_VIOLATION_CAP) -> tuple[TilingReport, TilingReport]:
    wp, wm = inst.omega_plus.indicator(), inst.omega_minus.indicator()
    weights: Counter = Counter()
    signed: Counter = Counter()
    for o in inst.a_plus.offsets:
        weights[o] += 1
        signed[o] += 1
    for o in inst.a_minus.offsets:
        weights[o] += 1
        signed[o] -= 1
    total = convolve_atoms(wp + wm, weights.items())
    diff = convolve_atoms(wp - wm, [(o, c) for o, c in signed.items() if c])
    return _report(total, 2, cap), _report(diff, 0, cap)


def sum_diff_check(inst: MultTilingInstance) -> tuple[bool, bool]:
    """(w+ + w-) * (a+ + a-) = 2 and (w+ - w-) * (a+ - a-) = 0."""
    total, diff = sum_diff_reports(inst, cap=0)
    return total.is_tiling, diff.is_tiling


# ---------------------------------------------------------------------------
# the per-coset reduction to Z_L


@dataclass(frozen=True)
class CellData:
    lo: Fraction
    hi: Fraction
    b_plus: CyclicSet
    b_minus: CyclicSet


@dataclass(frozen=True)
class CycleData:
    """Per-cell cross-tiling data: cells partition [0, 1/L)."""

    L: int
    alpha_plus: CyclicSet
    alpha_minus: CyclicSet
    cells: tuple[CellData, ...]

    def cell_instance(self, cell: CellData) -> CrossTilingInstance:
        return CrossTilingInstance(self.L, cell.b_plus, cell.b_minus, self.alpha_plus, self.alpha_minus)

    def failing_cells(self) -> list[CellData]:
        return [c for c in self.cells if not is_cross_tiling(self.cell_instance(c))]

    def coarsened(self) -> "CycleData":
        """Merge neighbouring cells carrying identical data."""
        out: list[CellData] = []
        for c in self.cells:
            if out and out[-1].hi == c.lo and (out[-1].b_plus, out[-1].b_minus) == (c.b_plus, c.b_minus):
                out[-1] = CellData(out[-1].lo, c.hi, c.b_plus, c.b_minus)
            else:
                out.append(c)
        return CycleData(self.L, self.alpha_plus, self.alpha_minus, tuple(out))


class CellRejected(ValueError):
    pass


def _check_cells(L: int, cells: Sequence[tuple]) -> list[tuple[Fraction, Fraction]]:
    cells = [(_frac(lo), _frac(hi)) for lo, hi in cells]
    if not cells:
        raise ValueError("need at least one cell")
    if cells[0][0] != 0 or cells[-1][1] != Fraction(1, L):
        raise ValueError(f"cells must cover [0, 1/{L}) exactly")
    for (l1, h1), (l2, h2) in zip(cells, cells[1:]):
        if h1 != l2:
            raise ValueError(f"cells [{l1}, {h1}) and [{l2}, {h2}) are not contiguous")
    for lo, hi in cells:
        if hi <= lo:
            raise ValueError(f"empty cell [{lo}, {hi})")
    return cells


def construct_from_cross(L: int, cells: Sequence[tuple], data: Sequence[tuple[CyclicSet, CyclicSet]],
                         alpha_plus: CyclicSet, alpha_minus: CyclicSet) -> MultTilingInstance:
    """Assemble w+- = union over cells of (cell + (1/L) b+-), a+- = Z + alpha+- / L.

    Every cell's (b+, b-, alpha+, alpha-) must be a cross tiling of Z_L.
    """
    cells = _check_cells(L, cells)
    if len(data) != len(cells):
        raise ValueError("need one (b+, b-) pair per cell")
    for s in (alpha_plus, alpha_minus):
        if s.modulus != L:
            raise ValueError(f"alpha sets must live in Z_{L}")
    wp, wm = [], []
    for (lo, hi), (bp, bm) in zip(cells, data):
        inst = CrossTilingInstance(L, bp, bm, alpha_plus, alpha_minus)
        if not is_cross_tiling(inst):
            raise CellRejected(f"cell [{lo}, {hi}) does not carry a cross tiling of Z_{L}")
        for k in bp:
            wp.append((lo + Fraction(k, L), hi + Fraction(k, L)))
        for k in bm:
            wm.append((lo + Fraction(k, L), hi + Fraction(k, L)))
    return MultTilingInstance(
        L, IntervalUnion(tuple(wp)), IntervalUnion(tuple(wm)),
        PeriodicTranslateSet.from_residues(L, alpha_plus), PeriodicTranslateSet.from_residues(L, alpha_minus))


def reduce_to_cycles(inst: MultTilingInstance) -> CycleData:
    """Read off b+-_x = {k : x + k/L in w+-} on each cell of [0, 1/L)."""
    L = inst.L
    step = Fraction(1, L)
    for a in (inst.a_plus, inst.a_minus):
        for o in a.offsets:
            if (o * L).denominator != 1:
                raise ValueError(f"offset {o} is not of the form alpha/{L}")
    cuts = {Fraction(0), step}
    for e in inst.omega_plus.endpoints() + inst.omega_minus.endpoints():
        cuts.add(e % step)
    cuts = sorted(c for c in cuts if c <= step)
    cells = []
    for lo, hi in zip(cuts, cuts[1:]):
        bp = CyclicSet.from_members(L, (k for k in range(L) if lo + k * step in inst.omega_plus))
        bm = CyclicSet.from_members(L, (k for k in range(L) if lo + k * step in inst.omega_minus))
        cells.append(CellData(lo, hi, bp, bm))
    alpha_p = CyclicSet.from_members(L, (int(o * L) for o in inst.a_plus.offsets))
    alpha_m = CyclicSet.from_members(L, (int(o * L) for o in inst.a_minus.offsets))
    return CycleData(L, alpha_p, alpha_m, tuple(cells)).coarsened()


def construct_from_cycles(data: CycleData) -> MultTilingInstance:
    return construct_from_cross(data.L, [(c.lo, c.hi) for c in data.cells],
                                [(c.b_plus, c.b_minus) for c in data.cells],
                                data.alpha_plus, data.alpha_minus)


# ---------------------------------------------------------------------------
# the symmetric case w+ = w-


def _merge_reports(a: TilingReport, b: TilingReport) -> TilingReport:
    if a.is_tiling and b.is_tiling:
        return TilingReport(True, a.level, [], 0, a.expected)
    return TilingReport(False, None, a.violations + b.violations,
                        a.n_violations + b.n_violations, a.expected)


def symmetric_instance(omega: IntervalUnion, union_offsets: Sequence, split: Sequence[str]) -> MultTilingInstance:
    offsets = [_frac(o) % 1 for o in union_offsets]
    if len(split) != len(offsets):
        raise ValueError("need one sign per offset occurrence")
    mult = Counter(offsets)
    worst = max(mult.values(), default=0)
    if worst > 2:
        raise ValueError(f"offset multiplicity {worst} exceeds 2")
    plus, minus = [], []
    for o, s in zip(offsets, split):
        if s not in "+-" or len(s) != 1:
            raise ValueError(f"split entries must be '+' or '-', got {s!r}")
        (plus if s == "+" else minus).append(o)
    for label, side in (("a+", plus), ("a-", minus)):
        if len(set(side)) != len(side):
            raise ValueError(f"{label} would contain a repeated offset; it must be a set")
    L = math.lcm(1, *(o.denominator for o in offsets))
    return MultTilingInstance(L, omega, omega, PeriodicTranslateSet(tuple(plus), L),
                              PeriodicTranslateSet(tuple(minus), L))


def symmetric_split_check(omega: IntervalUnion, union_offsets: Sequence, split: Sequence[str],
                          cap: int = DEFAULT_VIOLATION_CAP) -> tuple[TilingReport, TilingReport]:
    """(level-2 tiling of the union by w+ + w- = 2 w, tiling check for this split)."""
    inst = symmetric_instance(omega, union_offsets, split)
    weights = Counter(_frac(o) % 1 for o in union_offsets)
    union = convolve_atoms(omega.indicator().scale(2), weights.items())
    first, second = verify_mult_tiling(inst, cap)
    return _report(union, 2, cap), _merge_reports(first, second)


def all_splits(union_offsets: Sequence) -> list[tuple[str, ...]]:
    return [tuple(s) for s in itertools.product("+-", repeat=len(union_offsets))]


# ---------------------------------------------------------------------------
# rendering in multiplicative coordinates


def _exp_decimal(q: Fraction, digits: int) -> str:
    with localcontext() as ctx:
        ctx.prec = digits + 5
        v = (Decimal(q.numerator) / Decimal(q.denominator)).exp()
        ctx.prec = digits
        return str(+v)


def _exp_expr(q: Fraction) -> str:
    return f"e^{q}" if q.denominator == 1 else f"e^({q})"


def to_multiplicative(inst: MultTilingInstance, precision: int = 6) -> str:
    """Describe Omega and A in multiplicative coordinates (diagnostic text only)."""
    lines = [f"multiplicative tiling, log-period 1 (factor e), grid L={inst.L} "
             f"cells of width 1/{inst.L} per period, refinement M={inst.refinement}"]
    for sign, name, omega in (("", "Omega+", inst.omega_plus), ("-", "Omega-", inst.omega_minus)):
        if not omega.intervals:
            lines.append(f"{name} = {{}}")
            continue
        parts = []
        for lo, hi in omega.intervals:
            if sign:
                parts.append(f"(-{_exp_expr(hi)}, -{_exp_expr(lo)}] "
                             f"~ (-{_exp_decimal(hi, precision)}, -{_exp_decimal(lo, precision)}]")
            else:
                parts.append(f"[{_exp_expr(lo)}, {_exp_expr(hi)}) "
                             f"~ [{_exp_decimal(lo, precision)}, {_exp_decimal(hi, precision)})")
        lines.append(f"{name} = " + " u ".join(parts))
    families = 0
    for sign, name, a in (("", "A+", inst.a_plus), ("-", "A-", inst.a_minus)):
        if not a.offsets:
            lines.append(f"{name} = {{}}")
            continue
        families += 1
        offs = ", ".join(f"{sign}{_exp_expr(o)} ~ {sign}{_exp_decimal(o, precision)}" for o in a.offsets)
        lines.append(f"{name} = {{ e^n * c : n in Z, c in {{{offs}}} }} (period factor e)")
    lines.append(f"offset families: {families}")
    return "\n".join(lines)
