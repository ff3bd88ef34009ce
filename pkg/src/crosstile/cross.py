"""Cross tilings of Z_N.

A pair A, B admits cross tiling with complements X, Y when both

    Z_N = (A + X) u (B + Y)    and    Z_N = (A + Y) u (B + X)

are tilings.  Four independent verdicts are offered (direct convolution, the
sum/difference identities, the Fourier criterion and the tiling of
Z_N x Z_2), together with triviality classification and the two example
families.
"""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from typing import Iterable

from .tiling import TilingReport, report_from_values, verify_tiling, DEFAULT_VIOLATION_CAP
from .zn_core import CyclicSet, ModulusMismatch, convolve, dft_zero_set


@dataclass(frozen=True)
class CrossTilingInstance:
    modulus: int
    A: CyclicSet
    B: CyclicSet
    X: CyclicSet
    Y: CyclicSet
    # product-coordinate hint (m, n) with m*n = modulus, gcd(m, n) = 1
    factorization: tuple[int, int] | None = None
    degenerate: bool = False

    def __post_init__(self):
        for name in "ABXY":
            s = getattr(self, name)
            if s.modulus != self.modulus:
                raise ModulusMismatch(
                    f"set {name} lives in Z_{s.modulus}, instance modulus is {self.modulus}")
        if self.factorization is not None:
            m, n = self.factorization
            if m * n != self.modulus or math.gcd(m, n) != 1:
                raise ValueError(f"bad factorization {self.factorization} of {self.modulus}")

    @classmethod
    def from_members(cls, n: int, A: Iterable[int], B: Iterable[int], X: Iterable[int],
                     Y: Iterable[int], **kw) -> "CrossTilingInstance":
        return cls(n, CyclicSet.from_members(n, A), CyclicSet.from_members(n, B),
                   CyclicSet.from_members(n, X), CyclicSet.from_members(n, Y), **kw)

    @property
    def sets(self) -> tuple[CyclicSet, CyclicSet, CyclicSet, CyclicSet]:
        return self.A, self.B, self.X, self.Y

    def cardinalities(self) -> tuple[int, int, int, int]:
        return len(self.A), len(self.B), len(self.X), len(self.Y)

    def key(self) -> tuple:
        return tuple(s.sort_key() for s in self.sets)

    def replace_sets(self, A, B, X, Y) -> "CrossTilingInstance":
        return CrossTilingInstance(self.modulus, A, B, X, Y)


def verify_cross(inst: CrossTilingInstance,
                 cap: int = DEFAULT_VIOLATION_CAP) -> tuple[TilingReport, TilingReport]:
    """Check A*X + B*Y = 1 and A*Y + B*X = 1 pointwise."""
    n = inst.modulus
    first = convolve(inst.A, inst.X) + convolve(inst.B, inst.Y)
    second = convolve(inst.A, inst.Y) + convolve(inst.B, inst.X)
    return (report_from_values(range(n), first.weights, 1, cap),
            report_from_values(range(n), second.weights, 1, cap))


def verify_cross_equiv(inst: CrossTilingInstance,
                       cap: int = DEFAULT_VIOLATION_CAP) -> tuple[TilingReport, TilingReport]:
    """Check (A+B)*(X+Y) = 2 and (A-B)*(X-Y) = 0 pointwise."""
    n = inst.modulus
    a, b, x, y = (s.indicator() for s in inst.sets)
    total = convolve(a + b, x + y)
    diff = convolve(a - b, x - y)
    return (report_from_values(range(n), total.weights, 2, cap),
            report_from_values(range(n), diff.weights, 0, cap))


def cardinality_condition(inst: CrossTilingInstance) -> bool:
    a, b, x, y = inst.cardinalities()
    return a == b or x == y


def fourier_cross_check(inst: CrossTilingInstance) -> bool:
    """Cross tiling via exact zero sets of the sum and difference transforms."""
    if not cardinality_condition(inst):
        return False
    n = inst.modulus
    a, b, x, y = inst.cardinalities()
    if (a + b) * (x + y) != 2 * n:
        return False
    ia, ib, ix, iy = (s.indicator() for s in inst.sets)
    z_ab_sum = dft_zero_set(ia + ib)
    z_xy_sum = dft_zero_set(ix + iy)
    for k in range(1, n):
        if k not in z_ab_sum and k not in z_xy_sum:
            return False
    z_ab_diff = dft_zero_set(ia - ib)
    z_xy_diff = dft_zero_set(ix - iy)
    return all(k in z_ab_diff or k in z_xy_diff for k in range(n))


def is_cross_tiling(inst: CrossTilingInstance) -> bool:
    first, second = verify_cross(inst, cap=0)
    return first.is_tiling and second.is_tiling


# ---------------------------------------------------------------------------
# the product-group view Z_N x Z_2


@dataclass(frozen=True)
class ProductEmbedding:
    C: frozenset[tuple[int, int]]
    Z: frozenset[tuple[int, int]]
    report: TilingReport


def embed_product(inst: CrossTilingInstance, cap: int = DEFAULT_VIOLATION_CAP) -> ProductEmbedding:
    """C = A x {0} u B x {1}, Z = X x {0} u Y x {1}, and the check C + Z = Z_N x Z_2."""
    n = inst.modulus
    C = frozenset([(s, 0) for s in inst.A] + [(s, 1) for s in inst.B])
    Z = frozenset([(s, 0) for s in inst.X] + [(s, 1) for s in inst.Y])
    counts = [[0] * n, [0] * n]
    for s, e in C:
        for t, f in Z:
            counts[(e + f) % 2][(s + t) % n] += 1
    cells = [(t, f) for f in (0, 1) for t in range(n)]
    values = counts[0] + counts[1]
    return ProductEmbedding(C, Z, report_from_values(cells, values, 1, cap))


# ---------------------------------------------------------------------------
# classification


class TrivialityKind(enum.Enum):
    TRIVIAL_AB_OVER_X = "TrivialABOverX"
    TRIVIAL_XY_OVER_A = "TrivialXYOverA"
    NON_TRIVIAL = "NonTrivial"
    NOT_A_CROSS_TILING = "NotACrossTiling"


@dataclass(frozen=True)
class TrivialityVerdict:
    kind: TrivialityKind
    witness: str


def _union_tiles(S: CyclicSet, T: CyclicSet, W: CyclicSet) -> bool:
    # S u T must tile with W as a set tiling; overlapping S, T cannot contribute disjointly
    if S.bits & T.bits:
        return False
    return verify_tiling(S.union(T), W, 1, cap=0).is_tiling


def classify(inst: CrossTilingInstance) -> TrivialityVerdict:
    if not is_cross_tiling(inst):
        return TrivialityVerdict(TrivialityKind.NOT_A_CROSS_TILING, "a cross-tiling identity fails")
    if inst.X == inst.Y and _union_tiles(inst.A, inst.B, inst.X):
        return TrivialityVerdict(TrivialityKind.TRIVIAL_AB_OVER_X, "X = Y and (A u B) + X tiles Z_N")
    if inst.A == inst.B and _union_tiles(inst.X, inst.Y, inst.A):
        return TrivialityVerdict(TrivialityKind.TRIVIAL_XY_OVER_A, "A = B and (X u Y) + A tiles Z_N")
    return TrivialityVerdict(TrivialityKind.NON_TRIVIAL, "neither triviality clause holds")


def translate_equivalent(S: CyclicSet, T: CyclicSet) -> int | None:
    """Least t with S + t == T, or None."""
    if S.modulus != T.modulus:
        raise ModulusMismatch(f"modulus mismatch: Z_{S.modulus} vs Z_{T.modulus}")
    if len(S) != len(T):
        return None
    for t in range(S.modulus):
        if S.translate(t) == T:
            return t
    return None


def unit_multiply(inst: CrossTilingInstance, u: int) -> CrossTilingInstance:
    if math.gcd(u, inst.modulus) != 1:
        raise ValueError(f"{u} is not a unit mod {inst.modulus}")
    return inst.replace_sets(*(s.scale(u) for s in inst.sets))


# ---------------------------------------------------------------------------
# CRT and the two example families


def crt_pair_to_int(m: int, n: int, x: int, y: int) -> int:
    """The z in Z_mn with z = x mod m and z = y mod n (gcd(m, n) = 1)."""
    if math.gcd(m, n) != 1:
        raise ValueError(f"moduli {m}, {n} are not coprime")
    if m == 1:
        return y % n
    if n == 1:
        return x % m
    return (x + m * ((y - x) * pow(m, -1, n))) % (m * n)


def int_to_crt_pair(m: int, n: int, z: int) -> tuple[int, int]:
    return z % m, z % n


def _product_set(m: int, n: int, pairs: Iterable[tuple[int, int]]) -> CyclicSet:
    return CyclicSet.from_members(m * n, (crt_pair_to_int(m, n, x, y) for x, y in pairs))


def gen_example_first(a: int, b: int) -> CrossTilingInstance:
    """Example family in Z_2ab = Z_ab x Z_2 for odd a, b.

    B is read as ({0, 1} u {a+2, ..., 2a-1}) x {0}.  For a = 1 this list does
    not describe a set of size a (and for b = 1 its elements also collide mod
    ab), so such instances are flagged degenerate; they need not verify.
    """
    if a < 1 or b < 1 or a % 2 == 0 or b % 2 == 0:
        raise ValueError(f"a and b must be odd positive integers, got a={a}, b={b}")
    m = a * b
    listed_b = [0, 1] + list(range(a + 2, 2 * a))
    degenerate = len(listed_b) != a or len({v % m for v in listed_b}) != a
    A = _product_set(m, 2, ((i, 0) for i in range(a)))
    B = _product_set(m, 2, ((i, 0) for i in listed_b))
    X = _product_set(m, 2, ((i * a, 0) for i in range(b)))
    Y = _product_set(m, 2, ((i * a, 1) for i in range(b)))
    return CrossTilingInstance(2 * m, A, B, X, Y, factorization=(m, 2), degenerate=degenerate)


def gen_example_second() -> CrossTilingInstance:
    """Example in Z_120 = Z_15 x Z_8 whose four sets are pairwise non-translates.

    Y' = ({0} x {2, 6}) u ({3, 6, 9, 12} x {0, 4}): its first column sits one
    step of the subgroup {0, 2, 4, 6} above the other columns.
    """
    F1, F2 = (0, 1, 2), (0, 4, 5)
    C = (0, 3, 6, 9, 12)
    A = [(f, e) for f in F1 for e in (0, 2)]
    B = [(f, e) for f in F2 for e in (0, 2)]
    X = [(c, e) for c in C for e in (0, 4)]
    Yp = [(0, 2), (0, 6)] + [(c, e) for c in C[1:] for e in (0, 4)]
    Y = [(c, (e + 1) % 8) for c, e in Yp]
    return CrossTilingInstance(120, _product_set(15, 8, A), _product_set(15, 8, B),
                               _product_set(15, 8, X), _product_set(15, 8, Y),
                               factorization=(15, 8))
