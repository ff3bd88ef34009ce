"""Translational tilings A + X = Z_N at level l."""
from __future__ import annotations

import logging
from dataclasses import dataclass, field
from typing import Any

from .zn_core import CyclicSet, ModulusMismatch, convolve, dft_zero_set

log = logging.getLogger(__name__)

DEFAULT_VIOLATION_CAP = 32


@dataclass(frozen=True)
class TilingReport:
    """Outcome of a tiling check.

    ``violations`` holds (location, achieved value) pairs, at most ``cap`` of
    them; ``n_violations`` is the uncapped count.  Locations are points of Z_N
    or (lo, hi) cells, depending on the checker.
    """

    is_tiling: bool
    level: Any = None
    violations: list = field(default_factory=list)
    n_violations: int = 0
    expected: Any = None

    def __bool__(self) -> bool:
        return self.is_tiling


def report_from_values(cells, values, expected, cap: int = DEFAULT_VIOLATION_CAP) -> TilingReport:
    bad = [(c, v) for c, v in zip(cells, values) if v != expected]
    if bad:
        return TilingReport(False, None, bad[:cap], len(bad), expected)
    return TilingReport(True, expected, [], 0, expected)


def verify_tiling(A: CyclicSet, X: CyclicSet, level: int = 1,
                  cap: int = DEFAULT_VIOLATION_CAP) -> TilingReport:
    if A.modulus != X.modulus:
        raise ModulusMismatch(f"modulus mismatch: Z_{A.modulus} vs Z_{X.modulus}")
    if level <= 0:
        raise ValueError(f"tiling level must be positive, got {level}")
    conv = convolve(A, X)
    return report_from_values(range(A.modulus), conv.weights, level, cap)


def fourier_tiling_check(A: CyclicSet, X: CyclicSet) -> bool:
    """Level-1 tiling via |A||X| = N and the zero sets of the two transforms."""
    if A.modulus != X.modulus:
        raise ModulusMismatch(f"modulus mismatch: Z_{A.modulus} vs Z_{X.modulus}")
    n = A.modulus
    if len(A) * len(X) != n:
        return False
    covered = dft_zero_set(A) | dft_zero_set(X)
    return all(k in covered for k in range(1, n))


def find_complements(A: CyclicSet) -> list[CyclicSet]:
    """All X with A + X = Z_N a level-1 tiling, in canonical order.

    Backtracking always covers the least uncovered point, so each complement is
    reached along exactly one branch.  Returns [] when |A| does not divide N
    or A is empty.
    """
    n = A.modulus
    k = len(A)
    if k == 0:
        log.info("the empty set tiles nothing")
        return []
    if n % k:
        log.info("|A| = %d does not divide %d, so A has no complement", k, n)
        return []
    full = (1 << n) - 1
    shifted = [A.translate(t).bits for t in range(n)]
    members = A.members
    found: list[int] = []

    def extend(covered: int, chosen: int) -> None:
        if covered == full:
            found.append(chosen)
            return
        free = ~covered & full
        g = (free & -free).bit_length() - 1
        for a in members:
            t = (g - a) % n
            m = shifted[t]
            if not m & covered:
                extend(covered | m, chosen | (1 << t))

    extend(0, 0)
    out = [CyclicSet(n, b) for b in found]
    out.sort(key=CyclicSet.sort_key)
    return out
