"""Exhaustive search for cross tilings of Z_N.

A cross tiling (A, B, X, Y) is the same thing as a tiling C + Z of
Gamma = Z_N x Z_2 with C = A x {0} u B x {1} and Z = X x {0} u Y x {1}.  The
search fixes one side (a translation-canonical pair), then backtracks over
the other side by always covering the least uncovered point of Gamma.

Results are deduplicated up to (A, B, X, Y) -> (A+t, B+t, X+s, Y+s) and
emitted in canonical order: profiles (|A|, |B|, |X|, |Y|) ascending, then
ascending member tuples.  The order does not depend on the worker count.
"""
from __future__ import annotations

import itertools
import logging
import math
import os
from dataclasses import dataclass
from multiprocessing import get_context
from typing import Iterator

import numpy as np

from . import _kernels
from .cross import CrossTilingInstance, TrivialityKind, classify
from .zn_core import CyclicSet

log = logging.getLogger(__name__)

DEFAULT_BUDGET = 2_000_000
BUDGET_ENV = "CROSSTILE_BUDGET"


class SearchBudgetExceeded(RuntimeError):
    pass


@dataclass(frozen=True)
class SearchConstraints:
    cardinalities: tuple[int, int, int, int] | None = None
    fixed_A: CyclicSet | None = None
    fixed_X: CyclicSet | None = None
    nontrivial: bool = False


def _members(bits: int) -> tuple[int, ...]:
    out = []
    while bits:
        low = bits & -bits
        out.append(low.bit_length() - 1)
        bits ^= low
    return tuple(out)


def _rotate(bits: int, t: int, n: int) -> int:
    t %= n
    if t == 0:
        return bits
    return ((bits << t) | (bits >> (n - t))) & ((1 << n) - 1)


def canonical_pair(n: int, p: int, q: int) -> tuple[int, int]:
    """Translation-orbit representative of the bitmask pair (p, q).

    Ordering is lexicographic on the ascending member lists of p, then q.
    """
    if p:
        shifts = [-m for m in _members(p)]
    elif q:
        shifts = [-m for m in _members(q)]
    else:
        return 0, 0
    best = None
    for t in shifts:
        rp, rq = _rotate(p, t, n), _rotate(q, t, n)
        key = (_members(rp), _members(rq))
        if best is None or key < best[0]:
            best = (key, rp, rq)
    return best[1], best[2]


def canonical_instance(inst: CrossTilingInstance) -> CrossTilingInstance:
    n = inst.modulus
    a, b = canonical_pair(n, inst.A.bits, inst.B.bits)
    x, y = canonical_pair(n, inst.X.bits, inst.Y.bits)
    return CrossTilingInstance(n, CyclicSet(n, a), CyclicSet(n, b), CyclicSet(n, x), CyclicSet(n, y))


def _subsets(n: int, size: int | None) -> Iterator[int]:
    if size is None:
        yield from range(1 << n)
        return
    for combo in itertools.combinations(range(n), size):
        bits = 0
        for c in combo:
            bits |= 1 << c
        yield bits


def _canonical_pairs(n: int, p_size: int, q_size: int) -> Iterator[tuple[int, int]]:
    """Every translation-canonical pair with the given sizes, exactly once."""
    if p_size == 0:
        seen = set()
        for q in _subsets(n, q_size):
            c = canonical_pair(n, 0, q)
            if c not in seen:
                seen.add(c)
                yield c
        return
    full_q = list(_subsets(n, q_size))
    for p in _subsets(n, p_size):
        if not p & 1:
            continue
        mp = _members(p)
        stab = []
        minimal = True
        for m in mp[1:]:
            r = _rotate(p, -m, n)
            key = _members(r)
            if key < mp:
                minimal = False
                break
            if r == p:
                stab.append(-m)
        if not minimal:
            continue
        if not stab:
            for q in full_q:
                yield p, q
            continue
        for q in full_q:
            mq = _members(q)
            if all(_members(_rotate(q, t, n)) >= mq for t in stab):
                yield p, q


def _count_pairs(n: int, p_size: int, q_size: int) -> int:
    return max(1, math.comb(n, p_size) * math.comb(n, q_size) // n)


def _complements_in_gamma(n: int, k0: int, k1: int, rows: tuple[int, int]) -> list[tuple[int, int]]:
    """All W = W0 x {0} u W1 x {1} with K + W = Z_N x Z_2 and |W0|, |W1| = rows."""
    size = 2 * n
    full = (1 << size) - 1
    K = [(s, 0) for s in _members(k0)] + [(s, 1) for s in _members(k1)]
    # translates of K by (ws, we): rotate each row, swap rows when we = 1
    trans = {}
    for ws in range(n):
        r0, r1 = _rotate(k0, ws, n), _rotate(k1, ws, n)
        trans[(ws, 0)] = r0 | (r1 << n)
        trans[(ws, 1)] = r1 | (r0 << n)
    need0, need1 = rows
    found: list[tuple[int, int]] = []

    def extend(covered: int, w0: int, w1: int, c0: int, c1: int) -> None:
        if covered == full:
            if c0 == need0 and c1 == need1:
                found.append((w0, w1))
            return
        free = ~covered & full
        g = (free & -free).bit_length() - 1
        gs, ge = g % n, g // n
        for ks, ke in K:
            ws, we = (gs - ks) % n, (ge - ke) % 2
            m = trans[(ws, we)]
            if m & covered:
                continue
            if we == 0:
                if c0 < need0:
                    extend(covered | m, w0 | (1 << ws), w1, c0 + 1, c1)
            elif c1 < need1:
                extend(covered | m, w0, w1 | (1 << ws), c0, c1 + 1)

    if K:
        extend(0, 0, 0, 0, 0)
    return found


def _complements_for_pairs(n, pairs, rows, use_kernel) -> np.ndarray:
    """(k, 4) uint64 rows (p, q, w0, w1) with (w0, w1) translation-canonical."""
    if use_kernel and _kernels.gamma_complements_batch is not None and n <= _kernels.MAX_N:
        idx, w0, w1 = _kernels.complements_batch(n, pairs, rows)
        pq = np.array(pairs, dtype=np.uint64).reshape(-1, 2)
        return np.column_stack([pq[idx], w0.astype(np.uint64), w1.astype(np.uint64)])
    out = []
    for p, q in pairs:
        for w0, w1 in _complements_in_gamma(n, p, q, rows):
            if canonical_pair(n, w0, w1) == (w0, w1):
                out.append((p, q, w0, w1))
    return np.array(out, dtype=np.uint64).reshape(-1, 4)


def _work_chunk(args) -> np.ndarray:
    n, side, rows, pairs, use_kernel, fixed = args
    found = _complements_for_pairs(n, pairs, rows, use_kernel)
    if fixed:
        # the fixed half was not enumerated canonically
        for row in found:
            row[0], row[1] = canonical_pair(n, int(row[0]), int(row[1]))
    if side == "XY":
        found = found[:, [2, 3, 0, 1]]
    return found


def _bit_reverse(col: np.ndarray, n: int) -> np.ndarray:
    out = np.zeros_like(col)
    one = np.uint64(1)
    for i in range(n):
        out |= ((col >> np.uint64(i)) & one) << np.uint64(n - 1 - i)
    return out


def _canonical_sort(rows: np.ndarray, n: int) -> np.ndarray:
    """Sort by ascending member tuples of A, B, X, Y (sizes fixed within a profile).

    For equal-size sets, lex order of member lists is reverse numeric order of
    the bit-reversed masks.
    """
    if len(rows) == 0:
        return rows
    keys = [~_bit_reverse(rows[:, c], n) for c in (3, 2, 1, 0)]
    return rows[np.lexsort(keys)]


def cardinality_profiles(n: int) -> list[tuple[int, int, int, int]]:
    """Profiles (|A|, |B|, |X|, |Y|) compatible with a cross tiling of Z_N."""
    out = []
    for a in range(n + 1):
        for b in range(n + 1):
            s = a + b
            if s == 0 or (2 * n) % s:
                continue
            t = 2 * n // s
            for x in range(max(0, t - n), min(n, t) + 1):
                y = t - x
                if a == b or x == y:
                    out.append((a, b, x, y))
    return out


def resolve_budget(budget: int | None) -> int:
    if budget is not None:
        return budget
    env = os.environ.get(BUDGET_ENV)
    return int(env) if env else DEFAULT_BUDGET


def _plan(n: int, cons: SearchConstraints) -> list[tuple]:
    """(profile, side, rows of the searched side, candidate pairs, estimated count) per profile."""
    plans = []
    if cons.cardinalities is not None:
        profiles = [tuple(cons.cardinalities)]
        a, b, x, y = profiles[0]
        if (a + b) * (x + y) != 2 * n or not (a == b or x == y):
            log.info("cardinalities %s cannot carry a cross tiling of Z_%d", profiles[0], n)
            return []
    else:
        profiles = cardinality_profiles(n)
    for a, b, x, y in profiles:
        if cons.fixed_A is not None:
            if len(cons.fixed_A) != a:
                continue
            fa = cons.fixed_A.bits
            pairs = ((fa, q) for q in _subsets(n, b))
            plans.append(((a, b, x, y), "AB", (x, y), pairs, math.comb(n, b)))
        elif cons.fixed_X is not None:
            if len(cons.fixed_X) != x:
                continue
            fx = cons.fixed_X.bits
            pairs = ((fx, q) for q in _subsets(n, y))
            plans.append(((a, b, x, y), "XY", (a, b), pairs, math.comb(n, y)))
        else:
            ab, xy = _count_pairs(n, a, b), _count_pairs(n, x, y)
            if ab <= xy:
                plans.append(((a, b, x, y), "AB", (x, y), _canonical_pairs(n, a, b), ab))
            else:
                plans.append(((a, b, x, y), "XY", (a, b), _canonical_pairs(n, x, y), xy))
    return plans


def estimate_work(n: int, cons: SearchConstraints | None = None) -> int:
    cons = cons or SearchConstraints()
    return sum(p[4] for p in _plan(n, cons))


def _chunks(it, size):
    it = iter(it)
    while True:
        block = list(itertools.islice(it, size))
        if not block:
            return
        yield block


def search_cross(n: int, constraints: SearchConstraints | None = None, *, jobs: int = 1,
                 budget: int | None = None, chunk_size: int = 8192,
                 use_kernel: bool = True) -> Iterator[CrossTilingInstance]:
    """Stream every cross tiling of Z_N meeting the constraints, canonical order.

    Raises SearchBudgetExceeded before doing any work when the estimated
    number of candidate pairs is larger than the budget.
    """
    if n < 2:
        raise ValueError("search needs N >= 2")
    cons = constraints or SearchConstraints()
    for s in (cons.fixed_A, cons.fixed_X):
        if s is not None and s.modulus != n:
            raise ValueError(f"fixed set lives in Z_{s.modulus}, searching Z_{n}")
    limit = resolve_budget(budget)
    # profile count alone can be large; refuse before enumerating huge groups
    if n > 64:
        raise SearchBudgetExceeded(f"N={n} is beyond exhaustive search (budget {limit})")
    plans = _plan(n, cons)
    work = sum(p[4] for p in plans)
    if work > limit:
        raise SearchBudgetExceeded(
            f"N={n}: about {work} candidate pairs exceed the budget of {limit} "
            f"(set {BUDGET_ENV} to raise it)")

    fixed = cons.fixed_A is not None or cons.fixed_X is not None
    pool = get_context("spawn").Pool(jobs) if jobs > 1 else None
    try:
        for profile, side, rows, pairs, _ in plans:
            tasks = ((n, side, rows, block, use_kernel, fixed) for block in _chunks(pairs, chunk_size))
            parts = list(pool.imap(_work_chunk, tasks)) if pool else [_work_chunk(t) for t in tasks]
            found = np.concatenate(parts) if parts else np.zeros((0, 4), np.uint64)
            if fixed:
                found = np.unique(found, axis=0)
            log.info("N=%d profile %s: %d instances", n, profile, len(found))
            for a, b, x, y in _canonical_sort(found, n).tolist():
                inst = CrossTilingInstance(n, CyclicSet(n, a), CyclicSet(n, b),
                                           CyclicSet(n, x), CyclicSet(n, y))
                if cons.nontrivial and classify(inst).kind is not TrivialityKind.NON_TRIVIAL:
                    continue
                yield inst
    finally:
        if pool is not None:
            pool.terminate()
