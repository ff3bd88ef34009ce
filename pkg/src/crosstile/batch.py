"""Vectorised verdicts over many instances at once.

Each function takes (S, N) integer arrays (one instance per row) and returns
a boolean array of length S.  Everything is exact integer arithmetic in
int64; the magnitudes involved are at most 2N.  These mirror the scalar
checks in :mod:`crosstile.tiling` and :mod:`crosstile.cross` and exist so the
exhaustive sweeps finish in seconds.
"""
from __future__ import annotations

import math

import numpy as np

from .zn_core import divisors, power_residues


def masks_to_matrix(masks, n: int) -> np.ndarray:
    masks = np.asarray(masks, dtype=np.int64)
    return ((masks[:, None] >> np.arange(n, dtype=np.int64)) & 1).astype(np.int64)


def convolve_rows(U: np.ndarray, V: np.ndarray) -> np.ndarray:
    """Row-wise cyclic convolution."""
    n = U.shape[1]
    out = np.zeros(U.shape, dtype=np.int64)
    for s in range(n):
        col = U[:, s:s + 1]
        if col.any():
            out += col * np.roll(V, s, axis=1)
    return out


def zero_mask(U: np.ndarray) -> np.ndarray:
    """(S, N) boolean: entry k is True iff the k-th character sum of the row vanishes."""
    S, n = U.shape
    out = np.zeros((S, n), dtype=bool)
    for d in divisors(n):
        R = np.array(power_residues(d), dtype=np.int64)
        folded = U.reshape(S, n // d, d).sum(axis=1)
        vanishes = ~(folded @ R).any(axis=1)
        ks = [k for k in range(n) if n // math.gcd(n, k) == d]
        out[:, ks] = vanishes[:, None]
    return out


def tiling_direct(A: np.ndarray, X: np.ndarray, level: int = 1) -> np.ndarray:
    return (convolve_rows(A, X) == level).all(axis=1)


def tiling_fourier(A: np.ndarray, X: np.ndarray) -> np.ndarray:
    n = A.shape[1]
    card = A.sum(axis=1) * X.sum(axis=1) == n
    covered = zero_mask(A) | zero_mask(X)
    return card & covered[:, 1:].all(axis=1)


def cross_direct(A, B, X, Y) -> np.ndarray:
    first = convolve_rows(A, X) + convolve_rows(B, Y)
    second = convolve_rows(A, Y) + convolve_rows(B, X)
    return (first == 1).all(axis=1) & (second == 1).all(axis=1)


def cross_equiv(A, B, X, Y) -> np.ndarray:
    total = convolve_rows(A + B, X + Y)
    diff = convolve_rows(A - B, X - Y)
    return (total == 2).all(axis=1) & (diff == 0).all(axis=1)


def cross_fourier(A, B, X, Y) -> np.ndarray:
    n = A.shape[1]
    a, b, x, y = (M.sum(axis=1) for M in (A, B, X, Y))
    ok = ((a == b) | (x == y)) & ((a + b) * (x + y) == 2 * n)
    sum_ok = (zero_mask(A + B) | zero_mask(X + Y))[:, 1:].all(axis=1)
    diff_ok = (zero_mask(A - B) | zero_mask(X - Y)).all(axis=1)
    return ok & sum_ok & diff_ok


def _gamma_difference_table(n: int) -> np.ndarray:
    # index g = s + e*n of Z_N x Z_2; table[g, h] = index of h - g
    idx = np.arange(2 * n)
    s, e = idx % n, idx // n
    return ((s[None, :] - s[:, None]) % n) + ((e[None, :] - e[:, None]) % 2) * n


def cross_embed(A, B, X, Y) -> np.ndarray:
    """C + Z = Z_N x Z_2 with C = A x {0} u B x {1}, Z = X x {0} u Y x {1}."""
    n = A.shape[1]
    C = np.concatenate([A, B], axis=1)
    Z = np.concatenate([X, Y], axis=1)
    table = _gamma_difference_table(n)
    out = np.zeros(C.shape, dtype=np.int64)
    for g in range(2 * n):
        col = C[:, g:g + 1]
        if col.any():
            out += col * Z[:, table[g]]
    return (out == 1).all(axis=1)


CROSS_METHODS = {
    "direct": cross_direct,
    "equiv": cross_equiv,
    "fourier": cross_fourier,
    "embed": cross_embed,
}
