"""Compiled complement search in Z_N x Z_2 for 2N <= 64.

Same traversal as ``search._complements_in_gamma`` (cover the least uncovered
point first), written iteratively over uint64 masks for numba.
"""
from __future__ import annotations

import numpy as np

try:
    from numba import njit
except ImportError:  # pragma: no cover
    njit = None

MAX_N = 32


def _is_canonical(w0, w1, n, nmask):
    # (w0, w1) is the lex-least of its translates; lex on equal-size sets is
    # decided by the lowest bit of the symmetric difference
    lead = w0 if w0 else w1
    if lead == 0:
        return True
    if not lead & np.uint64(1):
        return False
    for m in range(1, n):
        if not (lead >> np.uint64(m)) & np.uint64(1):
            continue
        sh = np.uint64(m)
        back = np.uint64(n - m)
        r0 = ((w0 >> sh) | (w0 << back)) & nmask
        r1 = ((w1 >> sh) | (w1 << back)) & nmask
        d = r0 ^ w0
        if d:
            if (d & (~d + np.uint64(1))) & r0:
                return False
            continue
        d = r1 ^ w1
        if d and (d & (~d + np.uint64(1))) & r1:
            return False
    return True


def _gamma_complements_batch(n, k0s, k1s, need0, need1, out_pair, out_w0, out_w1):
    """Fill out_* with (pair index, W0, W1), W translation-canonical only.

    Returns the count, or -1 on overflow.
    """
    size = 2 * n
    full = np.uint64(0xFFFFFFFFFFFFFFFF) >> np.uint64(64 - size)
    nmask = np.uint64(0xFFFFFFFFFFFFFFFF) >> np.uint64(64 - n)
    cap = out_pair.shape[0]
    count = 0
    ks = np.zeros(size, np.int64)
    ke = np.zeros(size, np.int64)
    trans = np.zeros(size, np.uint64)
    cov = np.zeros(size + 1, np.uint64)
    w0s = np.zeros(size + 1, np.int64)
    w1s = np.zeros(size + 1, np.int64)
    c0s = np.zeros(size + 1, np.int64)
    c1s = np.zeros(size + 1, np.int64)
    gs = np.zeros(size + 1, np.int64)
    nxt = np.zeros(size + 1, np.int64)
    for i in range(k0s.shape[0]):
        k0 = np.uint64(k0s[i])
        k1 = np.uint64(k1s[i])
        nk = 0
        for s in range(n):
            if (k0 >> np.uint64(s)) & np.uint64(1):
                ks[nk] = s
                ke[nk] = 0
                nk += 1
        for s in range(n):
            if (k1 >> np.uint64(s)) & np.uint64(1):
                ks[nk] = s
                ke[nk] = 1
                nk += 1
        if nk == 0:
            continue
        for ws in range(n):
            if ws == 0:
                r0 = k0
                r1 = k1
            else:
                sh = np.uint64(ws)
                back = np.uint64(n - ws)
                r0 = ((k0 << sh) | (k0 >> back)) & nmask
                r1 = ((k1 << sh) | (k1 >> back)) & nmask
            trans[ws] = r0 | (r1 << np.uint64(n))
            trans[ws + n] = r1 | (r0 << np.uint64(n))
        depth = 0
        cov[0] = np.uint64(0)
        w0s[0] = 0
        w1s[0] = 0
        c0s[0] = 0
        c1s[0] = 0
        gs[0] = 0
        nxt[0] = 0
        while depth >= 0:
            covered = cov[depth]
            if covered == full:
                if (c0s[depth] == need0 and c1s[depth] == need1
                        and is_canonical(np.uint64(w0s[depth]), np.uint64(w1s[depth]), n, nmask)):
                    if count >= cap:
                        return -1
                    out_pair[count] = i
                    out_w0[count] = w0s[depth]
                    out_w1[count] = w1s[depth]
                    count += 1
                depth -= 1
                continue
            g = gs[depth]
            while (covered >> np.uint64(g)) & np.uint64(1):
                g += 1
            gs[depth] = g
            gsn = g % n
            gen = g // n
            j = nxt[depth]
            pushed = False
            while j < nk:
                ws = (gsn - ks[j]) % n
                we = (gen - ke[j]) % 2
                j += 1
                m = trans[ws + we * n]
                if m & covered:
                    continue
                if we == 0:
                    if c0s[depth] >= need0:
                        continue
                else:
                    if c1s[depth] >= need1:
                        continue
                nxt[depth] = j
                d = depth + 1
                cov[d] = covered | m
                if we == 0:
                    w0s[d] = w0s[depth] | (1 << ws)
                    w1s[d] = w1s[depth]
                    c0s[d] = c0s[depth] + 1
                    c1s[d] = c1s[depth]
                else:
                    w0s[d] = w0s[depth]
                    w1s[d] = w1s[depth] | (1 << ws)
                    c0s[d] = c0s[depth]
                    c1s[d] = c1s[depth] + 1
                gs[d] = g
                nxt[d] = 0
                depth = d
                pushed = True
                break
            if not pushed:
                depth -= 1
    return count


if njit is not None:
    is_canonical = njit(cache=True)(_is_canonical)
    gamma_complements_batch = njit(cache=True)(_gamma_complements_batch)
else:  # pragma: no cover
    is_canonical = _is_canonical
    gamma_complements_batch = None


def complements_batch(n: int, pairs: list[tuple[int, int]], rows: tuple[int, int]):
    """(pair index, W0, W1) arrays for every canonical complement of every pair."""
    k0 = np.array([p for p, _ in pairs], dtype=np.int64)
    k1 = np.array([q for _, q in pairs], dtype=np.int64)
    cap = max(1024, 4 * len(pairs))
    while True:
        out_pair = np.empty(cap, np.int64)
        out_w0 = np.empty(cap, np.int64)
        out_w1 = np.empty(cap, np.int64)
        c = gamma_complements_batch(n, k0, k1, rows[0], rows[1], out_pair, out_w0, out_w1)
        if c >= 0:
            return out_pair[:c], out_w0[:c], out_w1[:c]
        cap *= 4
