"""Hot inner loops.

Every kernel exists twice: a loop-style body compiled with numba ``@njit`` and
a vectorized pure-numpy fallback.  The module-level names (``fisher_yates``,
``m_lefts`` ...) are bound to one or the other at import time:

* numba is used when it can be imported and ``CUBICITY_PURE_NUMPY`` is unset
  (or ``0``/``false``/``no``);
* otherwise the numpy implementations are used.

Both paths return identical results; ``tests/test_kernels.py`` checks this.
All vertex indices here are 0-based.
"""

from __future__ import annotations

import os

import numpy as np

__all__ = [
    "USE_NUMBA",
    "BACKEND",
    "fisher_yates",
    "m_lefts",
    "separated_mask",
    "surviving_pairs",
    "edge_separation",
]


def _numba_requested() -> bool:
    flag = os.environ.get("CUBICITY_PURE_NUMPY", "").strip().lower()
    return flag in ("", "0", "false", "no")


try:
    if not _numba_requested():
        raise ImportError("disabled by CUBICITY_PURE_NUMPY")
    from numba import njit

    HAVE_NUMBA = True
except ImportError:
    HAVE_NUMBA = False


# ---------------------------------------------------------------------------
# pure numpy


def fisher_yates_np(swaps: np.ndarray) -> np.ndarray:
    """Apply the Fisher-Yates swap sequence; ``swaps[i]`` is in ``[0, i]``."""
    perm = list(range(swaps.shape[0]))
    sw = swaps.tolist()
    for i in range(len(perm) - 1, 0, -1):
        j = sw[i]
        perm[i], perm[j] = perm[j], perm[i]
    return np.asarray(perm, dtype=np.int64)


def m_lefts_np(indptr, indices, pi, in_a, length):
    n = pi.shape[0]
    in_b = ~in_a
    lefts = np.zeros(n, dtype=np.int64)
    lefts[in_b] = length + pi[in_b]
    # max pi over B-neighbours, 0 when there are none
    vals = np.where(in_b[indices], pi[indices], 0)
    nonempty = indptr[1:] > indptr[:-1]
    if vals.size:
        best = np.maximum.reduceat(vals, indptr[:-1][nonempty])
        rows = np.flatnonzero(nonempty)
        sel = in_a[rows]
        lefts[rows[sel]] = best[sel]
    return lefts


def separated_mask_np(lefts, length, ru, rv):
    return np.abs(lefts[ru] - lefts[rv]) > length


def surviving_pairs_np(lefts, lengths):
    n = lefts.shape[0]
    out_u = []
    out_v = []
    for u in range(n - 1):
        cand = np.arange(u + 1, n)
        row = lefts[u]
        for d in range(lefts.shape[1]):
            cand = cand[np.abs(lefts[cand, d] - row[d]) <= lengths[d]]
            if cand.size == 0:
                break
        if cand.size:
            out_u.append(np.full(cand.size, u, dtype=np.int64))
            out_v.append(cand)
    if not out_u:
        empty = np.empty(0, dtype=np.int64)
        return empty, empty.copy()
    return np.concatenate(out_u), np.concatenate(out_v)


def edge_separation_np(lefts, lengths, eu, ev):
    return np.abs(lefts[eu] - lefts[ev]) > lengths[None, :]


# ---------------------------------------------------------------------------
# numba

if HAVE_NUMBA:

    @njit(cache=True)
    def fisher_yates_nb(swaps):
        n = swaps.shape[0]
        perm = np.arange(n)
        for i in range(n - 1, 0, -1):
            j = swaps[i]
            tmp = perm[i]
            perm[i] = perm[j]
            perm[j] = tmp
        return perm

    @njit(cache=True)
    def m_lefts_nb(indptr, indices, pi, in_a, length):
        n = pi.shape[0]
        lefts = np.zeros(n, dtype=np.int64)
        for u in range(n):
            if not in_a[u]:
                lefts[u] = length + pi[u]
                continue
            best = 0
            for p in range(indptr[u], indptr[u + 1]):
                x = indices[p]
                if not in_a[x] and pi[x] > best:
                    best = pi[x]
            lefts[u] = best
        return lefts

    @njit(cache=True)
    def separated_mask_nb(lefts, length, ru, rv):
        out = np.empty(ru.shape[0], dtype=np.bool_)
        for i in range(ru.shape[0]):
            out[i] = abs(lefts[ru[i]] - lefts[rv[i]]) > length
        return out

    @njit(cache=True)
    def surviving_pairs_nb(lefts, lengths):
        n, k = lefts.shape
        cap = 1024
        us = np.empty(cap, dtype=np.int64)
        vs = np.empty(cap, dtype=np.int64)
        cnt = 0
        for u in range(n - 1):
            for v in range(u + 1, n):
                ok = True
                for d in range(k):
                    if abs(lefts[u, d] - lefts[v, d]) > lengths[d]:
                        ok = False
                        break
                if ok:
                    if cnt == cap:
                        cap *= 2
                        nu = np.empty(cap, dtype=np.int64)
                        nv = np.empty(cap, dtype=np.int64)
                        nu[:cnt] = us[:cnt]
                        nv[:cnt] = vs[:cnt]
                        us = nu
                        vs = nv
                    us[cnt] = u
                    vs[cnt] = v
                    cnt += 1
        return us[:cnt].copy(), vs[:cnt].copy()

    @njit(cache=True)
    def edge_separation_nb(lefts, lengths, eu, ev):
        m = eu.shape[0]
        k = lengths.shape[0]
        out = np.zeros((m, k), dtype=np.bool_)
        for i in range(m):
            for d in range(k):
                out[i, d] = abs(lefts[eu[i], d] - lefts[ev[i], d]) > lengths[d]
        return out

    USE_NUMBA = True
    BACKEND = "numba"
    fisher_yates = fisher_yates_nb
    m_lefts = m_lefts_nb
    separated_mask = separated_mask_nb
    surviving_pairs = surviving_pairs_nb
    edge_separation = edge_separation_nb
else:
    USE_NUMBA = False
    BACKEND = "numpy"
    fisher_yates = fisher_yates_np
    m_lefts = m_lefts_np
    separated_mask = separated_mask_np
    surviving_pairs = surviving_pairs_np
    edge_separation = edge_separation_np
