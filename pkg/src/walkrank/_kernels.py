"""Hot numeric kernels with two interchangeable backends.

The numba backend compiles the per-walk loops; the numpy backend runs the
same computation vectorized in lockstep across walks. Both consume the
same pre-drawn uniforms and use the same strict-< inverse-CDF rule, so
their outputs are bit-identical. Selection: numpy is used when numba is
not importable or when WALKRANK_NUMBA is set to 0/false/off.
"""

from __future__ import annotations

import os

import numpy as np


def _numba_enabled() -> bool:
    flag = os.environ.get("WALKRANK_NUMBA", "1").strip().lower()
    if flag in ("0", "false", "off", "no"):
        return False
    try:
        import numba  # noqa: F401
    except ImportError:
        return False
    return True


# ---------------------------------------------------------------- loops

def _overlap_counts_loop(indptr, indices, s):
    n = indptr.shape[0] - 1
    mark = np.zeros(n, np.bool_)
    for j in range(indptr[s], indptr[s + 1]):
        mark[indices[j]] = True
    out = np.zeros(n, np.int64)
    for v in range(n):
        c = 0
        for j in range(indptr[v], indptr[v + 1]):
            if mark[indices[j]]:
                c += 1
        out[v] = c
    return out


def _walk_table_loop(indptr, indices, weights, start, uniforms):
    # totals[v] = sum of weights over N(v), accumulated in adjacency order
    # so the floats match the numpy backend's cumsum exactly.
    K, T = uniforms.shape
    n = indptr.shape[0] - 1
    totals = np.zeros(n, np.float64)
    for v in range(n):
        acc = 0.0
        for j in range(indptr[v], indptr[v + 1]):
            acc += weights[indices[j]]
        totals[v] = acc
    first_pos = np.full((K, n), -1, np.int32)
    counts = np.empty(K, np.int64)
    for k in range(K):
        cur = start
        first_pos[k, start] = 0
        c = 1
        for t in range(T):
            lo = indptr[cur]
            deg = indptr[cur + 1] - lo
            if deg == 0:
                break
            x = uniforms[k, t] * totals[cur]
            sel = deg - 1
            acc = 0.0
            for i in range(deg):
                acc += weights[indices[lo + i]]
                if acc >= x:
                    sel = i
                    break
            cur = indices[lo + sel]
            if first_pos[k, cur] < 0:
                first_pos[k, cur] = c
                c += 1
        counts[k] = c
    return first_pos, counts


# ------------------------------------------------------- numpy lockstep

def _overlap_counts_numpy(indptr, indices, s):
    n = len(indptr) - 1
    mark = np.zeros(n, bool)
    mark[indices[indptr[s]:indptr[s + 1]]] = True
    rows = np.repeat(np.arange(n), np.diff(indptr))
    hits = np.bincount(rows[mark[indices]], minlength=n)
    return hits.astype(np.int64)


def _walk_table_numpy(indptr, indices, weights, start, uniforms):
    K, T = uniforms.shape
    n = len(indptr) - 1
    deg = np.diff(indptr)
    maxdeg = int(deg.max()) if n else 0

    # padded per-node neighbor and cumulative-weight tables
    rows = np.repeat(np.arange(n), deg)
    cols = np.arange(len(indices)) - np.repeat(indptr[:-1], deg)
    nbr = np.zeros((n, maxdeg), np.int64)
    cw = np.zeros((n, maxdeg), np.float64)
    nbr[rows, cols] = indices
    cw[rows, cols] = weights[indices]
    np.cumsum(cw, axis=1, out=cw)
    totals = np.zeros(n, np.float64)
    if maxdeg:
        totals[deg > 0] = cw[deg > 0, deg[deg > 0] - 1]
    cw[np.arange(maxdeg) >= deg[:, None]] = np.inf

    first_pos = np.full((K, n), -1, np.int32)
    first_pos[:, start] = 0
    counts = np.ones(K, np.int64)
    cur = np.full(K, start, np.int64)
    dead = np.zeros(K, bool)
    walk_ids = np.arange(K)
    for t in range(T):
        dead |= deg[cur] == 0
        a = walk_ids[~dead]
        if a.size == 0:
            break
        ca = cur[a]
        x = uniforms[a, t] * totals[ca]
        sel = np.minimum((cw[ca] < x[:, None]).sum(axis=1), deg[ca] - 1)
        nxt = nbr[ca, sel]
        fresh = first_pos[a, nxt] < 0
        fa = a[fresh]
        first_pos[fa, nxt[fresh]] = counts[fa]
        counts[fa] += 1
        cur[a] = nxt
    return first_pos, counts


# ------------------------------------------------------------ dispatch

if _numba_enabled():
    from numba import njit

    _jit = njit(cache=True, nogil=True)
    overlap_counts = _jit(_overlap_counts_loop)
    walk_table = _jit(_walk_table_loop)
    BACKEND = "numba"
else:
    overlap_counts = _overlap_counts_numpy
    walk_table = _walk_table_numpy
    BACKEND = "numpy"


def warmup() -> None:
    """Force JIT compilation so timed runs exclude compile cost."""
    indptr = np.array([0, 1, 2], np.int64)
    indices = np.array([1, 0], np.int64)
    w = np.array([0.5, 0.5])
    overlap_counts(indptr, indices, 0)
    walk_table(indptr, indices, w, 0, np.full((1, 2), 0.5))
