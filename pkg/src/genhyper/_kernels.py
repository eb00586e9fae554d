"""Hot loops over Cayley tables.

Every kernel exists twice: a numba ``@njit`` version and a numpy/Python
fallback with the same signature and the same output (including which
witness is reported first). The active backend is numba unless numba is
missing or ``GENHYPER_NO_NUMBA`` is set to a non-empty value other than "0".

All kernels take ``mult``, an ``(n, n)`` int32 table with
``mult[i, j] = index(e_i * e_j)`` and the identity at index 0.
"""
import itertools
import os

import numpy as np

try:
    import numba
    from numba import njit
except ImportError:  # pragma: no cover
    numba = None

_flag = os.environ.get("GENHYPER_NO_NUMBA", "")
USE_NUMBA = numba is not None and _flag in ("", "0")


# ---------------------------------------------------------------- numpy path

def closure_np(mult, seed):
    n = mult.shape[0]
    mask = np.zeros(n, dtype=np.bool_)
    mask[0] = True
    seed = np.unique(np.asarray(seed, dtype=np.int64))
    if seed.size == 0:
        return mask
    frontier = np.zeros(1, dtype=np.int64)
    while frontier.size:
        cand = np.unique(mult[np.ix_(frontier, seed)].ravel())
        cand = cand[~mask[cand]]
        mask[cand] = True
        frontier = cand
    return mask


def generates_np(mult, seed):
    return bool(closure_np(mult, seed).all())


def generating_combinations_np(mult, k):
    n = mult.shape[0]
    rows = [c for c in itertools.combinations(range(n), k) if generates_np(mult, c)]
    return np.array(rows, dtype=np.int64).reshape(len(rows), k)


def first_generating_combination_np(mult, k):
    n = mult.shape[0]
    for c in itertools.combinations(range(n), k):
        if generates_np(mult, c):
            return np.array(c, dtype=np.int64)
    return np.full(k, -1, dtype=np.int64)


def count_generating_tuples_np(mult, t):
    n = mult.shape[0]
    memo = {}
    count = 0
    for tup in itertools.product(range(n), repeat=t):
        key = frozenset(tup)
        hit = memo.get(key)
        if hit is None:
            hit = memo[key] = generates_np(mult, sorted(key))
        count += hit
    return count


def first_exchange_failure_np(table, edges):
    """First ``(x, y, i)`` with ``table[x*d + i, edges[y]]`` all False.

    ``table[x*d + i, v]`` says whether replacing position ``i`` of hyperedge
    ``x`` by vertex ``v`` gives a hyperedge. Scan order is x, then y, then i.
    Returns ``(-1, -1, -1)`` when there is no failure.
    """
    m, d = edges.shape
    for x in range(m):
        rows = table[x * d:(x + 1) * d]          # (d, n)
        ok = rows[:, edges].any(axis=2)          # (d, m)
        bad = np.argwhere(~ok.T)                 # rows (y, i), y-major
        if bad.size:
            y, i = bad[0]
            return int(x), int(y), int(i)
    return -1, -1, -1


def induced_p4_np(adj):
    n = adj.shape[0]
    for b in range(n):
        for c in np.flatnonzero(adj[b]):
            a_cand = adj[b] & ~adj[c]
            a_cand[c] = False
            d_cand = adj[c] & ~adj[b]
            d_cand[b] = False
            ai = np.flatnonzero(a_cand)
            di = np.flatnonzero(d_cand)
            if ai.size == 0 or di.size == 0:
                continue
            ok = ~adj[np.ix_(ai, di)] & (ai[:, None] != di[None, :])
            hit = np.argwhere(ok)
            if hit.size:
                r, s = hit[0]
                return np.array([ai[r], b, c, di[s]], dtype=np.int64)
    return np.full(4, -1, dtype=np.int64)


# ---------------------------------------------------------------- numba path

if numba is not None:

    @njit(cache=True)
    def _closure_size(mult, seed, mask, queue, stop):
        mask[:] = False
        mask[0] = True
        queue[0] = 0
        size = 1
        head = 0
        ns = seed.shape[0]
        while head < size:
            e = queue[head]
            head += 1
            for k in range(ns):
                h = mult[e, seed[k]]
                if not mask[h]:
                    mask[h] = True
                    queue[size] = h
                    size += 1
                    if size == stop:
                        return size
        return size

    @njit(cache=True)
    def closure_nb(mult, seed):
        n = mult.shape[0]
        mask = np.zeros(n, dtype=np.bool_)
        queue = np.empty(n, dtype=np.int64)
        _closure_size(mult, seed, mask, queue, n + 1)
        return mask

    @njit(cache=True)
    def generates_nb(mult, seed):
        n = mult.shape[0]
        mask = np.zeros(n, dtype=np.bool_)
        queue = np.empty(n, dtype=np.int64)
        return _closure_size(mult, seed, mask, queue, n) == n

    @njit(cache=True)
    def _next_combination(c, n):
        k = c.shape[0]
        i = k - 1
        while i >= 0 and c[i] == n - k + i:
            i -= 1
        if i < 0:
            return False
        c[i] += 1
        for j in range(i + 1, k):
            c[j] = c[j - 1] + 1
        return True

    @njit(cache=True)
    def generating_combinations_nb(mult, k):
        n = mult.shape[0]
        out = np.empty((16, k), dtype=np.int64)
        m = 0
        if k > n:
            return out[:0]
        mask = np.zeros(n, dtype=np.bool_)
        queue = np.empty(n, dtype=np.int64)
        c = np.arange(k).astype(np.int64)
        while True:
            if _closure_size(mult, c, mask, queue, n) == n:
                if m == out.shape[0]:
                    bigger = np.empty((2 * m, k), dtype=np.int64)
                    bigger[:m] = out
                    out = bigger
                out[m] = c
                m += 1
            if not _next_combination(c, n):
                break
        return out[:m].copy()

    @njit(cache=True)
    def first_generating_combination_nb(mult, k):
        n = mult.shape[0]
        if k > n:
            return np.full(k, -1, dtype=np.int64)
        mask = np.zeros(n, dtype=np.bool_)
        queue = np.empty(n, dtype=np.int64)
        c = np.arange(k).astype(np.int64)
        while True:
            if _closure_size(mult, c, mask, queue, n) == n:
                return c
            if not _next_combination(c, n):
                break
        return np.full(k, -1, dtype=np.int64)

    @njit(cache=True)
    def count_generating_tuples_nb(mult, t):
        n = mult.shape[0]
        mask = np.zeros(n, dtype=np.bool_)
        queue = np.empty(n, dtype=np.int64)
        tup = np.zeros(t, dtype=np.int64)
        count = 0
        while True:
            if _closure_size(mult, tup, mask, queue, n) == n:
                count += 1
            j = t - 1
            while j >= 0 and tup[j] == n - 1:
                tup[j] = 0
                j -= 1
            if j < 0:
                break
            tup[j] += 1
        return count

    @njit(cache=True)
    def first_exchange_failure_nb(table, edges):
        m, d = edges.shape
        for x in range(m):
            for y in range(m):
                for i in range(d):
                    row = x * d + i
                    ok = False
                    for k in range(d):
                        if table[row, edges[y, k]]:
                            ok = True
                            break
                    if not ok:
                        return x, y, i
        return -1, -1, -1

    @njit(cache=True)
    def induced_p4_nb(adj):
        n = adj.shape[0]
        out = np.full(4, -1, dtype=np.int64)
        for b in range(n):
            for c in range(n):
                if not adj[b, c]:
                    continue
                for a in range(n):
                    if a == c or not adj[a, b] or adj[a, c]:
                        continue
                    for d in range(n):
                        if d == b or d == a or not adj[c, d] or adj[b, d] or adj[a, d]:
                            continue
                        out[0] = a
                        out[1] = b
                        out[2] = c
                        out[3] = d
                        return out
        return out


NUMPY = {
    "closure": closure_np,
    "generates": generates_np,
    "generating_combinations": generating_combinations_np,
    "first_generating_combination": first_generating_combination_np,
    "count_generating_tuples": count_generating_tuples_np,
    "first_exchange_failure": first_exchange_failure_np,
    "induced_p4": induced_p4_np,
}

if numba is not None:
    NUMBA = {
        "closure": closure_nb,
        "generates": generates_nb,
        "generating_combinations": generating_combinations_nb,
        "first_generating_combination": first_generating_combination_nb,
        "count_generating_tuples": count_generating_tuples_nb,
        "first_exchange_failure": first_exchange_failure_nb,
        "induced_p4": induced_p4_nb,
    }
else:  # pragma: no cover
    NUMBA = None

BACKEND = "numba" if USE_NUMBA else "numpy"
_active = NUMBA if USE_NUMBA else NUMPY

closure = _active["closure"]
generates = _active["generates"]
generating_combinations = _active["generating_combinations"]
first_generating_combination = _active["first_generating_combination"]
count_generating_tuples = _active["count_generating_tuples"]
first_exchange_failure = _active["first_exchange_failure"]
induced_p4 = _active["induced_p4"]
