"""Compiled inner loops: streaming top-k selection, trial batches, union-find.

Edge scores are recomputed from the canonical edge id on every visit, so a
trial needs O(n*k) memory however large the (virtual) score table is.  All
batch kernels write each trial's results into that trial's own output slot,
which keeps results bit-identical under any number of threads.
"""

import os

os.environ.setdefault("NUMBA_THREADING_LAYER", "workqueue")

import numpy as np
from numba import njit, prange

U64 = np.uint64
_GOLDEN = U64(0x9E3779B97F4A7C15)
_M1 = U64(0xBF58476D1CE4E5B9)
_M2 = U64(0x94D049BB133111EB)


@njit(inline="always")
def _mix64(z):
    z = (z ^ (z >> U64(30))) * _M1
    z = (z ^ (z >> U64(27))) * _M2
    return z ^ (z >> U64(31))


@njit(inline="always")
def _edge_hash(root, eid):
    return _mix64(root + eid * _GOLDEN)


@njit(inline="always")
def _lex_less(h1, e1, h2, e2):
    # preference order: compare (score bits, canonical edge id)
    return h1 < h2 or (h1 == h2 and e1 < e2)


@njit(inline="always")
def _sift_min(hs, he, hid, start, size):
    # min-heap on (hs, he); hid rides along
    root = start
    while True:
        child = 2 * root + 1
        if child >= size:
            break
        if child + 1 < size and _lex_less(hs[child + 1], he[child + 1], hs[child], he[child]):
            child += 1
        if _lex_less(hs[child], he[child], hs[root], he[root]):
            hs[root], hs[child] = hs[child], hs[root]
            he[root], he[child] = he[child], he[root]
            hid[root], hid[child] = hid[child], hid[root]
            root = child
        else:
            break


@njit(inline="always")
def _row_topk(n, k, i, root, hs, he, hid):
    """Fill the size-k heap with vertex i's k most-preferred edges (unsorted)."""
    size = 0
    for j in range(n):
        if j == i:
            continue
        if i < j:
            eid = U64(i) * U64(n) + U64(j)
        else:
            eid = U64(j) * U64(n) + U64(i)
        h = _edge_hash(root, eid)
        if size < k:
            hs[size] = h
            he[size] = eid
            hid[size] = j
            size += 1
            if size == k:
                for s in range(k // 2 - 1, -1, -1):
                    _sift_min(hs, he, hid, s, k)
        elif _lex_less(hs[0], he[0], h, eid):
            hs[0] = h
            he[0] = eid
            hid[0] = j
            _sift_min(hs, he, hid, 0, k)


@njit(inline="always")
def _heapsort_desc(hs, he, hid, k):
    """In-place heapsort of the min-heap: leaves arrays descending by (hs, he)."""
    size = k
    while size > 1:
        size -= 1
        hs[0], hs[size] = hs[size], hs[0]
        he[0], he[size] = he[size], he[0]
        hid[0], hid[size] = hid[size], hid[0]
        _sift_min(hs, he, hid, 0, size)


@njit(cache=True, parallel=True)
def topk_ids(n, k, root):
    """Ordered top-k neighbor ids for every vertex: shape (n, k), best first."""
    out = np.empty((n, k), np.int64)
    for i in prange(n):
        hs = np.empty(k, np.uint64)
        he = np.empty(k, np.uint64)
        hid = np.empty(k, np.int64)
        _row_topk(n, k, i, U64(root), hs, he, hid)
        _heapsort_desc(hs, he, hid, k)
        for a in range(k):
            out[i, a] = hid[a]
    return out


@njit(inline="always")
def _uf_find(parent, x):
    r = x
    while parent[r] != r:
        r = parent[r]
    while parent[x] != r:
        nxt = parent[x]
        parent[x] = r
        x = nxt
    return r


@njit(inline="always")
def _uf_union(parent, size, u, v):
    ru = _uf_find(parent, u)
    rv = _uf_find(parent, v)
    if ru == rv:
        return
    if size[ru] < size[rv]:
        ru, rv = rv, ru
    parent[rv] = ru
    size[ru] += size[rv]


@njit(cache=True)
def component_labels(n, eu, ev):
    """Union-find component labels; label of a vertex is its root vertex id."""
    parent = np.arange(n)
    size = np.ones(n, np.int64)
    for a in range(eu.shape[0]):
        _uf_union(parent, size, eu[a], ev[a])
    labels = np.empty(n, np.int64)
    for i in range(n):
        labels[i] = _uf_find(parent, i)
    return labels


# columns of the per-trial stats produced by the *_trial_stats kernels
STAT_CONNECTED = 0
STAT_EDGES = 1
STAT_ISOLATED = 2
STAT_MIN_DEG = 3
STAT_MAX_DEG = 4
STAT_ISO_V0 = 5
STAT_ISO_V1 = 6


@njit(inline="always")
def _finish_stats(n, deg, parent, out, t):
    iso = 0
    mind = deg[0]
    maxd = deg[0]
    for i in range(n):
        d = deg[i]
        if d == 0:
            iso += 1
        if d < mind:
            mind = d
        if d > maxd:
            maxd = d
    roots = 0
    for i in range(n):
        if _uf_find(parent, i) == i:
            roots += 1
    out[t, STAT_CONNECTED] = 1 if roots == 1 else 0
    out[t, STAT_ISOLATED] = iso
    out[t, STAT_MIN_DEG] = mind
    out[t, STAT_MAX_DEG] = maxd
    out[t, STAT_ISO_V0] = 1 if deg[0] == 0 else 0
    out[t, STAT_ISO_V1] = 1 if n > 1 and deg[1] == 0 else 0


@njit(cache=True, parallel=True)
def mutual_trial_stats(n, k, roots, bilateral):
    """One bilateral/unilateral graph per stream key; per-trial summary stats.

    A pair appears twice among the n*k proposals iff both endpoints propose
    it; bilateral keeps exactly those, unilateral keeps every proposed pair.
    """
    T = roots.shape[0]
    out = np.zeros((T, 7), np.int64)
    for t in prange(T):
        root = roots[t]
        hs = np.empty(k, np.uint64)
        he = np.empty(k, np.uint64)
        hid = np.empty(k, np.int64)
        eids = np.empty(n * k, np.uint64)
        for i in range(n):
            _row_topk(n, k, i, root, hs, he, hid)
            for a in range(k):
                eids[i * k + a] = he[a]
        eids.sort()
        deg = np.zeros(n, np.int64)
        parent = np.arange(n)
        size = np.ones(n, np.int64)
        nk = n * k
        m = 0
        idx = 0
        while idx < nk:
            e = eids[idx]
            two = idx + 1 < nk and eids[idx + 1] == e
            if two or not bilateral:
                u = np.int64(e // U64(n))
                v = np.int64(e % U64(n))
                deg[u] += 1
                deg[v] += 1
                m += 1
                _uf_union(parent, size, u, v)
            idx += 2 if two else 1
        out[t, STAT_EDGES] = m
        _finish_stats(n, deg, parent, out, t)
    return out


@njit(cache=True, parallel=True)
def er_trial_stats(n, p, roots):
    """One Erdős–Rényi graph per stream key; same per-trial stats layout."""
    T = roots.shape[0]
    out = np.zeros((T, 7), np.int64)
    for t in prange(T):
        root = roots[t]
        deg = np.zeros(n, np.int64)
        parent = np.arange(n)
        size = np.ones(n, np.int64)
        m = 0
        for u in range(n):
            base = U64(u) * U64(n)
            for v in range(u + 1, n):
                h = _edge_hash(root, base + U64(v))
                if np.float64(h >> U64(11)) * (2.0 ** -53) < p:
                    deg[u] += 1
                    deg[v] += 1
                    m += 1
                    _uf_union(parent, size, u, v)
        out[t, STAT_EDGES] = m
        _finish_stats(n, deg, parent, out, t)
    return out


@njit(cache=True)
def er_edges(n, p, root):
    """Edge list of one Erdős–Rényi draw (two passes: count, then fill)."""
    m = 0
    for u in range(n):
        base = U64(u) * U64(n)
        for v in range(u + 1, n):
            h = _edge_hash(U64(root), base + U64(v))
            if np.float64(h >> U64(11)) * (2.0 ** -53) < p:
                m += 1
    out = np.empty((m, 2), np.int64)
    a = 0
    for u in range(n):
        base = U64(u) * U64(n)
        for v in range(u + 1, n):
            h = _edge_hash(U64(root), base + U64(v))
            if np.float64(h >> U64(11)) * (2.0 ** -53) < p:
                out[a, 0] = u
                out[a, 1] = v
                a += 1
    return out


@njit(inline="always")
def _sift_max_val(hs, start, size):
    root = start
    while True:
        child = 2 * root + 1
        if child >= size:
            break
        if child + 1 < size and hs[child + 1] > hs[child]:
            child += 1
        if hs[child] > hs[root]:
            hs[root], hs[child] = hs[child], hs[root]
            root = child
        else:
            break


@njit(cache=True, parallel=True)
def kth_score_minmax(n, k, roots):
    """Per trial: (min, max) over vertices of the k-th largest incident
    exponential(1) score.

    The k-th largest exponential score is the k-th smallest uniform variate
    under x = -log(u), so each row keeps a max-heap of the k smallest hashes.
    """
    T = roots.shape[0]
    out = np.empty((T, 2), np.float64)
    for t in prange(T):
        root = roots[t]
        hs = np.empty(k, np.uint64)
        lo = np.inf
        hi = -np.inf
        for i in range(n):
            size = 0
            for j in range(n):
                if j == i:
                    continue
                if i < j:
                    eid = U64(i) * U64(n) + U64(j)
                else:
                    eid = U64(j) * U64(n) + U64(i)
                h = _edge_hash(root, eid)
                if size < k:
                    hs[size] = h
                    size += 1
                    if size == k:
                        for s in range(k // 2 - 1, -1, -1):
                            _sift_max_val(hs, s, k)
                elif h < hs[0]:
                    hs[0] = h
                    _sift_max_val(hs, 0, k)
            u = (np.float64(hs[0] >> U64(11)) + 0.5) * (2.0 ** -53)
            x = -np.log(u)
            if x < lo:
                lo = x
            if x > hi:
                hi = x
        out[t, 0] = lo
        out[t, 1] = hi
    return out


@njit(inline="always")
def _contains(row, k, x):
    for a in range(k):
        if row[a] == x:
            return True
    return False


@njit(cache=True, parallel=True)
def rank_connection_counts(n, k, roots):
    """Per trial and preference rank r: number of vertices whose rank-r
    proposal is reciprocated (i.e. realized as a bilateral edge)."""
    T = roots.shape[0]
    out = np.zeros((T, k), np.int64)
    for t in prange(T):
        root = roots[t]
        ids = np.empty((n, k), np.int64)
        hs = np.empty(k, np.uint64)
        he = np.empty(k, np.uint64)
        hid = np.empty(k, np.int64)
        for i in range(n):
            _row_topk(n, k, i, root, hs, he, hid)
            _heapsort_desc(hs, he, hid, k)
            for a in range(k):
                ids[i, a] = hid[a]
        for i in range(n):
            for r in range(k):
                j = ids[i, r]
                if _contains(ids[j], k, i):
                    out[t, r] += 1
    return out


@njit(cache=True)
def multiset_permutation_hists(seq0, place, hist1, hist2):
    """Exhaustively enumerate multiset permutations of the typed sequence.

    For every permutation, increments hist1[m, z] for each prefix length m
    with z objects of type 0 among the first m, and hist2[code] where code is
    the mixed-radix encoding (by `place`) of the per-type counts observed
    before the first type-0 object.  seq0 must be sorted ascending.
    """
    a = seq0.copy()
    M = a.shape[0]
    while True:
        z = 0
        hist1[0, 0] += 1
        for pos in range(M):
            if a[pos] == 0:
                z += 1
            hist1[pos + 1, z] += 1
        code = 0
        for pos in range(M):
            ty = a[pos]
            if ty == 0:
                break
            code += place[ty - 1]
        hist2[code] += 1
        i = M - 2
        while i >= 0 and a[i] >= a[i + 1]:
            i -= 1
        if i < 0:
            return
        j = M - 1
        while a[j] <= a[i]:
            j -= 1
        a[i], a[j] = a[j], a[i]
        lo, hi = i + 1, M - 1
        while lo < hi:
            a[lo], a[hi] = a[hi], a[lo]
            lo += 1
            hi -= 1
