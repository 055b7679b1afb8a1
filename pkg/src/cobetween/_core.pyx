# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True, initializedcheck=False
"""Compiled per-source pipeline: DAG build, dependency sweep, pair DFS.

Each call processes a batch of sources into caller-owned accumulators so
that worker threads never share mutable state.
"""

from libc.math cimport INFINITY, fabs
from libc.stdint cimport int64_t
from libc.stdlib cimport malloc, free
from libcpp.pair cimport pair
from libcpp.queue cimport priority_queue
from libcpp.unordered_map cimport unordered_map

import numpy as np

ctypedef pair[double, int64_t] heap_item


cdef struct Work:
    int64_t n
    double* dist
    double* sigma
    double* delta
    int64_t* order
    int64_t* rank
    int64_t* cptr
    int64_t* cidx
    int64_t* fill
    int64_t* vstack
    int64_t* pstack
    int64_t n_order


cdef int _alloc(Work* wk, int64_t n, int64_t nnz) noexcept nogil:
    wk.n = n
    wk.dist = <double*> malloc(n * sizeof(double))
    wk.sigma = <double*> malloc(n * sizeof(double))
    wk.delta = <double*> malloc(n * sizeof(double))
    wk.order = <int64_t*> malloc(n * sizeof(int64_t))
    wk.rank = <int64_t*> malloc(n * sizeof(int64_t))
    wk.cptr = <int64_t*> malloc((n + 1) * sizeof(int64_t))
    wk.cidx = <int64_t*> malloc((nnz + 1) * sizeof(int64_t))
    wk.fill = <int64_t*> malloc(n * sizeof(int64_t))
    wk.vstack = <int64_t*> malloc((n + 1) * sizeof(int64_t))
    wk.pstack = <int64_t*> malloc((n + 1) * sizeof(int64_t))
    if (wk.dist == NULL or wk.sigma == NULL or wk.delta == NULL or wk.order == NULL
            or wk.rank == NULL or wk.cptr == NULL or wk.cidx == NULL or wk.fill == NULL
            or wk.vstack == NULL or wk.pstack == NULL):
        return -1
    return 0


cdef void _release(Work* wk) noexcept nogil:
    free(wk.dist); free(wk.sigma); free(wk.delta); free(wk.order); free(wk.rank)
    free(wk.cptr); free(wk.cidx); free(wk.fill); free(wk.vstack); free(wk.pstack)


cdef inline bint _is_arc(Work* wk, int64_t v, int64_t w, double wt, bint weighted,
                         double tol) noexcept nogil:
    # v -> w is a DAG arc; v, w both reachable
    if weighted:
        return wk.rank[v] < wk.rank[w] and fabs(wk.dist[v] + wt - wk.dist[w]) <= tol
    return wk.dist[w] == wk.dist[v] + 1.0


cdef void _build_dag(Work* wk, const int64_t* indptr, const int64_t* indices,
                     const double* wts, bint weighted, double tol, int64_t s) noexcept nogil:
    cdef int64_t n = wk.n, i, j, v, w, head = 0, tail = 0, k
    cdef double d
    cdef priority_queue[heap_item] heap
    cdef heap_item top
    for i in range(n):
        wk.dist[i] = INFINITY
        wk.sigma[i] = 0.0
        wk.delta[i] = 0.0
        wk.rank[i] = n
    wk.dist[s] = 0.0
    if not weighted:
        wk.order[tail] = s
        tail += 1
        while head < tail:
            v = wk.order[head]
            head += 1
            for j in range(indptr[v], indptr[v + 1]):
                w = indices[j]
                if wk.dist[w] == INFINITY:
                    wk.dist[w] = wk.dist[v] + 1.0
                    wk.order[tail] = w
                    tail += 1
    else:
        heap.push(heap_item(-0.0, s))
        while not heap.empty():
            top = heap.top()
            heap.pop()
            v = top.second
            d = -top.first
            if wk.rank[v] < n or d > wk.dist[v]:
                continue
            wk.rank[v] = tail
            wk.order[tail] = v
            tail += 1
            for j in range(indptr[v], indptr[v + 1]):
                w = indices[j]
                if d + wts[j] < wk.dist[w]:
                    wk.dist[w] = d + wts[j]
                    heap.push(heap_item(-(d + wts[j]), w))
    wk.n_order = tail
    for i in range(tail):
        wk.rank[wk.order[i]] = i
    # sigma in settle order; count children
    for i in range(n + 1):
        wk.cptr[i] = 0
    wk.sigma[s] = 1.0
    for i in range(1, tail):
        w = wk.order[i]
        for j in range(indptr[w], indptr[w + 1]):
            v = indices[j]
            if wk.rank[v] < n and _is_arc(wk, v, w, wts[j], weighted, tol):
                wk.sigma[w] += wk.sigma[v]
                wk.cptr[v + 1] += 1
    for i in range(n):
        wk.cptr[i + 1] += wk.cptr[i]
        wk.fill[i] = wk.cptr[i]
    for i in range(1, tail):
        w = wk.order[i]
        for j in range(indptr[w], indptr[w + 1]):
            v = indices[j]
            if wk.rank[v] < n and _is_arc(wk, v, w, wts[j], weighted, tol):
                k = wk.fill[v]
                wk.cidx[k] = w
                wk.fill[v] = k + 1


cdef void _dependencies(Work* wk) noexcept nogil:
    cdef int64_t i, j, v, w
    cdef double acc, sv
    for i in range(wk.n_order - 1, -1, -1):
        v = wk.order[i]
        sv = wk.sigma[v]
        acc = 0.0
        for j in range(wk.cptr[v], wk.cptr[v + 1]):
            w = wk.cidx[j]
            acc += sv / wk.sigma[w] * (1.0 + wk.delta[w])
        wk.delta[v] = acc


cdef void _pairs_dense(Work* wk, int64_t s, double* mat) noexcept nogil:
    # vstack[0] is the source; vstack[1..top] are interior ancestors
    cdef int64_t n = wk.n, top = 0, v, w, i, u, j
    cdef double val
    wk.vstack[0] = s
    wk.pstack[0] = wk.cptr[s]
    while top >= 0:
        v = wk.vstack[top]
        j = wk.pstack[top]
        if j == wk.cptr[v + 1]:
            top -= 1
            continue
        wk.pstack[top] = j + 1
        w = wk.cidx[j]
        if wk.delta[w] > 0.0:
            val = wk.delta[w] / wk.sigma[w]
            for i in range(1, top + 1):
                u = wk.vstack[i]
                if u < w:
                    mat[u * n + w] += val
                else:
                    mat[w * n + u] += val
            top += 1
            wk.vstack[top] = w
            wk.pstack[top] = wk.cptr[w]


cdef void _pairs_hashed(Work* wk, int64_t s, unordered_map[int64_t, double]* acc) noexcept nogil:
    cdef int64_t top = 0, v, w, i, u, j
    cdef double val
    wk.vstack[0] = s
    wk.pstack[0] = wk.cptr[s]
    while top >= 0:
        v = wk.vstack[top]
        j = wk.pstack[top]
        if j == wk.cptr[v + 1]:
            top -= 1
            continue
        wk.pstack[top] = j + 1
        w = wk.cidx[j]
        if wk.delta[w] > 0.0:
            val = wk.delta[w] / wk.sigma[w]
            for i in range(1, top + 1):
                u = wk.vstack[i]
                if u < w:
                    acc[0][(u << 32) | w] += val
                else:
                    acc[0][(w << 32) | u] += val
            top += 1
            wk.vstack[top] = w
            wk.pstack[top] = wk.cptr[w]


def run_sources(const int64_t[::1] indptr, const int64_t[::1] indices,
                const double[::1] weights, bint weighted, double tol,
                const int64_t[::1] sources, double[::1] betweenness,
                double[:, ::1] dense=None):
    """Run the three stages for every vertex in ``sources``.

    Raw (ordered-pair) dependency sums are added into ``betweenness``.
    Pair contributions go to ``dense`` (upper triangle) when it is given;
    otherwise they are collected in a hash map and returned as
    ``(keys, values)`` arrays with keys packed as ``(u << 32) | v``, u < v.
    """
    cdef int64_t n = indptr.shape[0] - 1
    cdef int64_t nnz = indices.shape[0]
    cdef int64_t k, s, i, v
    cdef Work wk
    cdef unordered_map[int64_t, double] acc
    cdef bint use_dense = dense is not None
    cdef double* mat = NULL
    if use_dense:
        if dense.shape[0] != n or dense.shape[1] != n:
            raise ValueError("dense accumulator must be n x n")
        mat = &dense[0, 0] if n > 0 else NULL
    if n == 0:
        return None if use_dense else (np.empty(0, np.int64), np.empty(0, np.float64))
    if _alloc(&wk, n, nnz) != 0:
        _release(&wk)
        raise MemoryError()
    try:
        with nogil:
            for k in range(sources.shape[0]):
                s = sources[k]
                _build_dag(&wk, &indptr[0], &indices[0] if nnz else NULL,
                           &weights[0] if nnz else NULL, weighted, tol, s)
                _dependencies(&wk)
                for i in range(1, wk.n_order):
                    v = wk.order[i]
                    betweenness[v] += wk.delta[v]
                if use_dense:
                    _pairs_dense(&wk, s, mat)
                else:
                    _pairs_hashed(&wk, s, &acc)
    finally:
        _release(&wk)
    if use_dense:
        return None
    keys = np.empty(acc.size(), np.int64)
    vals = np.empty(acc.size(), np.float64)
    cdef int64_t[::1] kv = keys
    cdef double[::1] vv = vals
    i = 0
    for item in acc:
        kv[i] = item.first
        vv[i] = item.second
        i += 1
    order = np.argsort(keys, kind="stable")
    return keys[order], vals[order]
