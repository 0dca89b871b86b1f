# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled breadth-first-search kernel over CSR adjacency.

Level-synchronous multi-source BFS with deterministic least-id parent
assignment and an optional depth cap.  The per-level sort keeps frontier
processing order independent of discovery order, which pins down parents
and therefore every shortest path the rest of the library extracts.
"""

from libc.stdint cimport int32_t
from libc.stdlib cimport free, malloc, qsort


cdef int _cmp_int32(const void *a, const void *b) noexcept nogil:
    cdef int32_t x = (<const int32_t *> a)[0]
    cdef int32_t y = (<const int32_t *> b)[0]
    if x < y:
        return -1
    if x > y:
        return 1
    return 0


def bfs_csr(const int32_t[::1] indptr,
            const int32_t[::1] indices,
            const int32_t[::1] sources,
            int cap,
            int32_t[::1] dist,
            int32_t[::1] parent):
    """Fill ``dist``/``parent`` from ``sources`` and return the visit count.

    Unvisited vertices end with -1 in both arrays; sources get dist 0 and
    parent -1.  Each visited vertex's parent is the least-id vertex on the
    previous level adjacent to it.  ``cap < 0`` means unlimited depth,
    otherwise vertices farther than ``cap`` stay unvisited.
    """
    cdef Py_ssize_t n = dist.shape[0]
    cdef Py_ssize_t i, j, cur_len, nxt_len, reached
    cdef int32_t u, w, d
    cdef int32_t *cur
    cdef int32_t *nxt
    cdef int32_t *tmp

    for i in range(n):
        dist[i] = -1
        parent[i] = -1
    if n == 0:
        return 0

    cur = <int32_t *> malloc(n * sizeof(int32_t))
    nxt = <int32_t *> malloc(n * sizeof(int32_t))
    if cur == NULL or nxt == NULL:
        free(cur)
        free(nxt)
        raise MemoryError()
    try:
        cur_len = 0
        for i in range(sources.shape[0]):
            u = sources[i]
            if dist[u] < 0:
                dist[u] = 0
                cur[cur_len] = u
                cur_len += 1
        qsort(cur, cur_len, sizeof(int32_t), _cmp_int32)
        reached = cur_len
        d = 0
        while cur_len > 0 and (cap < 0 or d < cap):
            nxt_len = 0
            for i in range(cur_len):
                u = cur[i]
                for j in range(indptr[u], indptr[u + 1]):
                    w = indices[j]
                    if dist[w] < 0:
                        dist[w] = d + 1
                        parent[w] = u
                        nxt[nxt_len] = w
                        nxt_len += 1
            qsort(nxt, nxt_len, sizeof(int32_t), _cmp_int32)
            tmp = cur
            cur = nxt
            nxt = tmp
            cur_len = nxt_len
            d += 1
            reached += nxt_len
        return reached
    finally:
        free(cur)
        free(nxt)
