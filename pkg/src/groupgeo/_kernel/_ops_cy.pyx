# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled kernel for the hot loops: free reduction, all-pairs BFS on the
ball graph, and the pairwise fellow-traveling defect reduction.

Contracts match ``_ops_py`` exactly; that module is the reference.
"""

import numpy as np

cimport numpy as cnp

cnp.import_array()

DEF UNREACHED = 255


def free_reduce(codes):
    cdef list inp = list(codes)
    cdef Py_ssize_t n = len(inp)
    cdef cnp.ndarray[cnp.int32_t, ndim=1] buf = np.empty(n, dtype=np.int32)
    cdef Py_ssize_t top = 0
    cdef int c
    for obj in inp:
        c = obj
        if top > 0 and buf[top - 1] == (c ^ 1):
            top -= 1
        else:
            buf[top] = c
            top += 1
    return [int(buf[i]) for i in range(top)]


def all_pairs_bfs(indptr, nbrs, Py_ssize_t n):
    cdef cnp.ndarray[cnp.int64_t, ndim=1] ip = np.ascontiguousarray(indptr, dtype=np.int64)
    cdef cnp.ndarray[cnp.int32_t, ndim=1] nb = np.ascontiguousarray(nbrs, dtype=np.int32)
    cdef cnp.ndarray[cnp.uint8_t, ndim=2] dist = np.full((n, n), UNREACHED, dtype=np.uint8)
    cdef cnp.ndarray[cnp.int32_t, ndim=1] queue = np.empty(n, dtype=np.int32)
    cdef Py_ssize_t src, head, tail, u, v
    cdef cnp.int64_t j
    cdef int d
    for src in range(n):
        dist[src, src] = 0
        queue[0] = <cnp.int32_t> src
        head = 0
        tail = 1
        while head < tail:
            u = queue[head]
            head += 1
            d = dist[src, u] + 1
            if d >= UNREACHED:
                raise ValueError("graph diameter exceeds uint8 range")
            for j in range(ip[u], ip[u + 1]):
                v = nb[j]
                if dist[src, v] == UNREACHED:
                    dist[src, v] = <cnp.uint8_t> d
                    queue[tail] = <cnp.int32_t> v
                    tail += 1
    return dist


def max_bounded_defect(paths, dist, chunk=256):
    # chunk is accepted for signature compatibility; the loop is flat here.
    cdef cnp.ndarray[cnp.int32_t, ndim=2] P = np.ascontiguousarray(paths, dtype=np.int32)
    cdef cnp.ndarray[cnp.uint8_t, ndim=2] D = np.ascontiguousarray(dist, dtype=np.uint8)
    cdef Py_ssize_t n_lines = P.shape[0]
    cdef Py_ssize_t T = P.shape[1]
    cdef Py_ssize_t a, b, t
    cdef Py_ssize_t best_a = 0, best_b = 0
    cdef int best = -(1 << 30)
    cdef int m, d, defect
    for a in range(n_lines):
        for b in range(n_lines):
            m = -1
            for t in range(T):
                d = D[P[a, t], P[b, t]]
                if d > m:
                    m = d
            defect = m - D[P[a, T - 1], P[b, T - 1]]
            if defect > best:
                best = defect
                best_a = a
                best_b = b
    return best, int(best_a), int(best_b)
