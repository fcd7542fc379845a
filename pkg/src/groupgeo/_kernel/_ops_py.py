"""Pure-Python / numpy fallback for the compiled kernel.

Same contracts as ``_ops_cy``; see that module for the authoritative
descriptions.  These versions are the reference implementations the compiled
kernel is tested against.
"""

from __future__ import annotations

import numpy as np

UNREACHED = 255


def free_reduce(codes):
    """Free reduction over letter codes (2*gen for a generator, 2*gen+1 for
    its inverse).  Returns the reduced code list."""
    out = []
    for c in codes:
        if out and out[-1] == c ^ 1:
            out.pop()
        else:
            out.append(c)
    return out


def all_pairs_bfs(indptr, nbrs, n):
    """All-pairs BFS distances on an unweighted graph in CSR form.

    Returns a uint8 matrix; unreachable pairs hold 255.  Distances above 254
    are not representable and raise.
    """
    indptr = np.asarray(indptr, dtype=np.int64)
    nbrs = np.asarray(nbrs, dtype=np.int32)
    dist = np.full((n, n), UNREACHED, dtype=np.uint8)
    for src in range(n):
        row = dist[src]
        row[src] = 0
        frontier = [src]
        d = 0
        while frontier:
            d += 1
            if d >= UNREACHED:
                raise ValueError("graph diameter exceeds uint8 range")
            nxt = []
            for u in frontier:
                for v in nbrs[indptr[u]:indptr[u + 1]]:
                    if row[v] == UNREACHED:
                        row[v] = d
                        nxt.append(v)
            frontier = nxt
    return dist


def max_bounded_defect(paths, dist, chunk=256):
    """Max fellow-traveling defect over all pairs of combing lines.

    ``paths`` is an int32 matrix, one row per combing line: ``paths[a, t]`` is
    the vertex index of line ``a`` at time ``t``, padded with the endpoint, so
    the final column holds the endpoints.  ``dist`` is the vertex distance
    matrix.  Returns ``(defect, a, b)`` where ``defect`` is
    ``max over a, b, t of d(p_a(t), p_b(t)) - d(end_a, end_b)`` and (a, b) is
    the lexicographically least line pair achieving it.
    """
    paths = np.asarray(paths, dtype=np.int64)
    dist_i16 = np.asarray(dist, dtype=np.int16)
    n_lines, T = paths.shape
    ends = paths[:, -1]
    best = -(1 << 30)
    best_a = best_b = 0
    for start in range(0, n_lines, chunk):
        rows = paths[start:start + chunk]
        row_ends = ends[start:start + chunk]
        end_d = dist_i16[row_ends[:, None], ends[None, :]]
        running = np.full(end_d.shape, -(1 << 14), dtype=np.int16)
        for t in range(T):
            np.maximum(running, dist_i16[rows[:, t][:, None], paths[:, t][None, :]], out=running)
        defect = running - end_d
        flat = int(defect.argmax())
        val = int(defect.flat[flat])
        if val > best:
            best = val
            best_a = start + flat // defect.shape[1]
            best_b = flat % defect.shape[1]
    return best, best_a, best_b
