"""Benchmark: compiled kernel vs the numpy/pure-Python fallback.

Runs the three hot operations on realistic workloads (free-group reductions,
the all-pairs distance matrix of a free-group ball, and the full
fellow-traveling defect reduction) and prints a timing table.

Usage: python benchmarks/bench_kernel.py [--radius N]
"""

from __future__ import annotations

import argparse
import random
import time

from groupgeo import cayley
from groupgeo._kernel import HAVE_COMPILED, _ops_py

try:
    from groupgeo._kernel import _ops_cy
except ImportError:
    _ops_cy = None

from groupgeo.experiments import get_group


def _time(fn, repeats: int = 3) -> float:
    best = float("inf")
    for _ in range(repeats):
        t0 = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - t0)
    return best


def main() -> None:
    parser = argparse.ArgumentParser()
    parser.add_argument("--radius", type=int, default=7,
                        help="free-group ball radius for the graph workloads")
    args = parser.parse_args()

    if _ops_cy is None:
        print("compiled kernel unavailable; only the fallback will run")
    print(f"HAVE_COMPILED={HAVE_COMPILED}")

    rng = random.Random(0)
    words = [[rng.randrange(4) for _ in range(2000)] for _ in range(200)]

    G = get_group("free2")
    idx = cayley.ball(G, args.radius)
    indptr, nbrs = idx.graph_csr()
    n = len(idx)
    paths = idx.prefix_matrix()
    print(f"ball radius {args.radius}: {n} vertices")

    rows = []

    def bench(name, py_fn, cy_fn):
        t_py = _time(py_fn)
        t_cy = _time(cy_fn) if cy_fn else float("nan")
        speedup = t_py / t_cy if cy_fn else float("nan")
        rows.append((name, t_py, t_cy, speedup))

    bench(
        "free_reduce (200 x 2000 letters)",
        lambda: [_ops_py.free_reduce(w) for w in words],
        (lambda: [_ops_cy.free_reduce(w) for w in words]) if _ops_cy else None,
    )
    bench(
        f"all_pairs_bfs ({n} vertices)",
        lambda: _ops_py.all_pairs_bfs(indptr, nbrs, n),
        (lambda: _ops_cy.all_pairs_bfs(indptr, nbrs, n)) if _ops_cy else None,
    )
    dist = (_ops_cy or _ops_py).all_pairs_bfs(indptr, nbrs, n)
    bench(
        f"max_bounded_defect ({n} lines)",
        lambda: _ops_py.max_bounded_defect(paths, dist),
        (lambda: _ops_cy.max_bounded_defect(paths, dist)) if _ops_cy else None,
    )

    print(f"{'operation':45} {'fallback':>10} {'compiled':>10} {'speedup':>8}")
    for name, t_py, t_cy, speedup in rows:
        print(f"{name:45} {t_py:9.3f}s {t_cy:9.3f}s {speedup:7.1f}x")


if __name__ == "__main__":
    main()
