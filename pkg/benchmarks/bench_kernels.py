#!/usr/bin/env python3
"""Time the numba kernels against their numpy fallbacks.

Usage:
    python benchmarks/bench_kernels.py [--sizes 500 1000 2000] [--repeat 5]

Both implementations are called directly from ``cubicity._kernels`` on the
same inputs, after one warm-up call (which absorbs JIT compilation), and the
outputs are checked for equality before timing.  End-to-end builder timings
use whichever backend ``CUBICITY_PURE_NUMPY`` selects, so run the script
twice (with the flag set to 1 and unset) to compare those.
"""

from __future__ import annotations

import argparse
import time

import numpy as np

from cubicity import _kernels, build_det, build_rand
from cubicity.builders import derive_seed, draw_permutation_and_partition
from cubicity.graph import gnp_graph, non_edges, path_graph
from cubicity.intervals import CubeRepresentation, construct_m


def best_of(fn, repeat):
    best = float("inf")
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - t0)
    return best


def kernel_cases(n):
    g = gnp_graph(n, 8.0 / n, seed=1)
    rng = np.random.default_rng(n)
    swaps = rng.integers(0, np.arange(1, n + 1))
    pi, part = draw_permutation_and_partition(n, 1)
    L = np.int64(n)
    dims = tuple(
        construct_m(g, *draw_permutation_and_partition(n, derive_seed(3, i))) for i in range(40)
    )
    rep = CubeRepresentation(n, dims)
    lefts, lengths = rep.lefts_matrix(), rep.lengths()
    ne = non_edges(g)
    e = g.edge_array()
    return {
        "fisher_yates": (swaps,),
        "m_lefts": (g.indptr, g.indices, pi.values, part.in_a, L),
        "separated_mask": (dims[0].left, L, ne.u, ne.v),
        "surviving_pairs": (lefts, lengths),
        "edge_separation": (lefts, lengths, e[:, 0], e[:, 1]),
    }


def same(a, b):
    if isinstance(a, tuple):
        return all(np.array_equal(x, y) for x, y in zip(a, b))
    return np.array_equal(a, b)


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--sizes", type=int, nargs="+", default=[500, 1000, 2000])
    ap.add_argument("--repeat", type=int, default=5)
    args = ap.parse_args()

    print(f"active backend: {_kernels.BACKEND}")
    if not _kernels.HAVE_NUMBA:
        print("numba unavailable (or disabled); kernel comparison skipped")
    else:
        print(f"{'kernel':<18}{'n':>7}{'numpy ms':>12}{'numba ms':>12}{'speedup':>10}")
        for n in args.sizes:
            for name, call_args in kernel_cases(n).items():
                f_np = getattr(_kernels, f"{name}_np")
                f_nb = getattr(_kernels, f"{name}_nb")
                assert same(f_np(*call_args), f_nb(*call_args)), name
                t_np = best_of(lambda: f_np(*call_args), args.repeat)
                t_nb = best_of(lambda: f_nb(*call_args), args.repeat)
                print(f"{name:<18}{n:>7}{t_np * 1e3:>12.3f}{t_nb * 1e3:>12.3f}{t_np / t_nb:>10.1f}x")

    print()
    print(f"builders ({_kernels.BACKEND})")
    build_rand(path_graph(50))
    for n in args.sizes:
        g = path_graph(n)
        t = best_of(lambda: build_rand(g, "whp", seed=0), max(1, args.repeat // 2))
        print(f"  build_rand whp  P{n:<6} {t:8.3f}s")
    for n in (64, 128):
        g = gnp_graph(n, 0.1, seed=1)
        t = best_of(lambda: build_det(g), max(1, args.repeat // 2))
        label = f"G({n},0.1)"
        print(f"  build_det       {label:<7} {t:8.3f}s")


if __name__ == "__main__":
    main()
