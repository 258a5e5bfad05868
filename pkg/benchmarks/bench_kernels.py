#!/usr/bin/env python3
"""Benchmark the jitted analysis kernels against the fallback path.

Builds a large synthetic op stream (gates and swaps over a 64-slot machine,
the shape of a deep mapped circuit) and times placement replay and raster
fill under both backends. The active package backend is whatever QMAP_NUMBA
selected at import; both implementations are called directly here so one
process can compare them.

    python benchmarks/bench_kernels.py --ops 2000000
"""

import argparse
import time

import numpy as np

from qmap import kernels


def synth_ops(n_ops: int, n_phys: int, seed: int):
    rng = np.random.default_rng(seed)
    kind = rng.choice(
        np.array([kernels.K_GATE1, kernels.K_GATE2, kernels.K_SWAP], dtype=np.int8),
        size=n_ops,
        p=[0.3, 0.5, 0.2],
    ).astype(np.int8)
    p = rng.integers(0, n_phys, size=n_ops, dtype=np.int64)
    shift = rng.integers(1, n_phys, size=n_ops, dtype=np.int64)
    q = np.where(kind == kernels.K_GATE1, -1, (p + shift) % n_phys).astype(np.int64)
    dur = rng.integers(1, 3, size=n_ops, dtype=np.int64)
    start = np.cumsum(dur) - dur  # sequential schedule: nothing overlaps
    code = np.where(kind == kernels.K_SWAP, kernels.COMMUNICATE, kernels.COMPUTE).astype(np.int8)
    return kind, p, q, start, dur, code


def timeit(fn, repeats=3):
    best = float("inf")
    for _ in range(repeats):
        t0 = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - t0)
    return best


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--ops", type=int, default=2_000_000)
    parser.add_argument("--phys", type=int, default=64)
    parser.add_argument("--seed", type=int, default=0)
    args = parser.parse_args()

    kind, p, q, start, dur, code = synth_ops(args.ops, args.phys, args.seed)
    depth = int(start[-1] + dur[-1]) if args.ops else 0
    n_virt = args.phys

    def run_replay(impl):
        p2v = np.arange(args.phys, dtype=np.int64)
        n = kind.shape[0]
        impl(
            kind, p, q, p2v,
            np.full(n, -1, np.int64), np.full(n, -1, np.int64),
            np.zeros(n_virt, np.int64), np.zeros(n_virt, np.int64),
            np.int64(3),
        )

    def run_raster(impl):
        raster = np.zeros((depth, args.phys), dtype=np.int8)
        impl(start, dur, code, p, q, raster)

    rows = [("kernel", "fallback", "numba", "speedup")]
    if kernels.BACKEND == "numba":
        run_replay(kernels._replay_counts_impl)  # trigger compilation outside timing
        run_raster(kernels._fill_raster_impl)
        t_py = timeit(lambda: run_replay(kernels._replay_counts))
        t_nb = timeit(lambda: run_replay(kernels._replay_counts_impl))
        rows.append(("replay_counts", f"{t_py:.3f}s", f"{t_nb:.3f}s", f"{t_py / t_nb:.0f}x"))
        t_np = timeit(lambda: run_raster(kernels._fill_raster_numpy))
        t_nb = timeit(lambda: run_raster(kernels._fill_raster_impl))
        rows.append(("fill_raster", f"{t_np:.3f}s", f"{t_nb:.3f}s", f"{t_np / t_nb:.1f}x"))
    else:
        t_py = timeit(lambda: run_replay(kernels._replay_counts))
        rows.append(("replay_counts", f"{t_py:.3f}s", "n/a", "-"))
        t_np = timeit(lambda: run_raster(kernels._fill_raster_numpy))
        rows.append(("fill_raster", f"{t_np:.3f}s", "n/a", "-"))

    print(f"backend={kernels.BACKEND} ops={args.ops} phys={args.phys} depth={depth}")
    for row in rows:
        print(f"{row[0]:<16}{row[1]:>12}{row[2]:>12}{row[3]:>10}")


if __name__ == "__main__":
    main()
