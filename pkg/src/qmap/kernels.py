"""Hot accumulation kernels behind the traffic analyzer.

The two loops that scale with the op stream - placement replay with per-op
attribution, and the activity-raster fill - are JIT-compiled with numba.
Set QMAP_NUMBA=0 to select the fallback path (a plain-Python replay loop
and a vectorized numpy raster fill); QMAP_NUMBA=1 makes a missing numba an
error instead of a silent fallback. Both paths are exercised by the test
suite and compared by benchmarks/bench_kernels.py.
"""

import os

import numpy as np

IDLE, COMPUTE, COMMUNICATE = 0, 1, 2
STATE_CHARS = "ICM"  # idle / compute / coMmunicate

K_GATE1, K_GATE2, K_SWAP, K_TELEPORT, K_EXCHANGE = 0, 1, 2, 3, 4


def _replay_counts(kind, p, q, p2v, va, vb, tel, intra, swap_weight):
    # Sequential replay: p2v mutates to the final assignment; va/vb receive
    # the virtual qubit(s) each op touches (-1 = none); tel/intra accumulate
    # per-virtual teleport and intra-core op credit.
    for i in range(kind.shape[0]):
        k = kind[i]
        a = p[i]
        b = q[i]
        if k == K_GATE1:
            v = p2v[a]
            va[i] = v
            intra[v] += 1
        elif k == K_GATE2:
            u = p2v[a]
            w = p2v[b]
            va[i] = u
            vb[i] = w
            intra[u] += 1
            intra[w] += 1
        elif k == K_SWAP:
            u = p2v[a]
            w = p2v[b]
            va[i] = u
            vb[i] = w
            if u >= 0:
                intra[u] += swap_weight
            if w >= 0:
                intra[w] += swap_weight
            p2v[a] = w
            p2v[b] = u
        elif k == K_TELEPORT:
            u = p2v[a]
            va[i] = u
            tel[u] += 1
            p2v[b] = u
            p2v[a] = -1
        else:  # exchange: symmetric cross-core move, one teleport per state
            u = p2v[a]
            w = p2v[b]
            va[i] = u
            vb[i] = w
            tel[u] += 1
            tel[w] += 1
            p2v[a] = w
            p2v[b] = u


def _fill_raster_loops(start, dur, code, p, q, raster):
    for i in range(start.shape[0]):
        c = code[i]
        for t in range(start[i], start[i] + dur[i]):
            raster[t, p[i]] = c
            if q[i] >= 0:
                raster[t, q[i]] = c


def _fill_raster_numpy(start, dur, code, p, q, raster):
    if start.size == 0:
        return
    reps = np.repeat(np.arange(start.size), dur)
    offsets = np.arange(reps.size) - np.repeat(np.cumsum(dur) - dur, dur)
    ts = np.repeat(start, dur) + offsets
    raster[ts, p[reps]] = code[reps]
    second = q[reps] >= 0
    raster[ts[second], q[reps][second]] = code[reps][second]


def _pick_backend() -> str:
    flag = os.environ.get("QMAP_NUMBA", "auto").strip().lower()
    if flag in ("0", "false", "no", "off"):
        return "fallback"
    if flag in ("1", "true", "yes", "on"):
        import numba  # noqa: F401  (raises if unavailable)

        return "numba"
    try:
        import numba  # noqa: F401

        return "numba"
    except ImportError:
        return "fallback"


BACKEND = _pick_backend()

if BACKEND == "numba":
    from numba import njit

    _replay_counts_impl = njit(cache=True)(_replay_counts)
    _fill_raster_impl = njit(cache=True)(_fill_raster_loops)
else:
    _replay_counts_impl = _replay_counts
    _fill_raster_impl = _fill_raster_numpy


def replay_counts(kind, p, q, p2v0, n_virt: int, swap_weight: int):
    """Replay the op stream over the initial slot->virtual table.

    Returns (va, vb, teleports_per_virtual, intra_per_virtual, final_p2v).
    Inputs must come from a verified mapping; the kernel trusts them.
    """
    n = kind.shape[0]
    va = np.full(n, -1, dtype=np.int64)
    vb = np.full(n, -1, dtype=np.int64)
    tel = np.zeros(n_virt, dtype=np.int64)
    intra = np.zeros(n_virt, dtype=np.int64)
    p2v = np.asarray(p2v0, dtype=np.int64).copy()
    _replay_counts_impl(kind, p, q, p2v, va, vb, tel, intra, np.int64(swap_weight))
    return va, vb, tel, intra, p2v


def fill_raster(start, dur, code, p, q, depth: int, n_phys: int):
    """depth x n_phys int8 grid of IDLE/COMPUTE/COMMUNICATE cell states."""
    raster = np.zeros((depth, n_phys), dtype=np.int8)
    _fill_raster_impl(start, dur, code, p, q, raster)
    return raster
