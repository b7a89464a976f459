"""Benchmark the compiled kernels against the pure-numpy fallback.

Runs the xoshiro256++ bulk generator and the batched simplex maps under both
backends, checks the outputs agree, and prints timings.

    python3 benchmarks/bench_kernels.py [--count 2000000] [--dim 8] [--reps 5]

Backend selection normally follows the REPARAM_KERNELS environment variable
(auto | numba | numpy); here both code paths are timed directly.
"""

import argparse
import time

import numpy as np

from reparam import _kernels as k
from reparam.stat_oracles import Rng


def _best_of(fn, reps):
    best = float("inf")
    for _ in range(reps):
        t0 = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - t0)
    return best


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--count", type=int, default=2_000_000)
    ap.add_argument("--dim", type=int, default=8)
    ap.add_argument("--reps", type=int, default=5)
    args = ap.parse_args()

    have_numba = k._fill_uint64_nb is not None
    print(f"active backend: {k.BACKEND}")
    if not have_numba:
        print("numba unavailable; timing the numpy/python paths only")

    rows = []

    # raw uint64 stream
    out_py = np.empty(args.count, dtype=np.uint64)
    t_py = _best_of(lambda: k._fill_uint64_py(k.seed_state(0), out_py), args.reps)
    t_nb = float("nan")
    if have_numba:
        out_nb = np.empty(args.count, dtype=np.uint64)
        k._fill_uint64_nb(k.seed_state(0), out_nb)  # warm the JIT cache
        t_nb = _best_of(lambda: k._fill_uint64_nb(k.seed_state(0), out_nb), args.reps)
        k._fill_uint64_py(k.seed_state(0), out_py)
        assert np.array_equal(out_py, out_nb), "uint64 streams diverge"
    rows.append(("fill_uint64", t_py, t_nb))

    # batched simplex forward / inverse
    rng = Rng(0)
    x = rng.logistic((max(1, args.count // args.dim), args.dim))
    w_np = k._simplex_forward_np(x)
    t_py = _best_of(lambda: k._simplex_forward_np(x), args.reps)
    t_nb = float("nan")
    if have_numba:
        out = np.empty((x.shape[0], args.dim + 1))
        k._simplex_forward_nb(x, out)
        t_nb = _best_of(lambda: k._simplex_forward_nb(x, out), args.reps)
        assert np.max(np.abs(out - w_np)) < 1e-15, "simplex forward backends diverge"
    rows.append(("simplex_forward", t_py, t_nb))

    x_np = k._simplex_inverse_np(w_np)
    t_py = _best_of(lambda: k._simplex_inverse_np(w_np), args.reps)
    t_nb = float("nan")
    if have_numba:
        out = np.empty((w_np.shape[0], args.dim))
        k._simplex_inverse_nb(w_np, out)
        t_nb = _best_of(lambda: k._simplex_inverse_nb(w_np, out), args.reps)
        assert np.max(np.abs(out - x_np)) < 1e-12, "simplex inverse backends diverge"
    rows.append(("simplex_inverse", t_py, t_nb))

    print(f"{'kernel':<16} {'numpy (s)':>10} {'numba (s)':>10} {'speedup':>8}")
    for name, a, b in rows:
        speed = f"{a / b:7.1f}x" if b == b else "     n/a"
        print(f"{name:<16} {a:>10.4f} {b:>10.4f} {speed}")


if __name__ == "__main__":
    main()
