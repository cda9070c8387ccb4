#!/usr/bin/env python3
"""Benchmark the jitted kernels against the pure NumPy/Python path.

Times graph growth (both schemes) and the network-law forward roll, and
checks that both paths produce identical output. Run from the repo root:

    python3 benchmarks/bench_paths.py --t 20000 --reps 3
"""

import argparse
import time

import numpy as np

from bagrowth import _kernels


def timeit(fn, reps):
    best = float("inf")
    for _ in range(reps):
        t0 = time.perf_counter()
        out = fn()
        best = min(best, time.perf_counter() - t0)
    return best, out


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--t", type=int, default=20_000)
    ap.add_argument("--m", type=int, default=2)
    ap.add_argument("--m0", type=int, default=5)
    ap.add_argument("--reps", type=int, default=3)
    args = ap.parse_args()

    if not _kernels.NUMBA_ENABLED:
        print("numba disabled or unavailable; nothing to compare against")
        return

    rng = np.random.default_rng(0)
    uniforms = rng.random((args.t, args.m))
    d = args.m0 * (args.m0 - 1) / args.m

    jit_grow = _kernels.grow
    jit_grow(args.m0, args.m, 10, uniforms[:10], False)  # warm the JIT

    print(f"growth m0={args.m0} m={args.m} t={args.t}")
    for name, sequential, t_eff in (("holme-kim", False, args.t),
                                    ("sequential", True, min(args.t, 3000))):
        u = uniforms[:t_eff]
        jt, (je, jd) = timeit(lambda: jit_grow(args.m0, args.m, t_eff, u, sequential),
                              args.reps)
        pt, (pe, pd) = timeit(
            lambda: _kernels._grow_impl(args.m0, args.m, t_eff, u, sequential), 1)
        same = np.array_equal(je, pe) and np.array_equal(jd, pd)
        print(f"  {name:10s} t={t_eff:6d}  numba {jt * 1e3:9.2f} ms   "
              f"python {pt * 1e3:9.2f} ms   x{pt / jt:7.1f}   identical={same}")

    _kernels.mixture_roll(args.m, args.m0, d, 10)  # warm the JIT
    roll_t = args.t
    jt, (jn, ji) = timeit(
        lambda: _kernels.mixture_roll(args.m, args.m0, d, roll_t), args.reps)
    pt, (pn, pi) = timeit(
        lambda: _kernels._mixture_roll_numpy(args.m, args.m0, d, roll_t), args.reps)
    same = np.array_equal(jn, pn) and np.array_equal(ji, pi)
    print(f"network-law roll t={roll_t}: numba {jt * 1e3:9.2f} ms   "
          f"numpy {pt * 1e3:9.2f} ms   x{pt / jt:5.1f}   identical={same}")


if __name__ == "__main__":
    main()
