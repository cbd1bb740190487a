#!/usr/bin/env python3
"""Benchmark the hot kernels under the JIT and pure-Python paths.

    python benchmarks/bench.py            # time the currently selected path
    python benchmarks/bench.py --compare  # run both paths in subprocesses

The two paths execute identical float operations, so outputs are
bit-identical; this script only measures speed.
"""

import argparse
import os
import subprocess
import sys
import time


def workloads():
    import numpy as np

    from bexp.beach import BeachConfig, fill_bits, new_generator
    from bexp.dynamics import bifurcation_scan, lyapunov
    from bexp.maps import CHAOS_THRESHOLD

    def bench_generate():
        state = new_generator(BeachConfig(seed=0.3))
        fill_bits(state, 1_000_000)

    def bench_lyapunov():
        for b in np.geomspace(CHAOS_THRESHOLD, 1e4, 8):
            lyapunov(float(b), 0.3, 10_000, 1_000)

    def bench_bifurcation():
        bifurcation_scan(1e-3, 0.1, 200, transient=1000, keep=200)

    return [
        ("generate 1e6 bits", bench_generate),
        ("lyapunov 8 x 11k iters", bench_lyapunov),
        ("bifurcation 200 x 1200 iters", bench_bifurcation),
    ]


def run_current():
    import bexp

    mode = "jit" if bexp.USING_NUMBA else "python"
    tasks = workloads()
    # one untimed warm-up pass so JIT compilation is not measured
    for _, fn in tasks:
        fn()
    print(f"kernel path: {mode}")
    for name, fn in tasks:
        t0 = time.perf_counter()
        fn()
        print(f"  {name:<30s} {time.perf_counter() - t0:8.3f} s")


def run_compare():
    for flag, label in (("1", "numba jit"), ("0", "pure python")):
        env = dict(os.environ, BEXP_NUMBA=flag)
        print(f"--- {label} ---", flush=True)
        subprocess.run([sys.executable, os.path.abspath(__file__)],
                       env=env, check=True)


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--compare", action="store_true",
                        help="benchmark both kernel paths")
    args = parser.parse_args()
    if args.compare:
        run_compare()
    else:
        run_current()


if __name__ == "__main__":
    main()
