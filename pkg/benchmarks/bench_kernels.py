#!/usr/bin/env python3
"""Benchmark the compiled kernel backend against the pure-Python one.

Runs each kernel on representative workloads (shift closures and derived
relations on fuzzed lattices) and prints a per-kernel timing table. Invoke
from the repository root:

    python3 benchmarks/bench_kernels.py [--sizes 16,32,64] [--repeat 5]
"""

import argparse
import random
import time

import numpy as np

from radlat._kernels import pure

try:
    from radlat._kernels import _fast as fast
except ImportError:
    fast = None

from radlat.fuzz import bool_sublattice, random_relation


def make_workload(size_target, seed):
    rng = random.Random(seed)
    atoms = max(2, size_target.bit_length() - 1)
    best = None
    for _ in range(200):
        lat = bool_sublattice(rng, atoms, 2 * size_target, name="bench")
        if best is None or abs(lat.n - size_target) < abs(best.n - size_target):
            best = lat
        if best.n == size_target:
            break
    rel = random_relation(rng, best, close="h")
    return best, rel


def time_call(fn, *args, repeat):
    best = float("inf")
    for _ in range(repeat):
        start = time.perf_counter()
        fn(*args)
        best = min(best, time.perf_counter() - start)
    return best


def main():
    parser = argparse.ArgumentParser()
    parser.add_argument("--sizes", default="16,32,64")
    parser.add_argument("--repeat", type=int, default=5)
    args = parser.parse_args()
    sizes = [int(s) for s in args.sizes.split(",")]

    backends = [("pure", pure)] + ([("fast", fast)] if fast else [])
    if not fast:
        print("compiled backend unavailable; timing the pure backend only")

    kernels = [
        ("closure", lambda b, lat, rel: b.closure(rel.rel)),
        ("h_close", lambda b, lat, rel: b.h_close(rel.rel, lat.join)),
        ("h_violation", lambda b, lat, rel: b.h_violation(rel.rel, lat.leq, lat.join)),
        ("up_relation", lambda b, lat, rel: b.up_relation(rel.rel, lat.leq)),
        ("lo_relation", lambda b, lat, rel: b.lo_relation(rel.rel, lat.leq)),
        ("left_complement", lambda b, lat, rel: b.left_complement(rel.rel, lat.leq)),
        ("order_tables", lambda b, lat, rel: b.order_tables(lat.leq)),
    ]

    header = f"{'kernel':<18}{'n':>5}" + "".join(f"{name:>12}" for name, _ in backends)
    if fast:
        header += f"{'speedup':>10}"
    print(header)
    print("-" * len(header))
    for size in sizes:
        lat, rel = make_workload(size, seed=1234 + size)
        for kname, call in kernels:
            times = [time_call(call, backend, lat, rel, repeat=args.repeat) for _, backend in backends]
            row = f"{kname:<18}{lat.n:>5}" + "".join(f"{t * 1e3:>10.3f}ms" for t in times)
            if fast:
                row += f"{times[0] / times[1]:>9.1f}x"
            print(row)

    # spot-check agreement on the biggest workload
    if fast:
        lat, rel = make_workload(sizes[-1], seed=99)
        for kname, call in kernels:
            a, b = call(pure, lat, rel), call(fast, lat, rel)
            if not _same(a, b):
                raise SystemExit(f"backend disagreement in {kname}")
        print("\nbackends agree on the spot-check workload")


def _same(a, b):
    if isinstance(a, np.ndarray):
        return np.array_equal(a, b)
    if isinstance(a, tuple) and any(isinstance(x, np.ndarray) for x in a):
        return all(_same(x, y) for x, y in zip(a, b))
    return a == b


if __name__ == "__main__":
    main()
