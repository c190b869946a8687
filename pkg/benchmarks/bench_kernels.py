#!/usr/bin/env python3
"""Benchmark the compiled search kernels against the pure-Python fallback.

Times the two hot oracle loops on representative instances:

* exhaustive 2-factor enumeration (permutation pairs), where proper Latin
  colorings are the worst case because nothing prunes;
* the depth-first PC cycle search, swept over every (vertex, length) cell.

Usage: python benchmarks/bench_kernels.py [--enum-n 6] [--dfs-n 8] [--repeat 3]
"""

import argparse
import random
import time

from pcfactor._kernels import implementations
from pcfactor.gen import latin_graph


def best_of(fn, repeat):
    times = []
    for _ in range(repeat):
        start = time.perf_counter()
        fn()
        times.append(time.perf_counter() - start)
    return min(times)


def random_rows(n, q, seed):
    rng = random.Random(seed)
    return [[rng.randrange(q) for _ in range(n)] for _ in range(n)]


def workloads(enum_n, dfs_n):
    latin_enum = latin_graph(enum_n).rows
    rand_enum = random_rows(enum_n, enum_n - 1, seed=7)
    dfs_rows = latin_graph(dfs_n).rows

    def enum_latin(impl):
        impl.enumerate_two_factor_keys(latin_enum, 3)

    def enum_random(impl):
        impl.enumerate_two_factor_keys(rand_enum, 3)

    def dfs_sweep(impl):
        for side in (0, 1):
            for idx in range(dfs_n):
                for k in range(4, 2 * dfs_n + 1, 2):
                    impl.find_pc_cycle(dfs_rows, side, idx, k)

    return [
        (f"enumerate 2-factors, Latin n={enum_n}", enum_latin),
        (f"enumerate 2-factors, random n={enum_n}", enum_random),
        (f"PC-cycle DFS sweep, Latin n={dfs_n}", dfs_sweep),
    ]


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--enum-n", type=int, default=6)
    parser.add_argument("--dfs-n", type=int, default=8)
    parser.add_argument("--repeat", type=int, default=3)
    args = parser.parse_args()

    impls = implementations()
    if "compiled" not in impls:
        print("note: compiled kernels not built; timing pure Python only")

    rows = []
    for name, work in workloads(args.enum_n, args.dfs_n):
        timings = {label: best_of(lambda m=mod: work(m), args.repeat)
                   for label, mod in impls.items()}
        rows.append((name, timings))

    width = max(len(name) for name, _ in rows)
    header = f"{'workload':<{width}}  " + "".join(f"{k:>12}" for k in impls)
    if "compiled" in impls:
        header += f"{'speedup':>10}"
    print(header)
    for name, timings in rows:
        line = f"{name:<{width}}  " + "".join(
            f"{timings[k] * 1000:>10.1f}ms" for k in impls)
        if "compiled" in impls:
            line += f"{timings['pure'] / timings['compiled']:>9.1f}x"
        print(line)

    # both implementations must agree before any timing is meaningful
    for label, mod in impls.items():
        assert mod.enumerate_two_factor_keys(latin_graph(4).rows, 3) == \
            impls["pure"].enumerate_two_factor_keys(latin_graph(4).rows, 3), label


if __name__ == "__main__":
    main()
