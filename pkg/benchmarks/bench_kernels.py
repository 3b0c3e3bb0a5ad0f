#!/usr/bin/env python3
"""Benchmark the compiled integer kernels against the pure-Python fallback.

Workloads mirror the package's hot paths: batched social-cost evaluation and
stability checks (the brute-force oracle), and a full coordinate-descent
sweep (the optimizer).  Run after building the extension:

    python benchmarks/bench_kernels.py [--n 12] [--k 2] [--repeat 200]
"""

from __future__ import annotations

import argparse
import random
import time

from kcof import _kernels_py

try:
    from kcof import _kernels as _compiled
except ImportError:
    _compiled = None


def _instances(rng: random.Random, count: int, n: int) -> list[tuple[list[int], list[int]]]:
    out = []
    for _ in range(count):
        s = sorted(rng.randrange(0, 600) for _ in range(n))
        z = [rng.randrange(-100, 700) for _ in range(n)]
        out.append((s, z))
    return out


def _time(fn) -> float:
    t0 = time.perf_counter()
    fn()
    return time.perf_counter() - t0


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--n", type=int, default=12, help="players per instance")
    parser.add_argument("--k", type=int, default=2, help="neighborhood size")
    parser.add_argument("--repeat", type=int, default=200, help="instances per workload")
    parser.add_argument("--seed", type=int, default=7)
    args = parser.parse_args()

    rng = random.Random(args.seed)
    batch = _instances(rng, args.repeat, args.n)
    cands = sorted({rng.randrange(0, 600) for _ in range(60)})

    workloads = {
        "social_cost x%d" % args.repeat: lambda mod: [
            mod.social_cost(s, z, args.k) for s, z in batch
        ],
        "first_unstable x%d" % args.repeat: lambda mod: [
            mod.first_unstable(s, z, args.k) for s, z in batch
        ],
        "descent sweep x%d" % (args.repeat // 10 or 1): lambda mod: [
            mod.coordinate_best(s, z, args.k, i, cands)
            for s, z in batch[: args.repeat // 10 or 1]
            for i in range(args.n)
        ],
    }

    print(f"n={args.n} k={args.k} repeat={args.repeat}")
    print(f"{'workload':<28}{'python':>12}{'compiled':>12}{'speedup':>10}")
    for name, load in workloads.items():
        py = _time(lambda: load(_kernels_py))
        if _compiled is None:
            print(f"{name:<28}{py:>11.4f}s{'-':>12}{'-':>10}")
            continue
        fast = _time(lambda: load(_compiled))
        ref = load(_kernels_py)
        got = load(_compiled)
        assert ref == got, f"kernel mismatch in {name}"
        speedup = py / fast if fast > 0 else float("inf")
        print(f"{name:<28}{py:>11.4f}s{fast:>11.4f}s{speedup:>9.1f}x")
    if _compiled is None:
        print("compiled extension not available; showing the fallback only")


if __name__ == "__main__":
    main()
