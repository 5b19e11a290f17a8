#!/usr/bin/env python3
"""Time the covering-path solver on random cacti of doubling size.

For each size n the solver runs on `repeats` seeded random cacti and the
best wall time is reported, together with the growth ratio between
successive sizes.  The solver is polynomial, so doubling n should grow
the time by a small constant factor (about 4x in practice), not 10x.

Usage: python3 scripts/benchmark_scaling.py [--sizes 100 200 400] [--repeats 3]
"""

import argparse
import time
from dataclasses import dataclass, field

from cactusq.covering_path import solve_cactus
from cactusq.graph_core import random_cactus


@dataclass
class BenchConfig:
    sizes: list[int] = field(default_factory=lambda: [100, 200, 400])
    repeats: int = 3


def best_time(n: int, repeats: int) -> float:
    best = float("inf")
    for seed in range(repeats):
        g = random_cactus(n, seed)
        start = time.perf_counter()
        walk = solve_cactus(g)
        elapsed = time.perf_counter() - start
        assert walk.is_covering(g)
        best = min(best, elapsed)
    return best


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--sizes", type=int, nargs="+",
                        default=BenchConfig().sizes)
    parser.add_argument("--repeats", type=int, default=BenchConfig().repeats)
    args = parser.parse_args()
    config = BenchConfig(sizes=args.sizes, repeats=args.repeats)

    print(f"{'n':>6} {'best time':>10} {'ratio':>6}")
    previous = None
    for n in config.sizes:
        t = best_time(n, config.repeats)
        ratio = "" if previous is None else f"{t / previous:.1f}x"
        print(f"{n:>6} {t:>9.3f}s {ratio:>6}")
        previous = t


if __name__ == "__main__":
    main()
