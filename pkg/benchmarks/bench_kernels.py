"""Time the compiled kernels against the pure-Python fallback.

    python benchmarks/bench_kernels.py [--size N] [--repeat R]

Workloads are the shapes the library runs: self-maps of a finite set and
monoid tables with an action on top.
"""

from __future__ import annotations

import argparse
import random
import timeit

from lambdaring import _kernels_py as py

try:
    from lambdaring import _kernels as cy
except ImportError:
    cy = None


def workloads(size: int, rng: random.Random):
    f = [rng.randrange(size) for _ in range(size)]
    g = [rng.randrange(size) for _ in range(size)]
    m = max(2, int(size ** 0.5))
    table = [[(x * y) % m for y in range(m)] for x in range(m)]
    rho = [[(x * s) % m for s in range(m)] for x in range(m)]
    return {
        "compose": lambda k: k.compose(f, g),
        "stable_image": lambda k: k.stable_image(f),
        "map_power": lambda k: k.map_power(f, 37),
        "action_hom_failure": lambda k: k.action_hom_failure(table, rho),
        "table_hom_failure": lambda k: k.table_hom_failure(table, table, list(range(m))),
    }


def main(argv=None) -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--size", type=int, default=400, help="size of the set S")
    ap.add_argument("--repeat", type=int, default=5)
    ap.add_argument("--number", type=int, default=50)
    args = ap.parse_args(argv)

    work = workloads(args.size, random.Random(0))
    print(f"{'kernel':<20} {'python (ms)':>12} {'cython (ms)':>12} {'speedup':>8}")
    for name, call in work.items():
        t_py = min(timeit.repeat(lambda: call(py), number=args.number, repeat=args.repeat)) / args.number
        if cy is None:
            print(f"{name:<20} {t_py * 1e3:12.4f} {'n/a':>12} {'-':>8}")
            continue
        t_cy = min(timeit.repeat(lambda: call(cy), number=args.number, repeat=args.repeat)) / args.number
        print(f"{name:<20} {t_py * 1e3:12.4f} {t_cy * 1e3:12.4f} {t_py / t_cy:7.1f}x")


if __name__ == "__main__":
    main()
