#!/usr/bin/env python3
"""Benchmark the compiled hot kernels against the pure-Python fallback.

Both backends are algorithmic twins with bit-identical output, so this
script reports the speed difference only.  Run from the repository root:

    python benchmarks/bench_kernels.py [--quick]
"""

import argparse
import time

from visitprob import _kernels_py

try:
    from visitprob import _kernels
except ImportError:
    _kernels = None

CHAIN = (0.3, 0.4, 0.5)  # p01, p10, p1


def timed(fn, *args):
    started = time.perf_counter()
    result = fn(*args)
    return result, time.perf_counter() - started


def bench_simulate(trials: int, seed: int = 42) -> list[tuple[str, float]]:
    rows = []
    pure, t_pure = timed(_kernels_py.simulate_counts, 8, *CHAIN, trials, seed)
    rows.append(("pure-python", t_pure))
    if _kernels is not None:
        compiled, t_comp = timed(_kernels.simulate_counts, 8, *CHAIN, trials, seed)
        assert compiled == pure, "backends disagree"
        rows.append(("compiled", t_comp))
    return rows


def bench_enumerate(n: int) -> list[tuple[str, float]]:
    rows = []
    pure, t_pure = timed(_kernels_py.enumerate_visit_mass, n, *CHAIN)
    rows.append(("pure-python", t_pure))
    if _kernels is not None:
        compiled, t_comp = timed(_kernels.enumerate_visit_mass, n, *CHAIN)
        assert compiled == pure, "backends disagree"
        rows.append(("compiled", t_comp))
    return rows


def print_table(title: str, rows: list[tuple[str, float]]) -> None:
    print(f"\n{title}")
    base = rows[0][1]
    for name, seconds in rows:
        speedup = f"  ({base / seconds:6.1f}x)" if name != "pure-python" else ""
        print(f"  {name:<12s} {seconds * 1000:10.2f} ms{speedup}")


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--quick", action="store_true", help="smaller workloads")
    args = parser.parse_args()

    trials = 100_000 if args.quick else 500_000
    enum_n = 14 if args.quick else 18

    if _kernels is None:
        print("compiled extension not built; timing the fallback only")

    print_table(
        f"simulate_counts: {trials:,} trajectories, N = 8, seed 42",
        bench_simulate(trials),
    )
    print_table(
        f"enumerate_visit_mass: all 2**{enum_n} trajectories",
        bench_enumerate(enum_n),
    )


if __name__ == "__main__":
    main()
