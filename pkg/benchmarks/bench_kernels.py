#!/usr/bin/env python3
"""Benchmark the compiled power-sum kernels against the pure-Python fallback.

Run after an editable install:

    python benchmarks/bench_kernels.py [--sizes 10000,100000,1000000]

Times each backend on the full-sum and prefix-sum kernels and on a
21-point hit-ratio sweep (the dominant end-to-end use), best of 3 runs.
"""

import argparse
import time

from ubbplan import _kernels_py

try:
    from ubbplan import _kernels
except ImportError:
    _kernels = None


def best_of(fn, repeats=3):
    best = float("inf")
    for _ in range(repeats):
        t0 = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - t0)
    return best


def hit_ratio_sweep(kernels, n, alpha):
    prefix = kernels.power_prefix_sums(n, -alpha)
    total = prefix[-1]
    return [prefix[max(1, round(f / 20 * n)) - 1] / total for f in range(21)]


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--sizes", default="10000,100000,1000000",
                        help="comma-separated catalog sizes")
    args = parser.parse_args()
    sizes = [int(s) for s in args.sizes.split(",")]

    backends = [("python", _kernels_py)]
    if _kernels is not None:
        backends.append(("cython", _kernels))
    else:
        print("note: compiled kernels not built; showing pure Python only\n")

    header = f"{'kernel':<22}{'n':>10}" + "".join(f"{name:>12}" for name, _ in backends)
    if len(backends) == 2:
        header += f"{'speedup':>10}"
    print(header)
    print("-" * len(header))

    cases = [
        ("power_sum(a=0.8)", lambda k, n: k.power_sum(n, -0.8)),
        ("power_prefix_sums", lambda k, n: k.power_prefix_sums(n, -0.8)),
        ("hit_ratio sweep x21", lambda k, n: hit_ratio_sweep(k, n, 0.8)),
    ]
    for label, call in cases:
        for n in sizes:
            times = [best_of(lambda k=kernels: call(k, n)) for _, kernels in backends]
            row = f"{label:<22}{n:>10}" + "".join(f"{t * 1e3:>10.2f}ms" for t in times)
            if len(times) == 2 and times[1] > 0:
                row += f"{times[0] / times[1]:>9.1f}x"
            print(row)


if __name__ == "__main__":
    main()
