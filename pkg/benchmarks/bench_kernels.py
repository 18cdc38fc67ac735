"""Time the compiled kernels against the pure-Python fallback.

    python benchmarks/bench_kernels.py [--repeat 3]

Workloads are the hot loops of the acceptance suite: the tail-sum /
incomplete-beta identity grid (n <= 50, 101 theta values) and the
interval tables behind exact coverage enumeration.
"""
import argparse
import importlib
import time

import numpy as np

from sunrise import _pykernels

try:
    _ckernels = importlib.import_module("sunrise._ckernels")
except ImportError:
    _ckernels = None

GRID = np.linspace(0.0, 1.0, 101).tolist()


def tail_identity(k):
    worst = 0.0
    for n in range(1, 51):
        for t in range(1, n + 1):
            for th in GRID:
                worst = max(worst, abs(k.binom_tail(n, t, th) - k.betainc(th, t, n - t + 1.0)))
    return worst


def quantile_bisection(k):
    # equal-tailed 95% limits of Beta(t+1, n-t) for every t, as in coverage tables
    total = 0.0
    for n in (10, 30, 100):
        for t in range(n):
            for target in (0.025, 0.975):
                lo, hi = 0.0, 1.0
                while hi - lo > 1e-12:
                    mid = 0.5 * (lo + hi)
                    if k.betainc(mid, t + 1.0, n - t) >= target:
                        hi = mid
                    else:
                        lo = mid
                total += lo
    return total


def large_lbeta(k):
    return sum(k.lbeta(n + 1.0, 1.0) for n in range(2_000_000, 2_200_000))


WORKLOADS = {"tail_identity": tail_identity, "quantile_bisection": quantile_bisection,
             "large_lbeta": large_lbeta}


def best_of(fn, k, repeat):
    times = []
    for _ in range(repeat):
        start = time.perf_counter()
        result = fn(k)
        times.append(time.perf_counter() - start)
    return min(times), result


def main():
    parser = argparse.ArgumentParser(description=__doc__.split("\n")[0])
    parser.add_argument("--repeat", type=int, default=3)
    args = parser.parse_args()
    if _ckernels is None:
        print("compiled kernels not built; reporting the Python fallback only")
    print(f"{'workload':<20}{'python [s]':>12}{'cython [s]':>12}{'speedup':>10}")
    for name, fn in WORKLOADS.items():
        py_time, py_result = best_of(fn, _pykernels, args.repeat)
        if _ckernels is None:
            print(f"{name:<20}{py_time:>12.4f}{'-':>12}{'-':>10}")
            continue
        c_time, c_result = best_of(fn, _ckernels, args.repeat)
        assert abs(py_result - c_result) <= 1e-9 * max(1.0, abs(py_result)), (name, py_result, c_result)
        print(f"{name:<20}{py_time:>12.4f}{c_time:>12.4f}{py_time / c_time:>9.1f}x")


if __name__ == "__main__":
    main()
