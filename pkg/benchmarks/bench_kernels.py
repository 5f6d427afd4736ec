"""Compare the compiled and pure-Python search kernels on the same workloads.

    python3 benchmarks/bench_kernels.py [--repeat 3]
"""

from __future__ import annotations

import argparse
import time

from maxminsum import kernels
from maxminsum.constructions import apply_relabeling, construct, identity_mapping
from maxminsum.search import (MAX_DUAL_MIN_SUM, MIN_DIFFERENCE_SUM, MIN_RATIO_SUM, SearchTask, full_permutation_search,
                              reduced_maxmin_search)


def _system(kind, n):
    s = construct(kind, n)
    return apply_relabeling(s, identity_mapping(s))


WORKLOADS = {
    "full minratio STS(9)": lambda b: full_permutation_search(SearchTask(_system("bose", 9), MIN_RATIO_SUM),
                                                               backend=b),
    "dual maxmin STS(9), 200k nodes/subtask": lambda b: full_permutation_search(
        SearchTask(_system("bose", 9), MAX_DUAL_MIN_SUM, budget=200_000), backend=b),
    "full mindiff STS(13), 20k nodes/subtask": lambda b: full_permutation_search(
        SearchTask(_system("skolem", 13), MIN_DIFFERENCE_SUM, budget=20_000), backend=b),
    "reduced maxmin STS(13)": lambda b: reduced_maxmin_search(_system("skolem", 13), backend=b),
}


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--repeat", type=int, default=3)
    args = parser.parse_args(argv)
    backends = kernels.available_backends()
    if "cython" not in backends:
        print("compiled kernels not built; only the Python backend will be timed")
    print(f"{'workload':<40} {'backend':<8} {'nodes':>10} {'best s':>9}")
    for name, run in WORKLOADS.items():
        times = {}
        for backend in backends:
            best = float("inf")
            for _ in range(args.repeat):
                start = time.perf_counter()
                result = run(backend)
                best = min(best, time.perf_counter() - start)
            times[backend] = best
            print(f"{name:<40} {backend:<8} {result.nodes:>10} {best:>9.3f}")
        if len(times) == 2:
            print(f"{'':<40} speedup {times['python'] / times['cython']:>21.1f}x")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
