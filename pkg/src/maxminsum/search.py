"""Exhaustive searches over point relabelings and block labelings.

All searches split on the element that receives label 0 and run one
independent subtask per choice. Subtasks never share state, so the merged
result (value, witness, node count) is the same for any number of workers.
Within a subtask labels are handed out in increasing order and candidates are
tried in increasing index; the witness reported is therefore the first
optimal labeling in that enumeration order.
"""

from __future__ import annotations

import math
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional

from . import kernels
from .bounds import dual_min_sum_upper_bound, min_sum_upper_bound, sts_difference_ratio_bounds
from .design import (BlockLabeling, SteinerTripleSystem, dual_sum_stats, fraction_to_str,
                     sum_stats)

MAX_MIN_SUM = "max_min_sum"
MIN_DIFFERENCE_SUM = "min_difference_sum"
MIN_RATIO_SUM = "min_ratio_sum"
MAX_DUAL_MIN_SUM = "max_dual_min_sum"

OBJECTIVES = (MAX_MIN_SUM, MIN_DIFFERENCE_SUM, MIN_RATIO_SUM, MAX_DUAL_MIN_SUM)
OBJECTIVE_ALIASES = {
    "maxmin": MAX_MIN_SUM,
    "mindiff": MIN_DIFFERENCE_SUM,
    "minratio": MIN_RATIO_SUM,
    "maxdualmin": MAX_DUAL_MIN_SUM,
}
_KERNEL_CODE = {MAX_MIN_SUM: 0, MIN_DIFFERENCE_SUM: 1, MIN_RATIO_SUM: 2}

REDUCED_MAX_N = 19
JOBS_ENV = "MAXMINSUM_JOBS"


class SearchError(ValueError):
    pass


@dataclass(frozen=True)
class SearchTask:
    system: SteinerTripleSystem
    objective: str = MAX_MIN_SUM
    mode: str = "full"
    budget: int = 0  # node limit per subtask; 0 means unlimited
    allow_large: bool = False

    def __post_init__(self) -> None:
        if self.objective not in OBJECTIVES:
            raise SearchError(f"unknown objective {self.objective!r}")
        if self.mode not in ("full", "reduced"):
            raise SearchError(f"unknown mode {self.mode!r}")
        if self.mode == "reduced" and self.objective != MAX_MIN_SUM:
            raise SearchError("reduced mode only supports the max_min_sum objective")
        if self.budget < 0:
            raise SearchError("budget must be >= 0")


@dataclass(frozen=True)
class SearchResult:
    objective: str
    mode: str
    value: Fraction
    witness: tuple[int, ...]
    witness_kind: str  # "points": witness[p] is the new label of point p; "blocks": label of block k
    nodes: int
    exhaustive: bool
    bound_reached: bool = False
    subtasks: int = 0
    backend: str = field(default="", compare=False)

    def to_json(self) -> dict:
        return {
            "objective": self.objective,
            "mode": self.mode,
            "value": fraction_to_str(self.value),
            "witness": list(self.witness),
            "witness_kind": self.witness_kind,
            "nodes": self.nodes,
            "exhaustive": self.exhaustive,
            "bound_reached": self.bound_reached,
            "subtasks": self.subtasks,
        }


def score(system: SteinerTripleSystem, objective: str, witness) -> Fraction:
    """Objective value of a witness, computed from scratch."""
    if objective == MAX_DUAL_MIN_SUM:
        return Fraction(dual_sum_stats(system, BlockLabeling(tuple(witness))).min_sum)
    stats = sum_stats(system.relabeled(witness))
    if objective == MAX_MIN_SUM:
        return Fraction(stats.min_sum)
    if objective == MIN_DIFFERENCE_SUM:
        return Fraction(stats.difference_sum)
    return stats.ratio_sum


def _better(objective: str, a: Fraction, b: Fraction) -> bool:
    if objective in (MAX_MIN_SUM, MAX_DUAL_MIN_SUM):
        return a > b
    return a < b


def default_jobs() -> int:
    raw = os.environ.get(JOBS_ENV, "")
    try:
        return max(1, int(raw)) if raw else 1
    except ValueError:
        raise SearchError(f"{JOBS_ENV} must be an integer, got {raw!r}") from None


# Subtasks are plain tuples so they pickle cheaply for worker processes.
def _run_subtask(job: tuple) -> tuple:
    kind, backend, args = job
    mod = kernels.get_backend(backend)
    return getattr(mod, kind)(*args)


def _run_all(jobs: list[tuple], workers: int) -> list[tuple]:
    if workers <= 1 or len(jobs) <= 1:
        out = []
        for job in jobs:
            res = _run_subtask(job)
            out.append(res)
            if res[6]:  # reached the proven bound; later subtasks cannot improve
                break
        return out
    with ProcessPoolExecutor(max_workers=workers) as pool:
        out = list(pool.map(_run_subtask, jobs))
    for k, res in enumerate(out):
        if res[6]:
            return out[:k + 1]
    return out


def _merge(objective: str, mode: str, kind: str, results: list[tuple], total_subtasks: int,
           seed_value: Fraction, seed_witness: tuple[int, ...], backend: str) -> SearchResult:
    best_value: Optional[Fraction] = None
    best_witness = None
    nodes = 0
    complete = True
    for found, num, den, witness, sub_nodes, sub_complete, _ in results:
        nodes += sub_nodes
        complete = complete and sub_complete
        if found:
            value = Fraction(num, den)
            if best_value is None or _better(objective, value, best_value):
                best_value, best_witness = value, tuple(witness)
    stopped = bool(results) and results[-1][6]
    exhaustive = complete and (stopped or len(results) == total_subtasks)
    if best_value is None:
        # only possible when a budget cut every subtask short
        best_value, best_witness = seed_value, seed_witness
    return SearchResult(objective, mode, best_value, best_witness, kind, nodes, exhaustive,
                        bound_reached=stopped, subtasks=len(results), backend=backend)


def _checked(system: SteinerTripleSystem, result: SearchResult) -> SearchResult:
    rescored = score(system, result.objective, result.witness)
    if rescored != result.value:
        raise RuntimeError(f"witness re-scores to {rescored}, search reported {result.value}")
    return result


def full_permutation_search(task: SearchTask, jobs: int | None = None,
                            backend: str | None = None) -> SearchResult:
    """Optimum of ``task.objective`` over all point permutations (or all block
    labelings for the dual objective), using sound bound-based pruning."""
    if task.mode != "full":
        raise SearchError("full_permutation_search needs mode='full'")
    system = task.system
    n = system.n
    blocks = [list(b) for b in system.blocks]
    mod = kernels.get_backend(backend)
    name = "cython" if mod is not kernels._pycore else "python"
    workers = default_jobs() if jobs is None else jobs

    if task.objective == MAX_DUAL_MIN_SUM:
        seed_witness = tuple(range(system.block_count))
        seed_value = score(system, MAX_DUAL_MIN_SUM, seed_witness)
        stop = math.floor(dual_min_sum_upper_bound(n))
        jobs_list = [("dual_search", name,
                      (blocks, n, root, int(seed_value), False, stop, task.budget))
                     for root in range(system.block_count)]
        kind = "blocks"
    else:
        seed_witness = tuple(range(n))
        seed_value = score(system, task.objective, seed_witness)
        if task.objective == MAX_MIN_SUM:
            stop = Fraction(min_sum_upper_bound(n))
        elif task.objective == MIN_DIFFERENCE_SUM:
            stop = sts_difference_ratio_bounds(n)[0]
        else:
            stop = sts_difference_ratio_bounds(n)[1]
        code = _KERNEL_CODE[task.objective]
        jobs_list = [("point_search", name,
                      (blocks, n, code, root, seed_value.numerator, seed_value.denominator, False,
                       stop.numerator, stop.denominator, task.budget))
                     for root in range(n)]
        kind = "points"

    results = _run_all(jobs_list, workers)
    merged = _merge(task.objective, "full", kind, results, len(jobs_list), seed_value,
                    seed_witness, name)
    return _checked(system, merged)


def reduced_maxmin_search(system: SteinerTripleSystem, budget: int = 0, allow_large: bool = False,
                          jobs: int | None = None, backend: str | None = None) -> SearchResult:
    """Max min-sum over relabelings sending some point x to 0 and the blocks
    through x onto the triples ``{0, i, n-i}``.

    Any labeling with min-sum n has this shape, so the best value here is n
    exactly when some relabeling of the system reaches min-sum n.
    """
    n = system.n
    if n > REDUCED_MAX_N and not allow_large:
        raise SearchError(f"reduced search is limited to n <= {REDUCED_MAX_N}; "
                          "pass allow_large to override")
    if budget < 0:
        raise SearchError("budget must be >= 0")
    blocks = [list(b) for b in system.blocks]
    mod = kernels.get_backend(backend)
    name = "cython" if mod is not kernels._pycore else "python"
    workers = default_jobs() if jobs is None else jobs
    jobs_list = [("reduced_search", name, (blocks, n, x, 0, False, budget)) for x in range(n)]
    results = _run_all(jobs_list, workers)
    seed_witness = tuple(range(n))
    merged = _merge(MAX_MIN_SUM, "reduced", "points", results, len(jobs_list),
                    score(system, MAX_MIN_SUM, seed_witness), seed_witness, name)
    return _checked(system, merged)


def run_task(task: SearchTask, jobs: int | None = None, backend: str | None = None) -> SearchResult:
    if task.mode == "reduced":
        return reduced_maxmin_search(task.system, task.budget, task.allow_large, jobs, backend)
    return full_permutation_search(task, jobs, backend)
