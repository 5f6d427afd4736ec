"""Regenerates every checkable number for constructed systems and reports
pass/fail per claim.

Claims are grouped by cost: ``fast`` (seconds), ``medium`` (under a few
minutes even on the pure-Python kernels) and ``long`` (opt-in).
"""

from __future__ import annotations

import time
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable

from .bounds import (dual_min_sum_upper_bound, max_sum_lower_bound, min_sum_upper_bound,
                     sts_difference_ratio_bounds)
from .constructions import (Pt, bose_op, construct, identity_mapping, paper_mapping,
                            apply_relabeling, skolem_op)
from .design import complement_relabel, dual_point_sums, dual_sum_stats, sum_stats, verify_sts
from .dual import (OrderingScheme, closed_form_block_label, closed_form_dual_point_sum,
                   inverse_pairs, make_labeling)
from .frc import DUAL_POINTS_AS_NODES, BLOCKS_AS_NODES, placement_from_design, simulate_repair
from .pipeline import constructed_orders, dual_report, generate_design, mapped_system
from .search import (MAX_DUAL_MIN_SUM, MAX_MIN_SUM, MIN_DIFFERENCE_SUM, MIN_RATIO_SUM, SearchTask,
                     full_permutation_search, reduced_maxmin_search)

GROUPS = ("fast", "medium", "long")

EXAMPLE_BOSE_9 = [(0, 6, 3), (1, 7, 4), (2, 8, 5), (0, 1, 8), (6, 7, 5), (3, 4, 2),
                  (0, 2, 7), (6, 8, 4), (3, 5, 1), (1, 2, 6), (7, 8, 3), (4, 5, 0)]


@dataclass(frozen=True)
class Claim:
    key: str
    group: str
    title: str
    check: Callable[[], tuple[bool, str]]


@dataclass(frozen=True)
class Outcome:
    claim: Claim
    status: str  # "pass", "fail" or "skipped"
    detail: str
    seconds: float


def _all_systems():
    for kind, n in constructed_orders(7, 201):
        yield kind, n, mapped_system(kind, n)


def _first_failure(items) -> tuple[bool, str]:
    bad = [desc for ok, desc in items if not ok]
    if bad:
        return False, f"{len(bad)} failures, first: {bad[0]}"
    return True, "all cases hold"


def check_steiner_validity():
    items = []
    for kind, n in constructed_orders(7, 201):
        structured = construct(kind, n)
        system = apply_relabeling(structured, identity_mapping(structured))
        items.append((verify_sts(n, system.blocks).ok, f"{kind} n={n}"))
    return _first_failure(items)


def _min_sum_is_n(kind):
    items = [(sum_stats(s).min_sum == n, f"n={n}: {sum_stats(s).min_sum}")
             for k, n, s in _all_systems() if k == kind]
    return _first_failure(items)


def check_example_bose_9():
    blocks = [tuple(b) for b in generate_design("bose", 9).system.blocks]
    expected = [tuple(sorted(b)) for b in EXAMPLE_BOSE_9]
    return blocks == expected, "block list matches" if blocks == expected else f"got {blocks}"


def check_example_skolem_13():
    stats = sum_stats(generate_design("skolem", 13).system)
    got = (stats.min_sum, stats.max_sum, stats.difference_sum, stats.ratio_sum)
    return got == (13, 30, 17, Fraction(30, 13)), f"min/max/diff/ratio = {got[:3]}, {got[3]}"


def check_max_sum_bounds():
    items = []
    for kind, n, s in _all_systems():
        limit = Fraction(8 * n, 3) - 4 if kind == "bose" else Fraction(8 * n - 11, 3)
        items.append((sum_stats(s).max_sum <= limit, f"{kind} n={n}"))
    return _first_failure(items)


def check_small_dual_sums():
    got = tuple(dual_report("bose", n, "yxi")[1].dual_min_sum for n in (9, 15, 21))
    return got == (20, 104, 291), f"n=9,15,21 -> {got}"


def check_dual_formulas():
    items = []
    for kind, n in constructed_orders(7, 201):
        for order in ("yxi", "natural"):
            report = dual_report(kind, n, order)[1]
            if report.min_matches is not None:
                items.append((report.min_matches, f"{kind}-{order} min n={n}"))
            if report.max_matches is not None:
                items.append((report.max_matches, f"{kind}-{order} max n={n}"))
            if kind == "skolem" and order == "yxi":
                inf = report.infinity_point
                items.append((report.point_sums[inf] == report.dual_max_sum,
                              f"infinity argmax n={n}"))
    ok, detail = _first_failure(items)
    return ok, f"{len(items)} comparisons; {detail}"


def check_closed_forms():
    items = []
    for kind, n in constructed_orders(7, 201):
        structured = construct(kind, n)
        pi = paper_mapping(structured)
        system = apply_relabeling(structured, pi)
        for order in ("yxi", "natural"):
            scheme = OrderingScheme.for_system(kind, order)
            labeling = make_labeling(structured, scheme)
            for k, blk in enumerate(structured.blocks):
                if closed_form_block_label(scheme, blk.tag, n) != labeling.labels[k]:
                    items.append((False, f"{scheme.value} n={n} {blk.tag}"))
                    break
            else:
                items.append((True, ""))
            if scheme.is_yxi:
                enumerated = dual_point_sums(system, labeling)
                for z in range(structured.m):
                    for i in range(3):
                        if closed_form_dual_point_sum(scheme, z, i, n) != enumerated[pi[Pt(z, i)]]:
                            items.append((False, f"{scheme.value} n={n} point ({z},{i})"))
    return _first_failure(items)


def _bucketed_pairs(m, op):
    fn = bose_op if op == "bose" else skolem_op
    buckets = [set() for _ in range(m)]
    for x in range(m):
        for y in range(x + 1, m):
            buckets[fn(x, y, m)].add((x, y))
    return buckets


def check_inverse_pairs():
    items = []
    for m in range(2, 101):
        op = "bose" if m % 2 else "skolem"
        if op == "bose" and m < 3:
            continue
        buckets = _bucketed_pairs(m, op)
        for z in range(m):
            items.append((inverse_pairs(z, m, op) == buckets[z], f"{op} m={m} z={z}"))
    return _first_failure(items)


def check_bounds():
    items = []
    for kind, n in constructed_orders(7, 201):
        system = mapped_system(kind, n)
        stats = sum_stats(system)
        diff_lb, ratio_lb = sts_difference_ratio_bounds(n)
        ok = (stats.min_sum <= min_sum_upper_bound(n) and stats.max_sum >= max_sum_lower_bound(n)
              and stats.difference_sum >= diff_lb and stats.ratio_sum >= ratio_lb)
        structured = construct(kind, n)
        for order in ("yxi", "natural"):
            labeling = make_labeling(structured, OrderingScheme.for_system(kind, order))
            ok = ok and dual_sum_stats(system, labeling).min_sum <= dual_min_sum_upper_bound(n)
        items.append((ok, f"{kind} n={n}"))
    return _first_failure(items)


def check_search_7():
    system = mapped_system("skolem", 7)
    ratio = full_permutation_search(SearchTask(system, MIN_RATIO_SUM))
    maxmin = full_permutation_search(SearchTask(system, MAX_MIN_SUM))
    ok = ratio.value == Fraction(15, 7) and ratio.exhaustive and maxmin.value == 7
    return ok, f"min ratio {ratio.value}, best min-sum {maxmin.value}"


def check_search_9():
    system = mapped_system("bose", 9)
    maxmin = full_permutation_search(SearchTask(system, MAX_MIN_SUM))
    reduced = reduced_maxmin_search(system)
    diff = full_permutation_search(SearchTask(system, MIN_DIFFERENCE_SUM))
    ratio = full_permutation_search(SearchTask(system, MIN_RATIO_SUM))
    got = (maxmin.value, reduced.value, diff.value, ratio.value)
    ok = got == (9, 9, 9, 2) and all(r.exhaustive for r in (maxmin, reduced, diff, ratio))
    return ok, "min-sum {} (reduced {}), difference {}, ratio {}".format(*got)


def check_dual_optimum_9():
    result = full_permutation_search(SearchTask(mapped_system("bose", 9), MAX_DUAL_MIN_SUM))
    ok = result.value == 20 and result.exhaustive
    return ok, f"max dual min-sum {result.value} over all labelings ({result.nodes} nodes)"


def check_reduced_13():
    result = reduced_maxmin_search(mapped_system("skolem", 13))
    return result.value == 13, f"best min-sum {result.value} ({result.nodes} nodes)"


def check_frc():
    items = []
    for kind, n in constructed_orders(7, 99):
        df = generate_design(kind, n, order="yxi")
        for mode in (BLOCKS_AS_NODES, DUAL_POINTS_AS_NODES):
            frc = placement_from_design(df.system, mode, df.labeling)
            distinct = all(simulate_repair(frc, k).distinct_donors for k in range(frc.node_count))
            items.append((distinct, f"{kind} n={n} {mode}"))
    return _first_failure(items)


def check_complement():
    items = []
    for kind, n, s in _all_systems():
        items.append((sum_stats(complement_relabel(s)).max_sum == 3 * n - 3 - sum_stats(s).min_sum,
                      f"{kind} n={n}"))
    return _first_failure(items)


def check_difference_13():
    result = full_permutation_search(SearchTask(mapped_system("skolem", 13), MIN_DIFFERENCE_SUM))
    return (result.value == 14 and result.exhaustive,
            f"min difference-sum {result.value} over all 13! relabelings ({result.nodes} nodes)")


CLAIMS = [
    Claim("steiner-validity", "fast", "constructed systems are Steiner", check_steiner_validity),
    Claim("bose-min-sum", "fast", "mapped Bose systems have min-sum n", lambda: _min_sum_is_n("bose")),
    Claim("skolem-min-sum", "fast", "mapped Skolem systems have min-sum n", lambda: _min_sum_is_n("skolem")),
    Claim("bose-9-blocks", "fast", "Bose STS(9) block list", check_example_bose_9),
    Claim("skolem-13-stats", "fast", "Skolem STS(13) sums 13/30/17/(30/13)", check_example_skolem_13),
    Claim("max-sum-bounds", "fast", "mapped max-sums within 8n/3-4 and (8n-11)/3", check_max_sum_bounds),
    Claim("dual-small-n", "fast", "Bose YXI dual min-sums 20, 104, 291", check_small_dual_sums),
    Claim("dual-formulas", "medium", "dual min/max-sum polynomials", check_dual_formulas),
    Claim("closed-forms", "medium", "block label and dual point-sum closed forms", check_closed_forms),
    Claim("inverse-pairs", "fast", "inverse-pair sets for m <= 100", check_inverse_pairs),
    Claim("bounds", "medium", "min/max/difference/ratio/dual bounds", check_bounds),
    Claim("search-7", "fast", "STS(7) min ratio-sum 15/7, min-sum 7", check_search_7),
    Claim("search-9", "fast", "STS(9) min-sum 9, difference 9, ratio 2", check_search_9),
    Claim("dual-optimum-9", "medium", "Bose STS(9) max dual min-sum 20", check_dual_optimum_9),
    Claim("reduced-13", "fast", "STS(13) reduced search reaches min-sum 13", check_reduced_13),
    Claim("frc-repair", "medium", "FRC placements repair with distinct donors", check_frc),
    Claim("complement", "fast", "complement max-sum identity", check_complement),
    Claim("difference-13", "long", "Skolem STS(13) min difference-sum 14", check_difference_13),
]


def run_claims(groups=("fast", "medium"), keys=None) -> list[Outcome]:
    outcomes = []
    for claim in CLAIMS:
        if keys and claim.key not in keys:
            continue
        if claim.group not in groups:
            outcomes.append(Outcome(claim, "skipped", f"{claim.group} group not enabled", 0.0))
            continue
        start = time.perf_counter()
        try:
            ok, detail = claim.check()
        except Exception as exc:  # a crash is a failed claim, reported not raised
            ok, detail = False, f"{type(exc).__name__}: {exc}"
        outcomes.append(Outcome(claim, "pass" if ok else "fail", detail,
                                time.perf_counter() - start))
    return outcomes


def format_table(outcomes: list[Outcome]) -> str:
    width = max((len(o.claim.key) for o in outcomes), default=5)
    lines = [f"{'claim':<{width}}  {'group':<6}  {'status':<7}  {'time':>7}  detail"]
    for o in outcomes:
        lines.append(f"{o.claim.key:<{width}}  {o.claim.group:<6}  {o.status:<7}  "
                     f"{o.seconds:6.2f}s  {o.detail}")
    return "\n".join(lines)
