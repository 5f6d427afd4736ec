from __future__ import annotations

from fractions import Fraction

from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import is_steiner, mapped, orders, unmapped
from maxminsum.bounds import dual_min_sum_upper_bound
from maxminsum.constructions import bose_op, skolem_op
from maxminsum.design import (BlockLabeling, SteinerTripleSystem, complement_relabel,
                              dual_point_sums, fraction_to_str, parse_fraction, sum_stats)
from maxminsum.frc import (BLOCKS_AS_NODES, DUAL_POINTS_AS_NODES, balance_report,
                           placement_from_design, simulate_repair)
from maxminsum.search import MIN_RATIO_SUM, SearchTask, full_permutation_search, reduced_maxmin_search

SMALL = [(k, n) for k, n in orders(7, 45)]


@st.composite
def relabeled_system(draw, choices=SMALL):
    kind, n = draw(st.sampled_from(choices))
    perm = draw(st.permutations(range(n)))
    return unmapped(kind, n).relabeled(perm)


@st.composite
def labeled_system(draw):
    system = draw(relabeled_system())
    labels = draw(st.permutations(range(system.block_count)))
    return system, BlockLabeling(tuple(labels))


@given(relabeled_system())
def test_relabeling_keeps_steiner_property(system):
    assert is_steiner(system.n, system.blocks)
    reps = [0] * system.n
    for blk in system.blocks:
        for p in blk:
            reps[p] += 1
    assert all(2 * r == system.n - 1 for r in reps)


@given(relabeled_system())
def test_complement_duality(system):
    assert sum_stats(system).min_sum + sum_stats(complement_relabel(system)).max_sum == 3 * system.n - 3
    assert complement_relabel(complement_relabel(system)) == system


@given(relabeled_system())
def test_difference_and_ratio_bounds_hold(system):
    stats = sum_stats(system)
    assert stats.min_sum <= system.n
    assert stats.max_sum >= 2 * system.n - 3
    assert stats.difference_sum >= system.n
    assert stats.min_sum == 0 or stats.ratio_sum >= 2


@given(labeled_system())
def test_dual_total_and_bound(pair):
    system, labeling = pair
    sums = dual_point_sums(system, labeling)
    blocks = system.block_count
    assert sum(sums) == 3 * (blocks - 1) * blocks // 2
    assert min(sums) <= dual_min_sum_upper_bound(system.n)


@given(relabeled_system(), st.randoms(use_true_random=False))
def test_stats_ignore_block_order(system, rnd):
    blocks = list(system.blocks)
    rnd.shuffle(blocks)
    assert sum_stats(SteinerTripleSystem(system.n, tuple(blocks))) == sum_stats(system)


@given(st.integers(min_value=-10**6, max_value=10**6), st.integers(min_value=1, max_value=10**6))
def test_fraction_strings_round_trip(p, q):
    value = Fraction(p, q)
    assert parse_fraction(fraction_to_str(value)) == value


@given(st.sampled_from(range(1, 80, 2)))
def test_bose_op_is_latin(m):
    for x in range(m):
        assert sorted(bose_op(x, y, m) for y in range(m)) == list(range(m))


@given(st.sampled_from(range(2, 80, 2)))
def test_skolem_op_is_latin(m):
    for x in range(m):
        assert sorted(skolem_op(x, y, m) for y in range(m)) == list(range(m))


@settings(max_examples=30)
@given(labeled_system())
def test_frc_placements_intersect_at_most_once_and_repair(pair):
    system, labeling = pair
    for mode in (BLOCKS_AS_NODES, DUAL_POINTS_AS_NODES):
        frc = placement_from_design(system, mode, labeling)
        nodes = [set(node) for node in frc.placement]
        for a in range(len(nodes)):
            for b in range(a + 1, len(nodes)):
                assert len(nodes[a] & nodes[b]) <= 1
        for k in range(0, frc.node_count, max(1, frc.node_count // 7)):
            t = simulate_repair(frc, k)
            assert t.distinct_donors
            assert set(t.reconstructed) == nodes[k]


@given(labeled_system())
def test_dual_balance_equals_dual_sums(pair):
    system, labeling = pair
    report = balance_report(placement_from_design(system, DUAL_POINTS_AS_NODES, labeling))
    assert list(report.node_sums) == dual_point_sums(system, labeling)


@settings(max_examples=25, deadline=None)
@given(relabeled_system(choices=[("skolem", 7), ("bose", 9)]))
def test_search_optimum_is_relabeling_invariant(system):
    reference = mapped("skolem", 7) if system.n == 7 else mapped("bose", 9)
    expected = Fraction(15, 7) if system.n == 7 else Fraction(2)
    result = full_permutation_search(SearchTask(system, MIN_RATIO_SUM))
    assert result.value == expected
    assert sum_stats(system.relabeled(result.witness)).ratio_sum == expected
    assert reduced_maxmin_search(system).value == reference.n
