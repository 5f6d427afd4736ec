from __future__ import annotations

from fractions import Fraction

import pytest

from conftest import mapped, orders
from maxminsum.bounds import (bound_reports, dual_min_sum_upper_bound, max_sum_lower_bound,
                              min_sum_upper_bound, sts_difference_ratio_bounds)
from maxminsum.design import BlockLabeling


@pytest.mark.parametrize("n", [7, 9, 13, 15, 99])
def test_sts_bounds_in_n(n):
    assert min_sum_upper_bound(n) == n
    assert max_sum_lower_bound(n) == 2 * n - 3
    assert min_sum_upper_bound(n) + max_sum_lower_bound(n) == 3 * n - 3


def test_substitutions():
    assert min_sum_upper_bound(13, 3, 2) == 13
    assert max_sum_lower_bound(9, 3, 2) == 15
    assert min_sum_upper_bound(20, 4, 3) == 22
    assert max_sum_lower_bound(20, 4, 3) == 3 * 20 - 6


def test_bounds_are_exact_rationals():
    value = min_sum_upper_bound(9, 5, 3)
    assert isinstance(value, Fraction)
    assert value == Fraction(9 * 3 + 5, 2)


@pytest.mark.parametrize("args", [(9, 3, 3), (9, 2, 2), (4, 5, 2), (9, 3, 1)])
def test_invalid_parameters(args):
    with pytest.raises(ValueError):
        min_sum_upper_bound(*args)
    with pytest.raises(ValueError):
        max_sum_lower_bound(*args)


def test_difference_ratio_constants():
    assert sts_difference_ratio_bounds(9) == (9, 2)
    with pytest.raises(ValueError):
        sts_difference_ratio_bounds(11)


def test_dual_bound_values():
    assert dual_min_sum_upper_bound(9) == 22
    assert dual_min_sum_upper_bound(15) == 119
    with pytest.raises(ValueError):
        dual_min_sum_upper_bound(10)


def test_dual_bound_is_the_average_point_sum():
    for kind, n in orders(7, 61):
        blocks = n * (n - 1) // 6
        assert dual_min_sum_upper_bound(n) == Fraction(3 * blocks * (blocks - 1) // 2, n)


def test_reports_without_system():
    reports = bound_reports(9)
    assert [r.name for r in reports] == ["min_sum_upper", "max_sum_lower", "difference_sum_lower",
                                         "ratio_sum_lower", "dual_min_sum_upper"]
    assert all(r.satisfied is None for r in reports)
    assert len(bound_reports(20, 4, 3)) == 2


def test_reports_against_example(example_bose_9):
    reports = bound_reports(9, system=example_bose_9, labeling=BlockLabeling.positional(12))
    assert all(r.satisfied for r in reports)
    doc = {r.name: r.to_json() for r in reports}
    assert doc["dual_min_sum_upper"]["observed"] == "20/1"
    assert doc["ratio_sum_lower"]["observed"] == "2/1"


def test_reports_reject_mismatched_system(example_bose_9):
    with pytest.raises(ValueError):
        bound_reports(13, system=example_bose_9)


@pytest.mark.parametrize("kind,n", list(orders(7, 61)))
def test_constructed_systems_satisfy_bounds(kind, n):
    reports = bound_reports(n, system=mapped(kind, n))
    assert all(r.satisfied for r in reports if r.observed is not None)
