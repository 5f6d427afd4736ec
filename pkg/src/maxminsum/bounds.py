"""Closed-form bounds on block-sums of Steiner systems, in exact arithmetic."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional

from .design import (BlockLabeling, SteinerTripleSystem, dual_sum_stats, fraction_to_str,
                     sum_stats)


def _check_steiner_params(n: int, k: int, t: int) -> None:
    if not 2 <= t < k < n:
        raise ValueError(f"need 2 <= t < k < n, got n={n}, k={k}, t={t}")


def _check_sts_order(n: int) -> None:
    if n < 7 or n % 6 not in (1, 3):
        raise ValueError(f"no STS({n}) with n >= 7: n must be 1 or 3 mod 6")


def min_sum_upper_bound(n: int, k: int = 3, t: int = 2) -> Fraction:
    """Largest possible min-sum of an S(t, k, n)."""
    _check_steiner_params(n, k, t)
    return Fraction(n * (k - t + 1) + k * (t - 2), 2)


def max_sum_lower_bound(n: int, k: int = 3, t: int = 2) -> Fraction:
    """Smallest possible max-sum of an S(t, k, n)."""
    _check_steiner_params(n, k, t)
    return Fraction(n * k + n * t - n - k * t, 2)


def sts_difference_ratio_bounds(n: int) -> tuple[Fraction, Fraction]:
    """Lower bounds ``(n, 2)`` on the difference-sum and ratio-sum of any STS(n)."""
    _check_sts_order(n)
    return Fraction(n), Fraction(2)


def dual_min_sum_upper_bound(n: int) -> Fraction:
    """Average dual point-sum, which no block labeling's dual min-sum exceeds."""
    _check_sts_order(n)
    return Fraction((n - 1) * (n - 3) * (n + 2), 24)


@dataclass(frozen=True)
class BoundReport:
    name: str
    params: dict
    value: Fraction
    relation: str  # how the observed quantity must compare: '<=' or '>='
    observed: Optional[Fraction] = None
    satisfied: Optional[bool] = field(default=None)

    def to_json(self) -> dict:
        return {
            "name": self.name,
            "params": dict(self.params),
            "value": fraction_to_str(self.value),
            "relation": self.relation,
            "observed": None if self.observed is None else fraction_to_str(self.observed),
            "satisfied": self.satisfied,
        }


def _checked(name, params, value, relation, observed) -> BoundReport:
    if observed is None:
        return BoundReport(name, params, value, relation)
    observed = Fraction(observed)
    ok = observed <= value if relation == "<=" else observed >= value
    return BoundReport(name, params, value, relation, observed, ok)


def bound_reports(n: int, k: int = 3, t: int = 2,
                  system: SteinerTripleSystem | None = None,
                  labeling: BlockLabeling | None = None) -> list[BoundReport]:
    """Evaluate every bound for the given parameters.

    With ``system`` the STS-specific bounds are also checked against it; the
    dual bound is checked when ``labeling`` is given too. The difference/ratio
    and dual bounds apply to Steiner triple systems only (``k=3, t=2``).
    """
    if system is not None and (system.n != n or (k, t) != (3, 2)):
        raise ValueError("a concrete system can only be checked with its own n and k=3, t=2")
    stats = sum_stats(system) if system is not None else None
    params = {"n": n, "k": k, "t": t}
    reports = [
        _checked("min_sum_upper", params, min_sum_upper_bound(n, k, t), "<=",
                 stats and stats.min_sum),
        _checked("max_sum_lower", params, max_sum_lower_bound(n, k, t), ">=",
                 stats and stats.max_sum),
    ]
    if (k, t) == (3, 2):
        diff_lb, ratio_lb = sts_difference_ratio_bounds(n)
        reports.append(_checked("difference_sum_lower", {"n": n}, diff_lb, ">=",
                                stats and stats.difference_sum))
        reports.append(_checked("ratio_sum_lower", {"n": n}, ratio_lb, ">=",
                                stats and stats.ratio_sum))
        dual_obs = None
        if system is not None and labeling is not None:
            dual_obs = dual_sum_stats(system, labeling).min_sum
        reports.append(_checked("dual_min_sum_upper", {"n": n}, dual_min_sum_upper_bound(n), "<=",
                                dual_obs))
    return reports
