"""Glue shared by the CLI and the reproduction checks."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from .constructions import (INFINITY, StructuredSystem, apply_relabeling, construct,
                            identity_mapping, paper_mapping)
from .design import DesignFile, SteinerTripleSystem, dual_point_sums, fraction_to_str
from .bounds import dual_min_sum_upper_bound
from .dual import (FormulaRangeError, OrderingScheme, dual_max_sum_formula, dual_min_sum_formula,
                   make_labeling)

MAPPINGS = ("paper", "identity")
ORDERS = ("yxi", "natural")


def mapping_for(structured: StructuredSystem, mapping: str) -> dict:
    if mapping == "paper":
        return paper_mapping(structured)
    if mapping == "identity":
        return identity_mapping(structured)
    raise ValueError(f"unknown mapping {mapping!r}")


def generate_design(construction: str, n: int, mapping: str = "paper",
                    order: Optional[str] = None) -> DesignFile:
    """Constructed system in construction order; with ``order`` the chosen
    block labeling is attached explicitly."""
    structured = construct(construction, n)
    system = apply_relabeling(structured, mapping_for(structured, mapping))
    if order is None:
        return DesignFile(system)
    labeling = make_labeling(structured, OrderingScheme.for_system(construction, order))
    return DesignFile(system, labeling, explicit_labels=True)


@dataclass(frozen=True)
class DualReport:
    scheme: OrderingScheme
    n: int
    point_sums: tuple[int, ...]
    min_formula: Optional[int]
    max_formula: Optional[int]
    infinity_point: Optional[int]

    @property
    def dual_min_sum(self) -> int:
        return min(self.point_sums)

    @property
    def dual_max_sum(self) -> int:
        return max(self.point_sums)

    @property
    def min_matches(self) -> Optional[bool]:
        return None if self.min_formula is None else self.min_formula == self.dual_min_sum

    @property
    def max_matches(self) -> Optional[bool]:
        return None if self.max_formula is None else self.max_formula == self.dual_max_sum

    def to_json(self) -> dict:
        doc = {
            "scheme": self.scheme.value,
            "n": self.n,
            "dual_min_sum": self.dual_min_sum,
            "dual_max_sum": self.dual_max_sum,
            "dual_min_sum_formula": self.min_formula,
            "dual_max_sum_formula": self.max_formula,
            "min_matches": self.min_matches,
            "max_matches": self.max_matches,
            "dual_min_sum_upper_bound": fraction_to_str(dual_min_sum_upper_bound(self.n)),
            "argmax_points": [p for p, s in enumerate(self.point_sums) if s == self.dual_max_sum],
        }
        if self.infinity_point is not None:
            doc["infinity_point"] = self.infinity_point
        return doc


def _formula(fn, scheme: OrderingScheme, n: int) -> Optional[int]:
    try:
        return fn(scheme, n)
    except FormulaRangeError:
        return None


def dual_report(construction: str, n: int, order: str,
                mapping: str = "paper") -> tuple[DesignFile, DualReport]:
    structured = construct(construction, n)
    pi = mapping_for(structured, mapping)
    system = apply_relabeling(structured, pi)
    scheme = OrderingScheme.for_system(construction, order)
    labeling = make_labeling(structured, scheme)
    sums = tuple(dual_point_sums(system, labeling))
    report = DualReport(scheme, n, sums, _formula(dual_min_sum_formula, scheme, n),
                        _formula(dual_max_sum_formula, scheme, n),
                        pi[INFINITY] if construction == "skolem" else None)
    return DesignFile(system, labeling, explicit_labels=True), report


def constructed_orders(lo: int = 7, hi: int = 201) -> list[tuple[str, int]]:
    """Every (construction, n) with ``lo <= n <= hi`` the constructors accept."""
    out = []
    for n in range(lo, hi + 1):
        if n % 6 == 3 and n >= 9:
            out.append(("bose", n))
        elif n % 6 == 1 and n >= 7:
            out.append(("skolem", n))
    return out


def mapped_system(construction: str, n: int) -> SteinerTripleSystem:
    structured = construct(construction, n)
    return apply_relabeling(structured, paper_mapping(structured))
