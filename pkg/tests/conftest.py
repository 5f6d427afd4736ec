from __future__ import annotations

import itertools

import pytest

from maxminsum.constructions import apply_relabeling, construct, identity_mapping, paper_mapping
from maxminsum.design import SteinerTripleSystem

EXAMPLE_BOSE_9 = [(0, 6, 3), (1, 7, 4), (2, 8, 5), (0, 1, 8), (6, 7, 5), (3, 4, 2),
                  (0, 2, 7), (6, 8, 4), (3, 5, 1), (1, 2, 6), (7, 8, 3), (4, 5, 0)]


def mapped(kind: str, n: int) -> SteinerTripleSystem:
    s = construct(kind, n)
    return apply_relabeling(s, paper_mapping(s))


def unmapped(kind: str, n: int) -> SteinerTripleSystem:
    s = construct(kind, n)
    return apply_relabeling(s, identity_mapping(s))


def orders(lo: int, hi: int):
    """(kind, n) for every constructible n in [lo, hi]."""
    for n in range(lo, hi + 1):
        if n % 6 == 3 and n >= 9:
            yield "bose", n
        elif n % 6 == 1 and n >= 7:
            yield "skolem", n


def covered_pairs(blocks):
    """Pair -> number of blocks containing it, counted directly."""
    counts = {}
    for blk in blocks:
        for a, b in itertools.combinations(sorted(blk), 2):
            counts[a, b] = counts.get((a, b), 0) + 1
    return counts


def is_steiner(n, blocks) -> bool:
    counts = covered_pairs(blocks)
    return len(counts) == n * (n - 1) // 2 and all(v == 1 for v in counts.values())


@pytest.fixture(scope="session")
def example_bose_9():
    return SteinerTripleSystem(9, tuple(EXAMPLE_BOSE_9))


# criterion number -> (status, title, seconds); filled by test_acceptance.py
ACCEPTANCE: dict[int, tuple[str, str, float]] = {}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for num in sorted(ACCEPTANCE):
        status, title, seconds = ACCEPTANCE[num]
        terminalreporter.write_line(f"criterion {num:2d}: {status}  {title}  ({seconds:.2f}s)")
