"""Steiner triple systems on integer point sets, block-sum metrics, and the
JSON design file format."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path
from typing import Iterable, Sequence, Union

MAX_POINTS = 10_000
MAX_REPORTED_VIOLATIONS = 10

Block = tuple[int, int, int]


class DesignError(ValueError):
    """Base class for malformed or invalid designs."""


class MalformedBlockError(DesignError):
    """A block is not a set of three distinct in-range points."""


class NotSteinerError(DesignError):
    """A well-formed block list fails the Steiner triple system property."""

    def __init__(self, report: ValidityReport):
        self.report = report
        super().__init__("; ".join(v.message for v in report.violations) or "not an STS")


@dataclass(frozen=True)
class Violation:
    kind: str  # 'uncovered', 'multiply_covered', 'replication', 'block_count', 'order'
    subject: tuple[int, ...]
    count: int
    message: str


@dataclass(frozen=True)
class ValidityReport:
    ok: bool
    violations: tuple[Violation, ...] = ()
    violation_count: int = 0

    def to_json(self) -> dict:
        return {
            "ok": self.ok,
            "violation_count": self.violation_count,
            "violations": [
                {"kind": v.kind, "subject": list(v.subject), "count": v.count, "message": v.message}
                for v in self.violations
            ],
        }


def normalize_block(block: Sequence[int], n: int) -> Block:
    """Return ``block`` as a sorted triple, raising on structural problems."""
    pts = list(block)
    if len(pts) != 3:
        raise MalformedBlockError(f"block {pts} has {len(pts)} points, expected 3")
    for p in pts:
        if isinstance(p, bool) or not isinstance(p, int):
            raise MalformedBlockError(f"block {pts} contains non-integer point {p!r}")
        if not 0 <= p < n:
            raise MalformedBlockError(f"block {pts} has point {p} outside [0, {n - 1}]")
    a, b, c = sorted(pts)
    if a == b or b == c:
        raise MalformedBlockError(f"block {pts} repeats a point")
    return (a, b, c)


def _check_point_count(n: int) -> None:
    if isinstance(n, bool) or not isinstance(n, int) or n < 3:
        raise DesignError(f"point count must be an integer >= 3, got {n!r}")
    if n > MAX_POINTS:
        raise DesignError(f"point count {n} exceeds the supported maximum {MAX_POINTS}")


def verify_sts(n: int, blocks: Iterable[Sequence[int]]) -> ValidityReport:
    """Check that ``blocks`` form an STS(n).

    Structural defects (wrong block size, repeated or out-of-range points)
    raise :class:`MalformedBlockError`. Steiner-property failures are returned
    in the report, pair violations first in lexicographic pair order.
    """
    _check_point_count(n)
    normalized = [normalize_block(b, n) for b in blocks]

    pair_count = [[0] * n for _ in range(n)]
    replication = [0] * n
    for a, b, c in normalized:
        pair_count[a][b] += 1
        pair_count[a][c] += 1
        pair_count[b][c] += 1
        replication[a] += 1
        replication[b] += 1
        replication[c] += 1

    found: list[Violation] = []
    total = 0

    def add(v: Violation) -> None:
        nonlocal total
        total += 1
        if len(found) < MAX_REPORTED_VIOLATIONS:
            found.append(v)

    if n % 6 not in (1, 3):
        add(Violation("order", (n,), 0, f"no STS({n}) exists: n must be 1 or 3 mod 6"))
    for a in range(n):
        row = pair_count[a]
        for b in range(a + 1, n):
            cnt = row[b]
            if cnt == 0:
                add(Violation("uncovered", (a, b), 0, f"pair {{{a},{b}}} uncovered"))
            elif cnt > 1:
                add(Violation("multiply_covered", (a, b), cnt, f"pair {{{a},{b}}} covered {cnt} times"))
    for p in range(n):
        if 2 * replication[p] != n - 1:
            add(Violation("replication", (p,), replication[p],
                          f"point {p} lies in {replication[p]} blocks, expected (n-1)/2 = {(n - 1) / 2:g}"))
    expected = n * (n - 1) // 6
    if len(normalized) * 6 != n * (n - 1):
        add(Violation("block_count", (len(normalized),), expected,
                      f"{len(normalized)} blocks, expected n(n-1)/6 = {n * (n - 1) / 6:g}"))
    return ValidityReport(ok=total == 0, violations=tuple(found), violation_count=total)


@dataclass(frozen=True)
class SteinerTripleSystem:
    """An STS(n) on ``[0, n-1]``.

    Blocks are stored as sorted triples in the given order; that order is the
    construction order and is what the default (positional) labeling refers to.
    Construction validates the Steiner property.
    """

    n: int
    blocks: tuple[Block, ...]

    def __post_init__(self) -> None:
        _check_point_count(self.n)
        blocks = tuple(normalize_block(b, self.n) for b in self.blocks)
        object.__setattr__(self, "blocks", blocks)
        report = verify_sts(self.n, blocks)
        if not report.ok:
            raise NotSteinerError(report)

    @property
    def block_count(self) -> int:
        return len(self.blocks)

    @property
    def replication(self) -> int:
        return (self.n - 1) // 2

    def blocks_through(self, point: int) -> list[int]:
        """Indices of the blocks containing ``point``, ascending."""
        return [k for k, b in enumerate(self.blocks) if point in b]

    def relabeled(self, perm: Sequence[int]) -> SteinerTripleSystem:
        """Apply the point permutation ``p -> perm[p]``; block order is kept."""
        if sorted(perm) != list(range(self.n)):
            raise ValueError("relabeling must be a permutation of [0, n-1]")
        return SteinerTripleSystem(self.n, tuple(tuple(perm[p] for p in b) for b in self.blocks))


@dataclass(frozen=True)
class BlockLabeling:
    """Labels ``labels[k]`` for block ``k``; a permutation of ``[0, N-1]``."""

    labels: tuple[int, ...]

    def __post_init__(self) -> None:
        labels = tuple(self.labels)
        object.__setattr__(self, "labels", labels)
        if sorted(labels) != list(range(len(labels))):
            raise DesignError("block labels must be a permutation of [0, N-1]")

    @classmethod
    def positional(cls, count: int) -> BlockLabeling:
        return cls(tuple(range(count)))

    def __len__(self) -> int:
        return len(self.labels)

    def order(self) -> list[int]:
        """Block indices sorted by label."""
        inv = [0] * len(self.labels)
        for k, lab in enumerate(self.labels):
            inv[lab] = k
        return inv


@dataclass(frozen=True)
class SumStats:
    min_sum: int
    max_sum: int

    @property
    def difference_sum(self) -> int:
        return self.max_sum - self.min_sum

    @property
    def ratio_sum(self) -> Fraction:
        # max/min throughout; the other orientation is never used
        return Fraction(self.max_sum, self.min_sum)

    def to_json(self) -> dict:
        return {
            "min_sum": self.min_sum,
            "max_sum": self.max_sum,
            "difference_sum": self.difference_sum,
            "ratio_sum": fraction_to_str(self.ratio_sum),
        }


BlockSource = Union[SteinerTripleSystem, Iterable[Sequence[int]]]


def sum_stats(system: BlockSource) -> SumStats:
    """Min/max block-sums of a system or of a bare block list."""
    blocks = system.blocks if isinstance(system, SteinerTripleSystem) else list(system)
    if not blocks:
        raise DesignError("sum statistics need at least one block")
    sums = [sum(b) for b in blocks]
    return SumStats(min(sums), max(sums))


def dual_point_sums(system: SteinerTripleSystem, labeling: BlockLabeling) -> list[int]:
    """Per point, the sum of the labels of the blocks containing it."""
    if len(labeling) != system.block_count:
        raise DesignError(
            f"labeling has {len(labeling)} labels for {system.block_count} blocks")
    sums = [0] * system.n
    for (a, b, c), lab in zip(system.blocks, labeling.labels):
        sums[a] += lab
        sums[b] += lab
        sums[c] += lab
    return sums


def dual_sum_stats(system: SteinerTripleSystem, labeling: BlockLabeling) -> SumStats:
    sums = dual_point_sums(system, labeling)
    return SumStats(min(sums), max(sums))


def complement_relabel(system: SteinerTripleSystem) -> SteinerTripleSystem:
    """Map every point ``x`` to ``n-1-x``."""
    top = system.n - 1
    return SteinerTripleSystem(system.n, tuple(tuple(top - p for p in b) for b in system.blocks))


# -- exact rationals in JSON ------------------------------------------------

def fraction_to_str(value: Fraction | int) -> str:
    value = Fraction(value)
    return f"{value.numerator}/{value.denominator}"


def parse_fraction(value: object) -> Fraction:
    """Parse an integer or a ``"p/q"`` string. Floats are rejected."""
    if isinstance(value, bool):
        raise ValueError(f"not a rational: {value!r}")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        try:
            return Fraction(value.strip())
        except (ValueError, ZeroDivisionError) as exc:
            raise ValueError(f"not a rational: {value!r}") from exc
    raise ValueError(f"not a rational (floats are not accepted): {value!r}")


def dumps(obj: object) -> str:
    """Canonical JSON: sorted keys, fixed separators, trailing newline."""
    return json.dumps(obj, sort_keys=True) + "\n"


# -- design files -----------------------------------------------------------

@dataclass(frozen=True)
class DesignFile:
    system: SteinerTripleSystem
    labeling: BlockLabeling = field(default=None)  # type: ignore[assignment]
    explicit_labels: bool = False

    def __post_init__(self) -> None:
        if self.labeling is None:
            object.__setattr__(self, "labeling", BlockLabeling.positional(self.system.block_count))
        elif len(self.labeling) != self.system.block_count:
            raise DesignError("block_labels length does not match the block count")

    def to_json(self) -> dict:
        doc: dict = {"n": self.system.n, "blocks": [list(b) for b in self.system.blocks]}
        if self.explicit_labels:
            doc["block_labels"] = list(self.labeling.labels)
        return doc


def design_from_json(doc: object) -> DesignFile:
    if not isinstance(doc, dict):
        raise DesignError("design document must be a JSON object")
    if "n" not in doc or "blocks" not in doc:
        raise DesignError("design document needs 'n' and 'blocks'")
    n, blocks = doc["n"], doc["blocks"]
    if not isinstance(blocks, list) or not all(isinstance(b, list) for b in blocks):
        raise DesignError("'blocks' must be a list of 3-element lists")
    system = SteinerTripleSystem(n, tuple(tuple(b) for b in blocks))
    labels = doc.get("block_labels")
    if labels is None:
        return DesignFile(system)
    if not isinstance(labels, list) or not all(isinstance(x, int) and not isinstance(x, bool) for x in labels):
        raise DesignError("'block_labels' must be a list of integers")
    return DesignFile(system, BlockLabeling(tuple(labels)), explicit_labels=True)


def read_design(path: str | Path) -> DesignFile:
    try:
        doc = json.loads(Path(path).read_text())
    except json.JSONDecodeError as exc:
        raise DesignError(f"{path}: not valid JSON ({exc.msg} at line {exc.lineno})") from exc
    return design_from_json(doc)


def write_design(path: str | Path, design: DesignFile) -> None:
    Path(path).write_text(dumps(design.to_json()))
