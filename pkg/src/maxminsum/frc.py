"""Fractional repetition code placements built from Steiner triple systems.

A placement stores chunks on nodes so that no two nodes share more than one
chunk and every chunk is replicated the same number of times. A failed node is
rebuilt by downloading each of its chunks from a different survivor.
"""

from __future__ import annotations

import json
from collections import defaultdict
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path
from typing import Optional, Sequence

from .design import BlockLabeling, SteinerTripleSystem, fraction_to_str, parse_fraction

BLOCKS_AS_NODES = "blocks"
DUAL_POINTS_AS_NODES = "dual"


class FrcError(ValueError):
    pass


class RepairInfeasibleError(FrcError):
    pass


@dataclass(frozen=True)
class FrcSystem:
    chunk_count: int
    placement: tuple[tuple[int, ...], ...]
    repair_degree: int
    popularity: tuple[Fraction, ...] = ()

    def __post_init__(self) -> None:
        placement = tuple(tuple(sorted(node)) for node in self.placement)
        object.__setattr__(self, "placement", placement)
        if not self.popularity:
            object.__setattr__(self, "popularity", tuple(Fraction(c) for c in range(self.chunk_count)))
        else:
            object.__setattr__(self, "popularity", tuple(Fraction(p) for p in self.popularity))
        if len(self.popularity) != self.chunk_count:
            raise FrcError(f"popularity has {len(self.popularity)} entries for {self.chunk_count} chunks")
        if any(p < 0 for p in self.popularity):
            raise FrcError("popularity scores must be nonnegative")
        for k, node in enumerate(placement):
            if len(set(node)) != len(node):
                raise FrcError(f"node {k} stores a chunk twice")
            if node and not (0 <= node[0] and node[-1] < self.chunk_count):
                raise FrcError(f"node {k} stores a chunk outside [0, {self.chunk_count - 1}]")
        reps = {len(h) for h in self.holders()}
        if len(reps) > 1:
            raise FrcError(f"chunks are replicated unevenly: {sorted(reps)}")
        shared = defaultdict(int)
        for h in self.holders():
            for a in range(len(h)):
                for b in range(a + 1, len(h)):
                    shared[h[a], h[b]] += 1
                    if shared[h[a], h[b]] > 1:
                        raise FrcError(f"nodes {h[a]} and {h[b]} share more than one chunk")

    @property
    def node_count(self) -> int:
        return len(self.placement)

    @property
    def repetition(self) -> int:
        return len(self.holders()[0]) if self.chunk_count else 0

    def holders(self) -> list[list[int]]:
        """Nodes storing each chunk, ascending."""
        out: list[list[int]] = [[] for _ in range(self.chunk_count)]
        for k, node in enumerate(self.placement):
            for c in node:
                out[c].append(k)
        return out

    def with_popularity(self, popularity: Sequence) -> FrcSystem:
        return FrcSystem(self.chunk_count, self.placement, self.repair_degree,
                         tuple(Fraction(p) for p in popularity))

    def to_json(self) -> dict:
        return {
            "chunk_count": self.chunk_count,
            "node_count": self.node_count,
            "placement": [list(node) for node in self.placement],
            "repair_degree": self.repair_degree,
            "repetition": self.repetition,
        }


def placement_from_design(system: SteinerTripleSystem, mode: str,
                          labeling: Optional[BlockLabeling] = None,
                          popularity: Optional[Sequence] = None) -> FrcSystem:
    """Placement with one node per block (chunks = points) or, in dual mode,
    one node per point storing the labels of its blocks (chunks = block labels)."""
    if mode == BLOCKS_AS_NODES:
        placement = tuple(system.blocks)
        chunks = system.n
    elif mode == DUAL_POINTS_AS_NODES:
        if labeling is None:
            raise FrcError("dual placement needs a block labeling")
        if len(labeling) != system.block_count:
            raise FrcError("labeling size does not match the block count")
        nodes: list[list[int]] = [[] for _ in range(system.n)]
        for k, blk in enumerate(system.blocks):
            for p in blk:
                nodes[p].append(labeling.labels[k])
        placement = tuple(tuple(node) for node in nodes)
        chunks = system.block_count
    else:
        raise FrcError(f"unknown placement mode {mode!r}")
    # every node holds the same number of chunks, one download each on repair
    degree = len(placement[0])
    return FrcSystem(chunks, placement, degree, tuple(popularity) if popularity is not None else ())


@dataclass(frozen=True)
class BalanceReport:
    node_sums: tuple[Fraction, ...]
    min_sum: Fraction
    max_sum: Fraction

    @property
    def spread(self) -> Fraction:
        return self.max_sum - self.min_sum

    @property
    def spread_ratio(self) -> Optional[Fraction]:
        return None if self.min_sum == 0 else self.max_sum / self.min_sum

    def to_json(self) -> dict:
        ratio = self.spread_ratio
        return {
            "node_sums": [fraction_to_str(s) for s in self.node_sums],
            "min": fraction_to_str(self.min_sum),
            "max": fraction_to_str(self.max_sum),
            "spread": fraction_to_str(self.spread),
            "spread_ratio": None if ratio is None else fraction_to_str(ratio),
        }


def balance_report(frc: FrcSystem) -> BalanceReport:
    if not frc.placement:
        raise FrcError("placement has no nodes")
    sums = tuple(sum((frc.popularity[c] for c in node), Fraction(0)) for node in frc.placement)
    return BalanceReport(sums, min(sums), max(sums))


@dataclass(frozen=True)
class RepairTranscript:
    failed_node: int
    downloads: tuple[tuple[int, int], ...]  # (chunk, donor node)
    distinct_donors: bool
    reconstructed: tuple[int, ...]

    @property
    def donors(self) -> list[int]:
        return [d for _, d in self.downloads]

    def to_json(self) -> dict:
        return {
            "failed_node": self.failed_node,
            "downloads": [{"chunk": c, "donor": d} for c, d in self.downloads],
            "distinct_donors": self.distinct_donors,
            "reconstructed": list(self.reconstructed),
        }


def _max_matching(options: list[list[int]]) -> list[int]:
    """Augmenting-path bipartite matching; ``options[j]`` lists the right
    vertices left vertex ``j`` may use. Returns the match (-1 if unmatched)."""
    owner: dict[int, int] = {}

    def augment(j: int, seen: set[int]) -> bool:
        for v in options[j]:
            if v in seen:
                continue
            seen.add(v)
            if v not in owner or augment(owner[v], seen):
                owner[v] = j
                return True
        return False

    for j in range(len(options)):
        augment(j, set())
    match = [-1] * len(options)
    for v, j in owner.items():
        match[j] = v
    return match


def simulate_repair(frc: FrcSystem, failed_node: int) -> RepairTranscript:
    """Rebuild ``failed_node`` with one download per lost chunk, using distinct
    donors whenever a perfect matching of chunks to survivors exists."""
    if not 0 <= failed_node < frc.node_count:
        raise FrcError(f"node {failed_node} outside [0, {frc.node_count - 1}]")
    lost = frc.placement[failed_node]
    holders = frc.holders()
    options = []
    for c in lost:
        survivors = [k for k in holders[c] if k != failed_node]
        if not survivors:
            raise RepairInfeasibleError(f"chunk {c} has no surviving copy")
        options.append(survivors)
    match = _max_matching(options)
    distinct = all(v >= 0 for v in match)
    downloads = tuple((c, v if v >= 0 else opts[0]) for c, v, opts in zip(lost, match, options))
    rebuilt = tuple(sorted(c for c, donor in downloads if c in frc.placement[donor]))
    if rebuilt != lost:
        raise RuntimeError("repair transcript does not reproduce the failed node")
    return RepairTranscript(failed_node, downloads, distinct, rebuilt)


def load_popularity(path: str | Path) -> list[Fraction]:
    """Read a JSON array of integers or "p/q" strings."""
    try:
        doc = json.loads(Path(path).read_text())
    except json.JSONDecodeError as exc:
        raise FrcError(f"{path}: not valid JSON ({exc.msg})") from exc
    if not isinstance(doc, list):
        raise FrcError("popularity file must hold a JSON array")
    return [parse_fraction(v) for v in doc]
