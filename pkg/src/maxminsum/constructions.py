"""Bose and Skolem triple systems over structured points ``(x, i)``, and the
point relabelings that make them MaxMin (min-sum equal to ``n``)."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping, NamedTuple, Union

from .design import SteinerTripleSystem


class ConstructionError(ValueError):
    pass


class _Infinity:
    """The extra point of a Skolem system."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self) -> str:
        return "INFINITY"

    def __reduce__(self):
        return (_Infinity, ())


INFINITY = _Infinity()


class Pt(NamedTuple):
    x: int
    i: int


StructuredPoint = Union[Pt, _Infinity]


class BlockTag(NamedTuple):
    """Identifies a structured block.

    ``kind`` 1 is ``B_x``; kind 2 is ``B_{x,y,i}``; kind 3 (Skolem only) is
    ``B_{x,i}``, the block through infinity. Unused fields are -1.
    """

    kind: int
    x: int
    y: int = -1
    i: int = -1


@dataclass(frozen=True)
class StructuredBlock:
    tag: BlockTag
    members: tuple[StructuredPoint, StructuredPoint, StructuredPoint]


@dataclass(frozen=True)
class StructuredSystem:
    """A Bose (``kind='bose'``) or Skolem (``kind='skolem'``) system before
    relabeling. Blocks are in construction order: type 1 by ``x``, type 2 in
    YXI order (``y`` outer, then ``x``, then ``i``), then for Skolem type 3
    with ``x`` outer and ``i`` inner."""

    kind: str
    n: int
    m: int
    blocks: tuple[StructuredBlock, ...]

    def points(self) -> list[StructuredPoint]:
        pts: list[StructuredPoint] = [Pt(x, i) for i in range(3) for x in range(self.m)]
        if self.kind == "skolem":
            pts.append(INFINITY)
        return pts

    def index_of(self) -> dict[BlockTag, int]:
        return {b.tag: k for k, b in enumerate(self.blocks)}


def _check_operands(x: int, y: int, m: int) -> None:
    if not (0 <= x < m and 0 <= y < m):
        raise ConstructionError(f"operands ({x}, {y}) outside [0, {m - 1}]")


def bose_op(x: int, y: int, m: int) -> int:
    """The idempotent commutative quasigroup ``(m+1)/2 * (x+y) mod m``, m odd."""
    if m < 1 or m % 2 == 0:
        raise ConstructionError(f"Bose operation needs odd m, got {m}")
    _check_operands(x, y, m)
    return (m + 1) // 2 * (x + y) % m


def skolem_op(x: int, y: int, m: int) -> int:
    """The half-idempotent commutative quasigroup used by Skolem, m even."""
    if m < 2 or m % 2:
        raise ConstructionError(f"Skolem operation needs even m, got {m}")
    _check_operands(x, y, m)
    r = (x + y) % m
    return r // 2 if r % 2 == 0 else (r + m - 1) // 2


def _type2_blocks(m: int, op) -> list[StructuredBlock]:
    out = []
    for y in range(1, m):
        for x in range(y):
            z = op(x, y, m)
            for i in range(3):
                out.append(StructuredBlock(BlockTag(2, x, y, i), (Pt(x, i), Pt(y, i), Pt(z, (i + 1) % 3))))
    return out


def construct_bose(n: int) -> StructuredSystem:
    if n < 9 or n % 6 != 3:
        raise ConstructionError(f"Bose construction needs n = 3 mod 6 and n >= 9, got {n}")
    m = n // 3
    blocks = [StructuredBlock(BlockTag(1, x), (Pt(x, 0), Pt(x, 1), Pt(x, 2))) for x in range(m)]
    blocks += _type2_blocks(m, bose_op)
    return StructuredSystem("bose", n, m, tuple(blocks))


def construct_skolem(n: int) -> StructuredSystem:
    if n < 7 or n % 6 != 1:
        raise ConstructionError(f"Skolem construction needs n = 1 mod 6 and n >= 7, got {n}")
    m = (n - 1) // 3
    half = m // 2
    blocks = [StructuredBlock(BlockTag(1, x), (Pt(x, 0), Pt(x, 1), Pt(x, 2))) for x in range(half)]
    blocks += _type2_blocks(m, skolem_op)
    for x in range(half):
        for i in range(3):
            blocks.append(StructuredBlock(BlockTag(3, x, i=i), (INFINITY, Pt(x + half, i), Pt(x, (i + 1) % 3))))
    return StructuredSystem("skolem", n, m, tuple(blocks))


def construct(kind: str, n: int) -> StructuredSystem:
    if kind == "bose":
        return construct_bose(n)
    if kind == "skolem":
        return construct_skolem(n)
    raise ConstructionError(f"unknown construction {kind!r}")


PointRelabeling = Mapping[StructuredPoint, int]


def bose_mapping(m: int) -> dict[StructuredPoint, int]:
    """The relabeling giving the Bose system min-sum ``n = 3m``."""
    if m < 3 or m % 2 == 0:
        raise ConstructionError(f"Bose mapping needs odd m >= 3, got {m}")
    n = 3 * m
    pi: dict[StructuredPoint, int] = {}
    for x in range(m):
        pi[Pt(x, 0)] = x
        # 0 (+) y = x  <=>  y = 2x mod m
        pi[Pt(x, 1)] = 2 * m if x == 0 else n - (2 * x) % m
        pi[Pt(x, 2)] = m if x == 0 else m + bose_op(0, m - x, m)
    return pi


def skolem_mapping(m: int) -> dict[StructuredPoint, int]:
    """The relabeling giving the Skolem system min-sum ``n = 3m + 1``."""
    if m < 2 or m % 2:
        raise ConstructionError(f"Skolem mapping needs even m >= 2, got {m}")
    half = m // 2
    # y -> (m-1) (+) y is a bijection on [0, m-1]; invert it by table
    inv_from_top = {skolem_op(m - 1, y, m): y for y in range(m)}
    pi: dict[StructuredPoint, int] = {INFINITY: m}
    for x in range(m):
        pi[Pt(x, 0)] = m - 1 - x
        pi[Pt(x, 1)] = 2 * m + 1 if x == half - 1 else 2 * m + 2 + inv_from_top[x]
        pi[Pt(x, 2)] = m + 1 + skolem_op(0, x, m)
    return pi


def paper_mapping(system: StructuredSystem) -> dict[StructuredPoint, int]:
    return bose_mapping(system.m) if system.kind == "bose" else skolem_mapping(system.m)


def identity_mapping(system: StructuredSystem) -> dict[StructuredPoint, int]:
    """``(x, i) -> x + i*m``, with infinity (Skolem) last."""
    pi: dict[StructuredPoint, int] = {Pt(x, i): x + i * system.m for i in range(3) for x in range(system.m)}
    if system.kind == "skolem":
        pi[INFINITY] = 3 * system.m
    return pi


def apply_relabeling(system: StructuredSystem, mapping: PointRelabeling) -> SteinerTripleSystem:
    """Flatten to an integer STS, keeping construction order."""
    pts = system.points()
    missing = [p for p in pts if p not in mapping]
    if missing:
        raise ConstructionError(f"relabeling misses point {missing[0]!r}")
    image = sorted(mapping[p] for p in pts)
    if image != list(range(system.n)):
        raise ConstructionError("relabeling is not a bijection onto [0, n-1]")
    return SteinerTripleSystem(
        system.n, tuple(tuple(mapping[p] for p in b.members) for b in system.blocks))
