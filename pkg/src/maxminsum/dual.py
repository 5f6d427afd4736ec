"""Block orderings for Bose and Skolem systems and the closed forms for their
block labels and dual point-sums.

Every closed form here is evaluated with :class:`fractions.Fraction` and then
required to be integral; a non-integral value means a formula bug.
"""

from __future__ import annotations

import enum
from fractions import Fraction

from .constructions import (BlockTag, StructuredSystem, bose_op, skolem_op)
from .design import BlockLabeling


class FormulaRangeError(ValueError):
    """A closed form was requested outside the range where it holds."""


class OrderingScheme(enum.Enum):
    BOSE_YXI = "bose-yxi"
    BOSE_NATURAL = "bose-natural"
    SKOLEM_YXI = "skolem-yxi"
    SKOLEM_NATURAL = "skolem-natural"

    @property
    def construction(self) -> str:
        return self.value.split("-")[0]

    @property
    def is_yxi(self) -> bool:
        return self.value.endswith("yxi")

    @classmethod
    def for_system(cls, kind: str, order: str) -> OrderingScheme:
        return cls(f"{kind}-{order}")


def _integral(value: Fraction) -> int:
    if value.denominator != 1:
        raise ArithmeticError(f"closed form produced non-integer {value}")
    return value.numerator


def _tag_order(kind: str, m: int, scheme: OrderingScheme) -> list[BlockTag]:
    half = m // 2
    if kind == "bose":
        xs = range(m - 1, -1, -1) if scheme.is_yxi else range(m)
    else:
        xs = range(half)
    tags = [BlockTag(1, x) for x in xs]
    if scheme.is_yxi:
        pairs = [(x, y) for y in range(1, m) for x in range(y)]
    else:
        pairs = [(x, y) for x in range(m - 1) for y in range(x + 1, m)]
    tags += [BlockTag(2, x, y, i) for x, y in pairs for i in range(3)]
    if kind == "skolem":
        tags += [BlockTag(3, x, i=i) for x in range(half) for i in range(3)]
    return tags


def _skolem_infinity_label(n: int, x: int, i: int) -> int:
    base = n * (n - 1) // 6 - (n - 1) // 2
    sixth = (n - 1) // 6
    return base + (sixth + 2 * x, x, sixth + 2 * x + 1)[i]


def make_labeling(system: StructuredSystem, scheme: OrderingScheme) -> BlockLabeling:
    """Labels by position in the scheme's block order (the Skolem YXI blocks
    through infinity take their prescribed interleaved labels instead)."""
    if scheme.construction != system.kind:
        raise ValueError(f"scheme {scheme.value} does not apply to a {system.kind} system")
    index = system.index_of()
    labels = [0] * len(system.blocks)
    for position, tag in enumerate(_tag_order(system.kind, system.m, scheme)):
        if scheme is OrderingScheme.SKOLEM_YXI and tag.kind == 3:
            labels[index[tag]] = _skolem_infinity_label(system.n, tag.x, tag.i)
        else:
            labels[index[tag]] = position
    return BlockLabeling(tuple(labels))


def closed_form_block_label(scheme: OrderingScheme, tag: BlockTag, n: int) -> int:
    """Label of block ``tag`` under ``scheme``, by formula rather than counting."""
    kind = scheme.construction
    m = n // 3
    _check_tag(kind, tag, m)
    if kind == "bose":
        first = m - 1 - tag.x if scheme.is_yxi else tag.x
        type2_base = m
    else:
        first = tag.x
        type2_base = m // 2
    if tag.kind == 1:
        return first
    if tag.kind == 2:
        x, y, i = tag.x, tag.y, tag.i
        if scheme.is_yxi:
            return _integral(type2_base + i + 3 * x + Fraction(3, 2) * y * (y - 1))
        # pairs (x', y') preceding (x, y) in x-major order
        before = x * (m - 1) - x * (x - 1) // 2 + (y - x - 1)
        return type2_base + 3 * before + i
    if scheme.is_yxi:
        return _skolem_infinity_label(n, tag.x, tag.i)
    return n * (n - 1) // 6 - (n - 1) // 2 + 3 * tag.x + tag.i


def _check_tag(kind: str, tag: BlockTag, m: int) -> None:
    half = m // 2
    if tag.kind == 1:
        ok = 0 <= tag.x < (m if kind == "bose" else half)
    elif tag.kind == 2:
        ok = 0 <= tag.x < tag.y < m and 0 <= tag.i < 3
    elif tag.kind == 3:
        ok = kind == "skolem" and 0 <= tag.x < half and 0 <= tag.i < 3
    else:
        ok = False
    if not ok:
        raise ValueError(f"block tag {tag} is out of range for {kind} with m={m}")


def inverse_pairs(z: int, m: int, op: str) -> set[tuple[int, int]]:
    """All ``(x, y)``, ``x < y``, with ``x (+) y == z``, by the closed form."""
    if op == "bose":
        if m < 3 or m % 2 == 0:
            raise ValueError("Bose inverse pairs need odd m >= 3")
        if not 0 <= z < m:
            raise ValueError(f"z={z} outside [0, {m - 1}]")
        if 2 * z <= m - 1:
            return ({(x, 2 * z - x) for x in range(z)}
                    | {(x, 2 * z - x + m) for x in range(2 * z + 1, z + (m - 1) // 2 + 1)})
        return ({(x, 2 * z - x - m) for x in range(z - (m + 1) // 2 + 1)}
                | {(x, 2 * z - x) for x in range(2 * z - m + 1, z)})
    if op == "skolem":
        if m < 2 or m % 2:
            raise ValueError("Skolem inverse pairs need even m >= 2")
        if not 0 <= z < m:
            raise ValueError(f"z={z} outside [0, {m - 1}]")
        half = m // 2
        if z < half:
            return ({(x, 2 * z - x) for x in range(z)}
                    | {(x, 2 * z - x + m) for x in range(2 * z + 1, z + half)})
        return ({(x, 2 * z - x - m + 1) for x in range(z - half + 1)}
                | {(x, 2 * z - x + 1) for x in range(2 * z - m + 2, z + 1)})
    raise ValueError(f"unknown operation {op!r}")


def brute_force_inverse_pairs(z: int, m: int, op: str) -> set[tuple[int, int]]:
    fn = bose_op if op == "bose" else skolem_op
    return {(x, y) for x in range(m) for y in range(x + 1, m) if fn(x, y, m) == z}


def closed_form_dual_point_sum(scheme: OrderingScheme, z: int, i: int, n: int) -> int:
    """Sum of the labels of the blocks containing ``(z, i)`` under a YXI scheme."""
    if scheme is OrderingScheme.BOSE_YXI:
        m = n // 3
        if n % 6 != 3 or n < 9:
            raise ValueError(f"Bose needs n = 3 mod 6, n >= 9; got {n}")
    elif scheme is OrderingScheme.SKOLEM_YXI:
        m = (n - 1) // 3
        if n % 6 != 1 or n < 7:
            raise ValueError(f"Skolem needs n = 1 mod 6, n >= 7; got {n}")
    else:
        raise ValueError("closed-form dual point sums exist for the YXI schemes only")
    if not (0 <= z < m and 0 <= i < 3):
        raise ValueError(f"point ({z}, {i}) out of range for m={m}")
    j = (i - 1) % 3
    F = Fraction
    if scheme is OrderingScheme.BOSE_YXI:
        tail = F(64 * z**3 - 84 * z**2 - 158 * z - 16 * i - 8 * j - 25, 16)
        if 2 * z <= m - 1:
            value = (F(5, 144) * n**3 - F(6 * z + 15, 144) * n**2
                     - F(12 * z**2 - 84 * z - 16 * i - 8 * j - 25, 48) * n + tail)
        else:
            value = (F(1, 48) * n**3 + F(42 * z - 39, 144) * n**2
                     - F(84 * z**2 - 108 * z - 16 * i - 8 * j - 55, 48) * n + tail)
        return _integral(value)
    if 2 * z < m:
        value = (F(5, 144) * n**3 - F(2 * z + 7, 48) * n**2
                 - F(36 * z**2 - 228 * z - 3 - 48 * i - 24 * j, 144) * n
                 + F(576 * z**3 - 828 * z**2 - 1518 * z + 13 - 192 * i - 168 * j, 144)
                 + (F(n - 1, 6) + 2 * z, z, F(n - 1, 6) + 2 * z + 1)[j])
    else:
        value = (F(1, 48) * n**3 + F(14 * z - 5, 48) * n**2
                 - F(84 * z**2 + 4 * z - 47 - 16 * i - 8 * j, 48) * n
                 + F(192 * z**3 + 84 * z**2 - 346 * z - 187 - 64 * i - 8 * j, 48)
                 + (2 * z, z, 2 * z + 1)[i])
    return _integral(value)


# -- dual min/max-sum polynomials -------------------------------------------

def f_bose_yxi(n: int) -> int:
    m = n // 3
    F = Fraction
    if n % 6 == 3 and m % 4 == 1 and n >= 27:
        return _integral(F(55, 1728) * n**3 + F(1, 192) * n**2 - F(9, 64) * n - F(31, 64))
    if n % 6 == 3 and m % 4 == 3 and n >= 33:
        return _integral(F(55, 1728) * n**3 + F(1, 192) * n**2 - F(13, 64) * n + F(13, 64))
    raise FormulaRangeError(f"Bose YXI dual min-sum formula does not cover n={n}")


def g_bose_yxi(n: int) -> int:
    if n % 6 != 3 or n < 15:
        raise FormulaRangeError(f"Bose YXI dual max-sum formula does not cover n={n}")
    F = Fraction
    return _integral(F(31, 432) * n**3 - F(9, 16) * n**2 + F(35, 16) * n - F(55, 16))


def f_bose_natural(n: int) -> int:
    if n % 6 != 3 or n < 9:
        raise FormulaRangeError(f"Bose natural dual min-sum formula does not cover n={n}")
    F = Fraction
    return _integral(F(5, 432) * n**3 + F(19, 48) * n**2 - F(133, 48) * n + F(71, 16))


def f_skolem_yxi(n: int) -> int:
    m = (n - 1) // 3
    F = Fraction
    if n % 6 == 1 and m % 4 == 0 and n >= 13:
        return _integral(F(55, 1728) * n**3 - F(31, 576) * n**2 - F(137, 576) * n - F(1279, 1728))
    if n % 6 == 1 and m % 4 == 2 and n >= 7:
        return _integral(F(55, 1728) * n**3 - F(31, 576) * n**2 - F(173, 576) * n + F(1421, 1728))
    raise FormulaRangeError(f"Skolem YXI dual min-sum formula does not cover n={n}")


def g_skolem_yxi(n: int) -> int:
    if n % 6 != 1 or n < 7:
        raise FormulaRangeError(f"Skolem YXI dual max-sum formula does not cover n={n}")
    F = Fraction
    return _integral(F(1, 12) * n**3 - F(7, 24) * n**2 + F(1, 12) * n + F(1, 8))


def f_skolem_natural(n: int) -> int:
    if n % 6 != 1 or n < 7:
        raise FormulaRangeError(f"Skolem natural dual min-sum formula does not cover n={n}")
    F = Fraction
    return _integral(F(5, 432) * n**3 + F(55, 144) * n**2 - F(511, 144) * n + F(3523, 432))


_MIN_FORMULAS = {
    OrderingScheme.BOSE_YXI: f_bose_yxi,
    OrderingScheme.BOSE_NATURAL: f_bose_natural,
    OrderingScheme.SKOLEM_YXI: f_skolem_yxi,
    OrderingScheme.SKOLEM_NATURAL: f_skolem_natural,
}

_MAX_FORMULAS = {
    OrderingScheme.BOSE_YXI: g_bose_yxi,
    OrderingScheme.SKOLEM_YXI: g_skolem_yxi,
}


def dual_min_sum_formula(scheme: OrderingScheme, n: int) -> int:
    return _MIN_FORMULAS[scheme](n)


def dual_max_sum_formula(scheme: OrderingScheme, n: int) -> int:
    try:
        fn = _MAX_FORMULAS[scheme]
    except KeyError:
        raise FormulaRangeError(f"no closed-form dual max-sum for {scheme.value}") from None
    return fn(n)


def largest_labels_sum(n: int) -> int:
    """Sum of the ``(n-1)/2`` largest block labels of an STS(n)."""
    top = n * (n - 1) // 6
    r = (n - 1) // 2
    return sum(range(top - r, top))
