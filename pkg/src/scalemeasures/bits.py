"""Bitmask helpers for sets over an ordered ground list.

Bit k of a mask stands for position k in the declared order, so position 0
is the most significant element in the lectic sense used throughout.
"""

from __future__ import annotations

from collections.abc import Iterable, Iterator


def mask_of(indices: Iterable[int]) -> int:
    m = 0
    for i in indices:
        m |= 1 << i
    return m


def iter_bits(mask: int) -> Iterator[int]:
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def is_subset(a: int, b: int) -> bool:
    return a & ~b == 0


def lectic_key(mask: int, size: int) -> int:
    """Sort key under which earlier positions weigh more than later ones."""
    key = 0
    for i in iter_bits(mask):
        key |= 1 << (size - 1 - i)
    return key


def names_of(mask: int, order: tuple[str, ...]) -> tuple[str, ...]:
    return tuple(order[i] for i in iter_bits(mask))
