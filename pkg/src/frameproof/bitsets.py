"""Bitmask helpers shared by the set-family, matrix and code modules.

Subsets of the ground set [n] = {1, ..., n} are packed into Python ints:
element i occupies bit i-1, so n is bounded only by memory.
"""

from __future__ import annotations

from typing import Iterable, Iterator, Tuple


def mask_from_elements(elements: Iterable[int], n: int) -> int:
    """Pack 1-based elements of [n] into a mask."""
    mask = 0
    for e in elements:
        if not 1 <= e <= n:
            raise ValueError(f"element {e} outside [1, {n}]")
        mask |= 1 << (e - 1)
    return mask


def elements_from_mask(mask: int) -> Tuple[int, ...]:
    """Unpack a mask into sorted 1-based elements."""
    out = []
    i = 1
    while mask:
        if mask & 1:
            out.append(i)
        mask >>= 1
        i += 1
    return tuple(out)


def full_mask(n: int) -> int:
    return (1 << n) - 1


def is_subset(a: int, b: int) -> bool:
    """a subseteq b as masks."""
    return a & ~b == 0


def iter_fixed_size_submasks(mask: int, k: int) -> Iterator[int]:
    """All k-element submasks of mask, in lexicographic order of element tuples."""
    bits = [1 << (e - 1) for e in elements_from_mask(mask)]
    if k > len(bits):
        return
    if k == 0:
        yield 0
        return

    def rec(start: int, chosen: int, left: int) -> Iterator[int]:
        if left == 0:
            yield chosen
            return
        for i in range(start, len(bits) - left + 1):
            yield from rec(i + 1, chosen | bits[i], left - 1)

    yield from rec(0, 0, k)
