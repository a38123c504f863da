"""
Bitmask helpers.

Subsets of a finite ground set ``0..n-1`` are plain Python ints; bit ``i`` is set
iff element ``i`` is a member.

"""
from typing import Iterable, Iterator


def mask_of(indices: Iterable[int]) -> int:
    mask = 0
    for i in indices:
        mask |= 1 << i
    return mask


def members(mask: int) -> Iterator[int]:
    """Yield the set bits of ``mask`` in ascending order."""
    i = 0
    while mask:
        if mask & 1:
            yield i
        mask >>= 1
        i += 1


def full_mask(n: int) -> int:
    return (1 << n) - 1
