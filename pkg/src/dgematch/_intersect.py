"""Sorted-sequence intersection used by the index builder and the search core."""

from __future__ import annotations

from bisect import bisect_left
from typing import Sequence

# length ratio above which the shorter list is galloped into the longer one
GALLOP_RATIO = 32


def merge_intersect(a: Sequence[int], b: Sequence[int]) -> list[int]:
    out = []
    i = j = 0
    na, nb = len(a), len(b)
    while i < na and j < nb:
        x, y = a[i], b[j]
        if x < y:
            i += 1
        elif y < x:
            j += 1
        else:
            out.append(x)
            i += 1
            j += 1
    return out


def gallop_intersect(small: Sequence[int], large: Sequence[int]) -> list[int]:
    out = []
    lo = 0
    n = len(large)
    for x in small:
        # exponential probe then binary search within the bracket
        step = 1
        hi = lo
        while hi < n and large[hi] < x:
            lo = hi + 1
            hi += step
            step <<= 1
        lo = bisect_left(large, x, lo, min(hi + 1, n))
        if lo == n:
            break
        if large[lo] == x:
            out.append(x)
            lo += 1
    return out


def intersect_sorted(a: Sequence[int], b: Sequence[int]) -> list[int]:
    """Intersection of two strictly ascending sequences, ascending."""
    if len(a) > len(b):
        a, b = b, a
    if not a:
        return []
    if len(b) > GALLOP_RATIO * len(a):
        return gallop_intersect(a, b)
    return merge_intersect(a, b)
