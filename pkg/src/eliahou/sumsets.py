"""Integer sets, h-fold sumsets and B_h sets.

A finite set D is a B_h set when all sums of h elements (with repetition)
are distinct, equivalently |hD| = multichoose(|D|, h).  Sets are plain
sorted tuples of ints; negative elements are allowed throughout.
"""

from __future__ import annotations

from itertools import combinations_with_replacement
from math import comb
from typing import Iterable


IntSet = tuple[int, ...]


def intset(elems: Iterable[int]) -> IntSet:
    """Sorted tuple of distinct integers."""
    return tuple(sorted(set(elems)))


def multichoose(n: int, h: int) -> int:
    """Number of multisets of size h over n symbols, C(n+h-1, h)."""
    if n < 0 or h < 0:
        raise ValueError(f"need nonnegative arguments, got ({n}, {h})")
    if n == 0:
        return 1 if h == 0 else 0
    return comb(n + h - 1, h)


def hfold_sumset(d: Iterable[int], h: int) -> IntSet:
    """All sums of h elements of d, repetition allowed; h=0 gives {0}."""
    if h < 0:
        raise ValueError(f"need h >= 0, got {h}")
    d = intset(d)
    if h == 0:
        return (0,)
    return intset(sum(c) for c in combinations_with_replacement(d, h))


def is_bh_set(d: Iterable[int], h: int) -> bool:
    """True when all h-fold sums of d are pairwise distinct up to order."""
    if h < 1:
        raise ValueError(f"need h >= 1, got {h}")
    d = intset(d)
    return len(hfold_sumset(d, h)) == multichoose(len(d), h)


def canonical_bh_set(size: int, h: int) -> IntSet:
    """First `size` terms of 0, 1, h+1, h^2+h+1, ...

    Term j >= 1 is (h^j - 1)/(h - 1); the result is always a B_h set.
    """
    if size < 1 or h < 1:
        raise ValueError(f"need size >= 1 and h >= 1, got ({size}, {h})")
    if h == 1:
        return tuple(range(size))
    terms = [0]
    for j in range(1, size):
        terms.append((h**j - 1) // (h - 1))
    return tuple(terms)


def parse_intset(text: str) -> IntSet:
    """Parse comma-separated integers, e.g. "0,1,5"."""
    return intset(int(p) for p in text.split(",") if p.strip())


def render_intset(d: Iterable[int]) -> str:
    return ",".join(str(x) for x in d)
