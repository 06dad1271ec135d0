"""Exact Farey-fraction arithmetic.

An h-Farey fraction is a reduced fraction a/b with b <= h.  Two consecutive
h-Farey fractions a'/b' < a/b satisfy a*b' = a'*b + 1, so the gap (a'/b', a/b]
has width exactly 1/(b*b').  Everything here is exact: values are
`fractions.Fraction`, never floats.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import floor


def frac_part(x: Fraction) -> Fraction:
    """Fractional part {x} = x - floor(x), in [0, 1)."""
    return x - floor(x)


@dataclass(frozen=True)
class FareyInterval:
    """A gap (lower, upper] between consecutive h-Farey fractions."""

    h: int
    upper: Fraction
    lower: Fraction

    def __post_init__(self):
        a, b = self.upper.numerator, self.upper.denominator
        ap, bp = self.lower.numerator, self.lower.denominator
        if b > self.h or bp > self.h:
            raise ValueError(f"denominators {b}, {bp} exceed order {self.h}")
        if a * bp != ap * b + 1:
            raise ValueError(f"{self.lower} and {self.upper} are not consecutive")

    @property
    def width(self) -> Fraction:
        return Fraction(1, self.upper.denominator * self.lower.denominator)

    def __contains__(self, x) -> bool:
        return self.lower < x <= self.upper

    def __str__(self) -> str:
        return f"({self.lower}, {self.upper}]"


def farey_predecessor(f: Fraction, h: int) -> Fraction:
    """Largest h-Farey fraction strictly below the h-Farey fraction f.

    Computed via the modular inverse: b' is the unique solution of
    a*b' == 1 (mod b) in the range (h-b, h], and then a' = (a*b' - 1)/b.
    """
    if h < 1:
        raise ValueError(f"order must be >= 1, got {h}")
    if f <= 0:
        raise ValueError(f"need a positive fraction, got {f}")
    a, b = f.numerator, f.denominator
    if b > h:
        raise ValueError(f"{f} is not an h-Farey fraction for h={h}")
    if b == 1:
        bp = h
    else:
        inv = pow(a, -1, b)
        # unique representative of inv mod b inside (h-b, h]
        bp = inv + ((h - inv) // b) * b
    ap = (a * bp - 1) // b
    pred = Fraction(ap, bp)
    assert a * bp == ap * b + 1 and b + bp > h
    return pred


def farey_cover(x: Fraction, h: int) -> FareyInterval:
    """The h-Farey interval (a'/b', a/b] containing x > 0.

    The upper endpoint is the smallest h-Farey fraction >= x, found by
    Stern-Brocot descent; the lower endpoint is its predecessor.
    """
    if h < 1:
        raise ValueError(f"order must be >= 1, got {h}")
    if x <= 0:
        raise ValueError(f"need a positive value, got {x}")
    if x.denominator <= h:
        return FareyInterval(h, x, farey_predecessor(x, h))
    # x is strictly between two Stern-Brocot neighbours; descend until the
    # mediant denominator exceeds h, at which point (lo, hi] is the cover.
    n = floor(x)
    lo_n, lo_d = n, 1
    hi_n, hi_d = n + 1, 1
    while lo_d + hi_d <= h:
        med_n, med_d = lo_n + hi_n, lo_d + hi_d
        if med_n < x * med_d:
            lo_n, lo_d = med_n, med_d
        else:
            # mediants are already reduced, and x has denominator > h,
            # so equality cannot occur here
            hi_n, hi_d = med_n, med_d
    return FareyInterval(h, Fraction(hi_n, hi_d), Fraction(lo_n, lo_d))


def phi(i: int, interval: FareyInterval) -> Fraction:
    """phi_i = {-i*a/b} for the interval's upper endpoint a/b."""
    return frac_part(-i * interval.upper)


def phi_prime(i: int, interval: FareyInterval) -> Fraction:
    """phi'_i = {i*a'/b'} for the interval's lower endpoint a'/b'."""
    return frac_part(i * interval.lower)


def parse_fraction(text: str) -> Fraction:
    """Parse "a/b" or "a" into an exact fraction."""
    return Fraction(text.strip())


def render_fraction(f: Fraction) -> str:
    if f.denominator == 1:
        return str(f.numerator)
    return f"{f.numerator}/{f.denominator}"
