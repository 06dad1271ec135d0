"""Numerical semigroups with an explicit conductor: the ground-truth oracle.

A semigroup <m, g1, ..., g_{l-1}>_c is generated by its left generators
together with every integer >= c.  Everything below is computed directly
from a membership table (dynamic programming over [0, c+2m)), so this
module serves as the brute-force reference that the closed forms and the
bitfield explorer are checked against.

Parameter names follow the standard ones for the Wilf conjecture:
k (rank), l and r (left/right generators), e = l + r, g = c - k (genus),
q = ceil(c/m) (depth), rho = q*m - c, s = m - r, W = k*e - c and the
Eliahou number E = k*l - q*s + rho = k*l + q*r - c.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations_with_replacement
from typing import Iterable, Optional

from .farey import FareyInterval, farey_cover
from .sumsets import IntSet, hfold_sumset, intset


class Semigroup:
    """Immutable semigroup <m, gens>_c with membership decided up to c+2m.

    The table extends past the critical interval [c, c+m) so that sums just
    beyond the window (needed for the nearly-regular classification) are
    visible.  Input generators that are not primitive are dropped and
    recorded in `dropped_gens`.
    """

    __slots__ = (
        "m", "c", "input_gens", "left_gens", "dropped_gens",
        "left_elements", "right_gens", "canonically_defined",
        "_reach", "_double", "limit",
    )

    def __init__(self, m: int, gens: Iterable[int], c: int):
        gens = intset(gens)
        if m < 2:
            raise ValueError(f"multiplicity must be >= 2, got {m}")
        if c < m:
            raise ValueError(f"conductor {c} below multiplicity {m}")
        for g in gens:
            if not m < g < c:
                raise ValueError(f"generator {g} outside ({m}, {c})")
        self.m = m
        self.c = c
        self.input_gens = gens
        self.limit = c + 2 * m

        # reach[x]: x is a sum of generators (ignoring the >= c tail)
        reach = bytearray(self.limit)
        reach[0] = 1
        all_gens = (m,) + gens
        for x in range(m, self.limit):
            for g in all_gens:
                if g <= x and reach[x - g]:
                    reach[x] = 1
                    break
        self._reach = reach

        self.left_elements = tuple(x for x in range(c) if reach[x])

        # double[x]: x is a sum of two nonzero left elements
        double = bytearray(self.limit)
        lnz = self.left_elements[1:]
        for i, y in enumerate(lnz):
            for z in lnz[i:]:
                t = y + z
                if t >= self.limit:
                    break
                double[t] = 1
        self._double = double

        self.left_gens = tuple(x for x in lnz if not double[x])
        self.dropped_gens = tuple(g for g in gens if double[g])
        self.right_gens = tuple(x for x in range(c, c + m) if not double[x])
        self.canonically_defined = not self.dropped_gens and not reach[c - 1]

    def __contains__(self, x: int) -> bool:
        if x < 0:
            return False
        if x >= self.c:
            return True
        return bool(self._reach[x])

    def is_double(self, x: int) -> bool:
        """x is a sum of two nonzero left elements (x < c + 2m)."""
        if not 0 <= x < self.limit:
            raise ValueError(f"{x} outside the membership table [0, {self.limit})")
        return bool(self._double[x])

    @property
    def gamma(self) -> IntSet:
        """Left generators other than m."""
        return self.left_gens[1:] if self.left_gens and self.left_gens[0] == self.m else self.left_gens

    def key(self) -> tuple:
        return (self.m, self.left_gens, self.c)

    def __eq__(self, other) -> bool:
        return isinstance(other, Semigroup) and self.key() == other.key()

    def __hash__(self) -> int:
        return hash(self.key())

    def __repr__(self) -> str:
        return f"Semigroup({render_semigroup(self)!r})"


def semigroup_from(m: int, gens: Iterable[int], c: int) -> Semigroup:
    """Build <m, gens>_c; non-primitive input generators are dropped."""
    return Semigroup(m, gens, c)


@dataclass(frozen=True)
class Params:
    m: int
    c: int
    k: int
    l: int
    r: int
    e: int
    g: int
    q: int
    rho: int
    s: int


def params(s: Semigroup) -> Params:
    k = len(s.left_elements)
    l = len(s.left_gens)
    r = len(s.right_gens)
    q = -(-s.c // s.m)
    rho = q * s.m - s.c
    assert 0 <= rho < s.m
    return Params(m=s.m, c=s.c, k=k, l=l, r=r, e=l + r, g=s.c - k,
                  q=q, rho=rho, s=s.m - r)


@dataclass(frozen=True)
class EliahouRecord:
    e_value: int
    w_value: int
    e0: Optional[Fraction] = None


def numbers(s: Semigroup) -> EliahouRecord:
    """Wilf and Eliahou numbers, computed by both defining formulas."""
    p = params(s)
    e_sub = p.k * p.l - p.q * p.s + p.rho
    e_gen = p.k * p.l + p.q * p.r - p.c
    assert e_sub == e_gen, f"Eliahou formulas disagree: {e_sub} != {e_gen}"
    w = p.k * p.e - p.c
    # k >= q forces W >= E, which is why E >= 0 certifies the Wilf conjecture
    assert w >= e_gen
    return EliahouRecord(e_value=e_gen, w_value=w)


def representation_count(s: Semigroup, x: int, h_max: int) -> int:
    """Distinct multisets (j copies of m) + (<= h_max elements of gamma) summing to x."""
    gam = s.gamma
    count = 0
    for size in range(h_max + 1):
        for combo in combinations_with_replacement(gam, size):
            sigma = sum(combo)
            if sigma <= x and (x - sigma) % s.m == 0:
                count += 1
    return count


@dataclass(frozen=True)
class ClassificationRecord:
    h: int
    h_regular: bool
    nearly_h_regular: bool
    overflow: int                 # elements of h*gamma at or beyond c+m
    collision_free: bool
    short: bool
    split: bool
    omega: int                    # long (i, lambda) pairs, i < h
    omega_window: int             # distinct window positions hit by long pairs
    collisions: int               # unordered pairs of colliding multisets
    collision_excess: int         # sum over residues of (class size - 1)
    primitive_collisions: int
    farey: FareyInterval


def _multisets_mod_m(gam: IntSet, h: int, m: int) -> dict:
    """Group all multisets over gam of size <= h by their sum modulo m."""
    classes: dict[int, list] = {}
    for size in range(h + 1):
        for combo in combinations_with_replacement(gam, size):
            classes.setdefault(sum(combo) % m, []).append(combo)
    return classes


def _submultisets(t: tuple) -> set:
    subs = {()}
    for x in t:
        subs |= {tuple(sorted(u + (x,))) for u in subs}
    return subs


def _pair_is_primitive(t1: tuple, t2: tuple, m: int) -> bool:
    """No proper sub-pair of (t1, t2) already collides modulo m."""
    subs1 = sorted(_submultisets(t1), key=len)
    subs2 = sorted(_submultisets(t2), key=len)
    for u1 in subs1:
        r1 = sum(u1) % m
        for u2 in subs2:
            if u1 == u2:
                continue
            if (u1, u2) == (t1, t2) or (u2, u1) == (t1, t2):
                continue
            if sum(u2) % m == r1:
                return False
    return True


def _arcs_mod_m(start, length, m) -> list:
    """Split the interval [start, start+length) into arcs of the circle Z/m."""
    if length <= 0:
        return []
    if length >= m:
        return [(Fraction(0), Fraction(m))]
    s0 = start - m * (start // m)
    end = s0 + length
    if end <= m:
        return [(Fraction(s0), Fraction(end))]
    return [(Fraction(s0), Fraction(m)), (Fraction(0), Fraction(end - m))]


def classify(s: Semigroup, h: int) -> ClassificationRecord:
    """Brute-force classification relative to the h-fold sumsets of gamma."""
    if h < 2:
        raise ValueError(f"need h >= 2, got {h}")
    if not s.canonically_defined:
        raise ValueError(f"{render_semigroup(s)} is not canonically defined")
    gam = s.gamma
    if not gam:
        raise ValueError("classification needs at least two left generators")
    m, c = s.m, s.c
    l = len(s.left_gens)

    interval = farey_cover(Fraction(c + m, h * m), h)
    ap, bp = interval.lower.numerator, interval.lower.denominator

    isums = [hfold_sumset(gam, i) for i in range(h + 1)]

    top = isums[h]
    h_regular = all(c <= lam < c + m for lam in top)
    overflow = sum(1 for lam in top if lam >= c + m)
    nearly = (all(c <= lam < c + 2 * m for lam in top)
              and overflow <= -(-l // 2))

    # short/long elements against the lower bound floor((h-i) a'/b')
    omega = 0
    long_positions = set()
    short = True
    for i in range(h):
        lbound = (h - i) * ap // bp
        for lam in isums[i]:
            lifted = -((lam - c) // m)  # ceil((c - lam)/m)
            if lifted != lbound:
                short = False
            if lifted > lbound:
                omega += 1
                long_positions.add((lam - c) % m)

    # split: the intervals U_i = [i*gamma1, i(c+m)/h) pairwise disjoint mod m
    gamma1 = gam[0]
    pieces = [[(Fraction(0), None)]]  # U_0 = {0}, a single point
    for i in range(1, h + 1):
        start = i * gamma1
        length = Fraction(i * (c + m), h) - start
        pieces.append(_arcs_mod_m(start, length, m))
    split = True
    for i in range(h + 1):
        for j in range(i + 1, h + 1):
            for a1, b1 in pieces[i]:
                for a2, b2 in pieces[j]:
                    if b1 is None and b2 is None:
                        overlap = a1 == a2
                    elif b1 is None:
                        overlap = a2 <= a1 < b2
                    elif b2 is None:
                        overlap = a1 <= a2 < b1
                    else:
                        overlap = a1 < b2 and a2 < b1
                    if overlap:
                        split = False

    # collisions: pairs of multisets of size <= h over gamma, equal sums mod m
    classes = _multisets_mod_m(gam, h, m)
    collisions = 0
    excess = 0
    primitive = 0
    for members in classes.values():
        n = len(members)
        if n < 2:
            continue
        collisions += n * (n - 1) // 2
        excess += n - 1
        for a in range(n):
            for b in range(a + 1, n):
                if _pair_is_primitive(members[a], members[b], m):
                    primitive += 1

    return ClassificationRecord(
        h=h, h_regular=h_regular, nearly_h_regular=nearly, overflow=overflow,
        collision_free=collisions == 0, short=short, split=split,
        omega=omega, omega_window=len(long_positions),
        collisions=collisions, collision_excess=excess,
        primitive_collisions=primitive, farey=interval,
    )


def detect_h(s: Semigroup, h_range: range = range(2, 9)) -> Optional[int]:
    """Smallest h for which s is h-regular or nearly so, if any."""
    if not s.canonically_defined:
        raise ValueError(f"{render_semigroup(s)} is not canonically defined")
    gam = s.gamma
    l = len(s.left_gens)
    for h in h_range:
        top = hfold_sumset(gam, h)
        if all(s.c <= lam < s.c + s.m for lam in top):
            return h
        overflow = sum(1 for lam in top if lam >= s.c + s.m)
        if (all(s.c <= lam < s.c + 2 * s.m for lam in top)
                and overflow <= -(-l // 2)):
            return h
    return None


def window_labels(s: Semigroup, h: int) -> list:
    """For each offset in [0, m): None for a right generator, else the
    smallest i <= h with the critical element congruent to some lam in
    i*gamma, or -1 when no such sumset explains it."""
    gam = s.gamma
    isums = [hfold_sumset(gam, i) for i in range(h + 1)]
    labels = []
    for off in range(s.m):
        x = s.c + off
        if not s.is_double(x):
            labels.append(None)
            continue
        found = -1
        for i in range(h + 1):
            if any(lam <= x and (x - lam) % s.m == 0 for lam in isums[i]):
                found = i
                break
        labels.append(found)
    return labels


_SVG_COLORS = ["#4878d0", "#ee854a", "#6acc64", "#d65f5f",
               "#956cb4", "#8c613c", "#dc7ec0", "#797979", "#d5bb67"]


def render_critical_interval(s: Semigroup, h: int, format: str = "ascii") -> str:
    """One row for the window [c, c+m): right generators as gaps, critical
    elements labelled by their sumset index, and the position of q*m
    (offset rho) marked."""
    labels = window_labels(s, h)
    p = params(s)
    if format == "ascii":
        row = "".join("." if v is None else ("?" if v < 0 else str(v)) for v in labels)
        marker = " " * p.rho + "^"
        return (f"{render_semigroup(s)}  h={h}  window [{s.c}, {s.c + s.m})\n"
                f"{row}\n{marker} rho={p.rho}\n")
    if format == "svg":
        cell, pad = 16, 4
        width = pad * 2 + cell * s.m
        parts = [f'<svg xmlns="http://www.w3.org/2000/svg" '
                 f'width="{width}" height="40">']
        for off, v in enumerate(labels):
            x = pad + off * cell
            if v is not None:
                color = _SVG_COLORS[v % len(_SVG_COLORS)] if v >= 0 else "#000"
                parts.append(f'<rect x="{x}" y="10" width="{cell - 2}" '
                             f'height="{cell - 2}" fill="{color}"/>')
        xr = pad + p.rho * cell + (cell - 2) // 2
        parts.append(f'<circle cx="{xr}" cy="{10 + (cell - 2) // 2}" r="{cell // 2}" '
                     f'fill="none" stroke="#ffdf00" stroke-width="3"/>')
        parts.append("</svg>")
        return "".join(parts)
    raise ValueError(f"unknown format {format!r}")


def parse_semigroup(text: str) -> tuple[int, IntSet, int]:
    """Parse the literal "m,g1,...;c", e.g. "14,22,23;56"."""
    try:
        gens_part, c_part = text.split(";")
        gens = [int(p) for p in gens_part.split(",") if p.strip()]
        c = int(c_part)
    except ValueError as exc:
        raise ValueError(f"cannot parse semigroup literal {text!r}") from exc
    if not gens:
        raise ValueError(f"no generators in {text!r}")
    return gens[0], intset(gens[1:]), c


def render_semigroup(s: Semigroup) -> str:
    gens = ",".join(str(g) for g in s.left_gens)
    return f"{gens};{s.c}"
