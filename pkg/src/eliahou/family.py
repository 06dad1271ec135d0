"""Parametric semigroup families over a Farey interval.

A family member is determined by (h, a/b, delta, tau, m): the conductor is
c = floor(a*h*m/b) - m - tau and the generators other than m are
floor((c+m-1)/h) - delta.  For collision-free members the rank and the
Eliahou number have closed forms in terms of the fractional parts
phi_i = {-i*a/b} and phi'_i = {i*a'/b'}; this module implements those
closed forms, the short/split criteria, and the explicit generators of
split families with negative Eliahou number.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import ceil, comb, floor

from .farey import FareyInterval, farey_cover, farey_predecessor, frac_part, phi, phi_prime
from .semigroup import Semigroup, semigroup_from
from .sumsets import IntSet, canonical_bh_set, intset, multichoose


@dataclass(frozen=True)
class FamilyParams:
    h: int
    frac: Fraction
    delta: IntSet
    tau: int
    m: int

    def __post_init__(self):
        if self.h < 2:
            raise ValueError(f"need h >= 2, got {self.h}")
        if self.frac.denominator > self.h or self.frac <= 0:
            raise ValueError(f"{self.frac} is not a positive {self.h}-Farey fraction")
        if not self.delta:
            raise ValueError("delta must be nonempty")
        object.__setattr__(self, "delta", intset(self.delta))

    @property
    def interval(self) -> FareyInterval:
        return FareyInterval(self.h, self.frac, farey_predecessor(self.frac, self.h))

    @property
    def ell(self) -> int:
        """Number of left generators, m included."""
        return len(self.delta) + 1

    @property
    def delta1(self) -> int:
        return max(self.delta)

    @property
    def c(self) -> int:
        a, b = self.frac.numerator, self.frac.denominator
        return a * self.h * self.m // b - self.m - self.tau

    @property
    def gamma(self) -> IntSet:
        base = (self.c + self.m - 1) // self.h
        return intset(base - d for d in self.delta)

    @property
    def t(self) -> Fraction:
        return self.tau + frac_part(self.frac * self.h * self.m)

    @property
    def w(self) -> int:
        return self.h * self.delta1 + 1 + (self.c + self.m - 1) % self.h

    @property
    def is_h_regular(self) -> bool:
        return self.m >= self.w

    @property
    def farey_matches(self) -> bool:
        """The associated Farey interval really is (a'/b', a/b]."""
        b = self.frac.denominator
        bp = self.interval.lower.denominator
        return self.m > Fraction(b * bp, self.h) * self.t

    def __str__(self) -> str:
        d = ",".join(str(x) for x in self.delta)
        return f"S({self.h}, {self.frac}, {{{d}}}, {self.tau}, {self.m})"


def construct(p: FamilyParams) -> Semigroup:
    """Build the semigroup <m, gamma>_c for the family member p."""
    c, m = p.c, p.m
    if c <= m:
        raise ValueError(f"{p}: conductor {c} not above multiplicity {m}")
    for g in p.gamma:
        if not m < g < c:
            raise ValueError(f"{p}: generator {g} outside ({m}, {c})")
    s = semigroup_from(m, p.gamma, c)
    # w has the equivalent forms h*d1 + 1 + ((c+m-1) mod h) and c + m - h*gamma1
    assert p.w == c + m - p.h * p.gamma[0]
    return s


def hat_params(h: int, frac: Fraction, delta) -> FamilyParams:
    """The extremal split member for (h, a/b, delta): minimal tau and m."""
    delta = intset(delta)
    d1 = max(delta)
    if d1 < 1:
        raise ValueError(f"need max(delta) >= 1, got {d1}")
    a, b = frac.numerator, frac.denominator
    pred = farey_predecessor(frac, h)
    bp = pred.denominator
    tau_hat = (h - b) * (h * d1 + 1) // b
    m_hat = ((b + bp) * h - b * bp) * d1 + b + bp
    p = FamilyParams(h, frac, delta, tau_hat, m_hat)
    # with this m the floors disappear: t = (h-b)(h*d1+1)/b and w = h*d1+1
    assert p.t == Fraction((h - b) * (h * d1 + 1), b)
    assert p.w == h * d1 + 1
    return p


@dataclass(frozen=True)
class CriteriaVerdict:
    c1: bool       # t >= (h-b) w / b
    cunif: bool    # (b - bm) m >= b b' [(h - bm) w - bm t] / h
    csplit: bool   # m >= b b' t / h + b (w + [b' = h])
    short: bool
    split: bool
    bm: int


def criteria(p: FamilyParams) -> CriteriaVerdict:
    """Short/split verdict from the closed-form inequalities.

    All comparisons are exact rational comparisons.  Requires p to be
    h-regular with the matching Farey interval, otherwise the inequalities
    say nothing about the semigroup.
    """
    if not p.farey_matches:
        raise ValueError(f"{p}: m <= b*b'*t/h, wrong Farey interval")
    if not p.is_h_regular:
        raise ValueError(f"{p}: m < w, not {p.h}-regular")
    h, m = p.h, p.m
    b = p.frac.denominator
    bp = p.interval.lower.denominator
    bm = b % bp
    t, w = p.t, p.w
    c1 = t >= Fraction((h - b) * w, b)
    cunif = (b - bm) * m >= Fraction(b * bp, h) * ((h - bm) * w - bm * t)
    csplit = m >= Fraction(b * bp, h) * t + b * (w + (1 if bp == h else 0))
    if b == h:
        # equivalent form of cunif when b = h
        alt = m >= bp * w - Fraction(bm * bp, h - bm) * t
        assert alt == cunif
    return CriteriaVerdict(c1=c1, cunif=cunif, csplit=csplit,
                           short=c1 and cunif, split=c1 and csplit, bm=bm)


def closed_form_k(p: FamilyParams, omega: int) -> int:
    """Rank of a collision-free member: sum of floor((h-i)a'/b') * s_i plus
    one for each long element."""
    ap = p.interval.lower.numerator
    bp = p.interval.lower.denominator
    nsets = p.ell - 1
    return sum(((p.h - i) * ap // bp) * multichoose(nsets, i)
               for i in range(p.h)) + omega


@dataclass(frozen=True)
class ClosedForm:
    e0: int
    rho: int
    q: int
    e_value: int


def closed_form_e(p: FamilyParams, omega: int) -> ClosedForm:
    """Eliahou number of a collision-free member: E = E0 + rho + l*omega.

    E0 is evaluated by four independent expressions (two over phi'_i, two
    over phi_i, each with a summation-by-parts variant); they must agree
    exactly or the parameters are inconsistent.
    """
    if not p.farey_matches:
        raise ValueError(f"{p}: m <= b*b'*t/h, wrong Farey interval")
    h, m = p.h, p.m
    iv = p.interval
    l = p.ell
    nsets = l - 1
    s_i = [multichoose(nsets, i) for i in range(h + 1)]
    s = multichoose(l, h)
    assert s == sum(s_i)

    ph = [phi(i, iv) for i in range(h + 1)]
    php = [phi_prime(i, iv) for i in range(h + 1)]

    form1 = -l * sum(php[h - i] * s_i[i] for i in range(h)) + php[h] * s
    form2 = (-(h - 1) * s_i[h]
             + l * sum(ph[h - i] * s_i[i] for i in range(h)) - ph[h] * s)

    def parts_sum(phi1: Fraction) -> int:
        top = floor(h * phi1)
        total = 0
        for j in range(1, top + 1):
            d = h - ceil(Fraction(j) / phi1)
            assert d >= 0
            total += multichoose(l, d)
        return top, total

    top_p, sum_p = parts_sum(php[1]) if php[1] else (0, 0)
    form3 = -top_p * s + l * sum_p
    top_q, sum_q = parts_sum(ph[1]) if ph[1] else (0, 0)
    form4 = -(h - 1) * s_i[h] + top_q * s - l * sum_q

    assert form1 == form2 == form3 == form4, \
        f"{p}: E0 forms disagree: {form1}, {form2}, {form3}, {form4}"
    e0 = form1
    assert e0.denominator == 1
    e0 = int(e0)

    q = ceil(h * p.frac) - 1
    assert q == floor(h * iv.lower)

    rho = ph[h] * m + p.t
    assert rho.denominator == 1
    rho = int(rho)
    assert rho == ceil(ph[h] * m) + p.tau
    assert rho == q * m - p.c

    return ClosedForm(e0=e0, rho=rho, q=q, e_value=e0 + rho + l * omega)


def shift_numerator(p: FamilyParams) -> FamilyParams:
    """Same parameters with a/b -> a/b + 1, i.e. <m, gamma + m>_{c + h*m}."""
    return FamilyParams(p.h, p.frac + 1, p.delta, p.tau, p.m)


def inflate_m(p: FamilyParams, n: int) -> FamilyParams:
    """Replace m by m + b*n (requires b | h); t and w are unchanged."""
    b = p.frac.denominator
    if p.h % b != 0:
        raise ValueError(f"{p}: denominator {b} does not divide h={p.h}")
    q = FamilyParams(p.h, p.frac, p.delta, p.tau, p.m + b * n)
    assert q.t == p.t and q.w == p.w
    return q


def split_family(h: int, frac: Fraction, n: int) -> tuple[FamilyParams, Fraction]:
    """Split member S(h, a/b, {0,1}, tau^, m^ + b*n) with E < 0.

    Needs b | h, b != 1 and predecessor denominator != 1.  Returns the
    parameters together with the guaranteed bound E <= -(b-1)(h/b-1)h/4.
    """
    b = frac.denominator
    if h % b != 0 or b == 1:
        raise ValueError(f"need b | h with b != 1, got {frac} for h={h}")
    if farey_predecessor(frac, h).denominator == 1:
        raise ValueError(f"{frac}: predecessor denominator 1 gives E >= 0")
    if n < 0:
        raise ValueError(f"need n >= 0, got {n}")
    base = hat_params(h, frac, (0, 1))
    p = inflate_m(base, n)
    bound = -Fraction((b - 1) * (h // b - 1) * h, 4)
    return p, bound


def binomial_family(h: int, b: int) -> tuple[FamilyParams, int]:
    """Extremal split member for a/b = (2b-1)/b with E = -C(b-1, 2).

    Needs ceil(h/2) < b <= h, which makes (2b-3)/(b-1) the predecessor.
    """
    if not -(-h // 2) < b <= h:
        raise ValueError(f"need ceil(h/2) < b <= h, got b={b} for h={h}")
    frac = Fraction(2 * b - 1, b)
    p = hat_params(h, frac, (0, 1))
    assert p.interval.lower == Fraction(2 * b - 3, b - 1)
    return p, -comb(b - 1, 2)


def farey_fractions(h: int, low: Fraction, high: Fraction) -> list[Fraction]:
    """All h-Farey fractions in (low, high], ascending."""
    found = set()
    for den in range(1, h + 1):
        num = floor(low * den) + 1
        while Fraction(num, den) <= high:
            f = Fraction(num, den)
            if f > low and f.denominator <= h:
                found.add(f)
            num += 1
    return sorted(found)


def sweep_deltas(h: int) -> list[IntSet]:
    """Delta choices used by the verification sweep."""
    out = [canonical_bh_set(2, h), canonical_bh_set(3, h), (0, 2), (0, 1, 5)]
    seen = []
    for d in out:
        if d not in seen:
            seen.append(d)
    return seen


def iter_sweep(h_values=(3, 4, 5), tau_extra: int = 4, m_steps: int = 4):
    """Family parameters swept for verification: every h-Farey fraction in
    (1, 2], the standard delta choices, tau in [tau^, tau^ + tau_extra] and
    m in [m^, m^ + m_steps*b]."""
    for h in h_values:
        for frac in farey_fractions(h, Fraction(1), Fraction(2)):
            b = frac.denominator
            for delta in sweep_deltas(h):
                base = hat_params(h, frac, delta)
                for tau in range(base.tau, base.tau + tau_extra + 1):
                    for m in range(base.m, base.m + m_steps * b + 1):
                        yield FamilyParams(h, frac, delta, tau, m)
