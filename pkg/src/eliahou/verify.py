"""Invariant battery behind the `verify` subcommand.

Each check recomputes something two independent ways (closed form against
the membership-table oracle, bitfield state against a rebuilt semigroup,
criteria against brute-force classification) and reports one line.
"""

from __future__ import annotations

import random
from fractions import Fraction
from math import gcd

from .explorer import (ExplorerState, add_gap, add_left_gen, add_non_gen,
                       eliahou_test, init_root, run_search)
from .family import (binomial_family, closed_form_e, closed_form_k, construct,
                     criteria, hat_params, iter_sweep, shift_numerator)
from .farey import farey_cover, farey_predecessor, phi, phi_prime
from .semigroup import classify, numbers, params, semigroup_from
from .sumsets import canonical_bh_set, hfold_sumset, is_bh_set, multichoose


def check_farey_neighbors(h_max: int = 12, value_cap: int = 4):
    """Every h-Farey fraction below the cap: predecessor is unimodular,
    below, with b + b' > h, and nothing of denominator <= h lies between."""
    tested = 0
    for h in range(1, h_max + 1):
        fractions = sorted(
            Fraction(num, den)
            for den in range(1, h + 1)
            for num in range(1, value_cap * den + 1)
            if gcd(num, den) == 1
        )
        for idx, f in enumerate(fractions):
            pred = farey_predecessor(f, h)
            a, b = f.numerator, f.denominator
            ap, bp = pred.numerator, pred.denominator
            assert a * bp - ap * b == 1
            assert bp <= h and b + bp > h
            if idx > 0:
                assert pred == fractions[idx - 1], (h, f)
            cover = farey_cover(f, h)
            assert cover.upper == f and cover.lower == pred
            tested += 1
    return f"{tested} predecessor/cover pairs"


def check_phi_identities(h_max: int = 8):
    """phi'_b = 1 - 1/b', phi_{b'} = 1 - 1/b, and b/b'-periodicity."""
    tested = 0
    for h in range(2, h_max + 1):
        for den in range(1, h + 1):
            for num in range(den + 1, 3 * den):
                if gcd(num, den) != 1:
                    continue
                iv = farey_cover(Fraction(num, den), h)
                b = iv.upper.denominator
                bp = iv.lower.denominator
                expect = Fraction(0) if bp == 1 else 1 - Fraction(1, bp)
                assert phi_prime(b, iv) == expect
                expect = Fraction(0) if b == 1 else 1 - Fraction(1, b)
                assert phi(bp, iv) == expect
                for i in range(h + 1):
                    assert phi(i + b, iv) == phi(i, iv)
                    assert phi_prime(i + bp, iv) == phi_prime(i, iv)
                tested += 1
    return f"{tested} intervals"


def check_sumsets():
    for size in range(1, 7):
        for h in range(1, 7):
            d = canonical_bh_set(size, h)
            assert is_bh_set(d, h), (size, h)
            assert len(hfold_sumset(d, h)) == multichoose(size, h)
    # translation covariance on a few sets
    for d in [(0, 1, 5), (0, 2, 7), (-2, 2, 7, 9)]:
        for h in (2, 3):
            shifted = hfold_sumset([x + 11 for x in d], h)
            assert shifted == tuple(x + 11 * h for x in hfold_sumset(d, h))
    return "canonical sets up to size 6, order 6"


def check_summation_identities(cap: int = 8):
    """l * sum (h-i) s_i / h = s and l * sum i s_i / h = (h-1) s_h."""
    for l in range(1, cap + 1):
        for h in range(1, cap + 1):
            s_i = [multichoose(l - 1, i) for i in range(h + 1)]
            s = multichoose(l, h)
            assert l * Fraction(sum((h - i) * s_i[i] for i in range(h)), h) == s
            assert (l * Fraction(sum(i * s_i[i] for i in range(h)), h)
                    == (h - 1) * s_i[h])
    return f"l, h <= {cap}"


NAMED_INSTANCES = [
    # (h, frac, delta, tau, m, expected semigroup, expected E)
    (3, Fraction(5, 3), (0, 1), 0, 14, (14, (22, 23), 56), -1),
    (4, Fraction(5, 3), (0, 1), 1, 19, (19, (30, 31), 106), -1),
    (4, Fraction(7, 4), (0, 2), 3, 24, (24, (39, 41), 141), None),
    (4, Fraction(3, 2), (0, 2), 1, 21, (21, (29, 31), 104), None),
    (5, Fraction(7, 4), (0, 1, 6), 7, 105, (105, (176, 181, 182), 806), -10),
    (4, Fraction(3, 2), (0, 1, 9), 6, 62, (62, (82, 90, 91), 304), -1),
    (3, Fraction(5, 3), (0, 1, 5), 2, 30, (30, (44, 48, 49), 118), -2),
    (3, Fraction(5, 3), (0, 1, 6, 9), 1, 55, (55, (82, 85, 90, 91), 219), -1),
]


def check_named_instances():
    for h, frac, delta, tau, m, expected, e_want in NAMED_INSTANCES:
        from .family import FamilyParams
        p = FamilyParams(h, frac, delta, tau, m)
        s = construct(p)
        em, egens, ec = expected
        assert (s.m, s.gamma, s.c) == (em, egens, ec), str(p)
        if e_want is not None:
            assert numbers(s).e_value == e_want, str(p)
    return f"{len(NAMED_INSTANCES)} constructions"


def check_hat_instances():
    cases = [
        ((4, Fraction(5, 3), (0, 1)), 1, 19, -1),
        ((4, Fraction(3, 2), (0, 1, 5)), 21, 75, 2),
        ((5, Fraction(7, 4), (0, 1, 6)), 7, 145, 0),
    ]
    for (h, frac, delta), tau_hat, m_hat, e_want in cases:
        p = hat_params(h, frac, delta)
        assert (p.tau, p.m) == (tau_hat, m_hat)
        s = construct(p)
        assert numbers(s).e_value == e_want
        assert classify(s, h).split
    p, e_want = binomial_family(4, 3)
    assert numbers(construct(p)).e_value == e_want == -1
    return "hat members split with expected E"


def run_sweep(require: int = 500):
    """Closed forms against the oracle over the full verification sweep."""
    checked = 0
    for p in iter_sweep():
        try:
            s = construct(p)
        except ValueError:
            continue
        if not (s.canonically_defined and p.is_h_regular and p.farey_matches):
            continue
        cl = classify(s, p.h)
        verdict = criteria(p)
        assert verdict.short == cl.short, str(p)
        assert verdict.split == cl.split, str(p)
        if cl.collision_free:
            pr = params(s)
            assert closed_form_k(p, cl.omega) == pr.k, str(p)
            cf = closed_form_e(p, cl.omega)
            assert cf.e_value == numbers(s).e_value, str(p)
            assert cf.rho == pr.rho and cf.q == pr.q, str(p)
            checked += 1
    assert checked >= require, f"only {checked} collision-free instances"
    return f"{checked} collision-free canonically defined instances"


def check_shift_and_collisions():
    from .family import FamilyParams
    p = FamilyParams(3, Fraction(5, 3), (0, 2), 0, 8)
    s = construct(p)
    assert (s.m, s.gamma, s.c) == (8, (11, 13), 32)
    assert numbers(s).e_value == 11
    s2 = construct(shift_numerator(p))
    assert (s2.m, s2.gamma, s2.c) == (8, (19, 21), 56)
    assert numbers(s2).e_value == 17
    return "numerator shift changes E only with collisions"


def bisimulation_walk(rng: random.Random, max_steps: int = 60,
                      width: int = 512) -> int:
    """One random walk of the bitfield state, checked against the oracle
    at every step; returns the number of steps taken."""
    m = rng.randrange(3, 16)
    gamma1 = rng.randrange(m + 1, m + 21)
    while gamma1 % m == 0:
        gamma1 += 1
    st = init_root(m, gamma1, width)
    steps = rng.randrange(1, max_steps + 1)
    for _ in range(steps):
        if st.dbits & 1:
            add_non_gen(st)
        elif rng.random() < 0.25:
            add_left_gen(st)
        else:
            add_gap(st)
        s = semigroup_from(st.m, st.gens, st.c)
        p = params(s)
        assert (p.k, p.l, p.r, p.q) == (st.k, st.l, st.r, st.q), (st.m, st.gens, st.c)
        assert set(s.left_elements) == st.left_set()
        doubles = {x for x in range(st.c, st.c + width)
                   if x < s.limit and s.is_double(x)}
        decoded = {x for x in st.double_set_from_c() if x < s.limit}
        assert doubles == decoded, (st.m, st.gens, st.c)
        assert eliahou_test(st) == (numbers(s).e_value < 0)
    return steps


def check_bisimulation(walks: int = 100, seed: int = 2024):
    rng = random.Random(seed)
    total = sum(bisimulation_walk(rng) for _ in range(walks))
    return f"{walks} random walks, {total} steps"


FIRST_FIVE = [
    (14, (14, 22, 23), 56),
    (16, (16, 25, 26), 64),
    (17, (17, 26, 28), 68),
    (17, (17, 27, 28), 68),
    (18, (18, 28, 29), 72),
]


def check_first_five(workers: int = 0):
    res = run_search(72, workers=workers)
    got = [(s.m, s.left_gens, s.c) for s in res.semigroups]
    assert got == FIRST_FIVE, got
    assert all(numbers(s).e_value == -1 for s in res.semigroups)
    return "search up to 72 finds exactly the first five"


ALL_CHECKS = [
    ("farey-neighbors", check_farey_neighbors),
    ("phi-identities", check_phi_identities),
    ("sumsets", check_sumsets),
    ("summation-identities", check_summation_identities),
    ("named-instances", check_named_instances),
    ("hat-instances", check_hat_instances),
    ("numerator-shift", check_shift_and_collisions),
    ("closed-form-sweep", run_sweep),
    ("state-bisimulation", check_bisimulation),
    ("first-five-search", check_first_five),
]

FAST_SKIP = {"closed-form-sweep", "first-five-search"}


def run_all(fast: bool = False, seed: int = 2024) -> bool:
    ok = True
    for name, fn in ALL_CHECKS:
        if fast and name in FAST_SKIP:
            print(f"SKIP  {name}")
            continue
        try:
            detail = fn(seed=seed) if name == "state-bisimulation" else fn()
            print(f"PASS  {name}: {detail}")
        except AssertionError as exc:
            ok = False
            print(f"FAIL  {name}: {exc}")
    return ok
