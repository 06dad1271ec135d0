"""Result rows: one JSON-friendly record per semigroup.

The same builder backs `search` output and `classify`, so a row from a
search run and the row rebuilt from its literal agree key for key.  Family
attribution is best effort: parameters (h, a/b, delta, tau, m) are solved
from the detected h and kept only when reconstructing them reproduces the
semigroup exactly.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Optional

from .family import FamilyParams, construct
from .farey import farey_cover, render_fraction
from .semigroup import (Semigroup, classify, detect_h, numbers, params,
                        render_semigroup)


def family_attribution(s: Semigroup, h: int) -> Optional[dict]:
    """Solve (h, a/b, delta, tau, m) from the semigroup, if it round-trips."""
    try:
        interval = farey_cover(Fraction(s.c + s.m, h * s.m), h)
        a, b = interval.upper.numerator, interval.upper.denominator
        base = (s.c + s.m - 1) // h
        delta = tuple(sorted(base - g for g in s.gamma))
        tau = a * h * s.m // b - s.m - s.c
        p = FamilyParams(h, interval.upper, delta, tau, s.m)
        if construct(p).key() != s.key():
            return None
    except (ValueError, AssertionError):
        return None
    return {
        "h": h,
        "frac": render_fraction(interval.upper),
        "delta": list(delta),
        "tau": tau,
        "m": s.m,
        "delta_nonneg": all(d >= 0 for d in delta),
    }


def build_record(s: Semigroup, h: Optional[int] = None) -> dict:
    """Full per-semigroup row: parameters, numbers and classification."""
    p = params(s)
    rec = {
        "semigroup": render_semigroup(s),
        "m": p.m,
        "gens": list(s.left_gens),
        "c": p.c,
        "k": p.k,
        "l": p.l,
        "r": p.r,
        "e": p.e,
        "s": p.s,
        "g": p.g,
        "q": p.q,
        "rho": p.rho,
        "canonical": s.canonically_defined,
    }
    if s.dropped_gens:
        rec["dropped_gens"] = list(s.dropped_gens)
    if s.canonically_defined:
        n = numbers(s)
        rec["E"] = n.e_value
        rec["W"] = n.w_value
        if h is None and len(s.left_gens) >= 2:
            h = detect_h(s)
        rec["h"] = h
        if h is not None:
            cl = classify(s, h)
            rec.update({
                "h_regular": cl.h_regular,
                "nearly_h_regular": cl.nearly_h_regular,
                "overflow": cl.overflow,
                "collision_free": cl.collision_free,
                "short": cl.short,
                "split": cl.split,
                "omega": cl.omega,
                "omega_window": cl.omega_window,
                "collisions": cl.collisions,
                "collision_excess": cl.collision_excess,
                "primitive_collisions": cl.primitive_collisions,
                "farey": f"{render_fraction(cl.farey.lower)}"
                         f"..{render_fraction(cl.farey.upper)}",
                "family": family_attribution(s, h),
            })
    return rec
