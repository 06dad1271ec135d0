"""Independent brute-force enumerator of Eliahou semigroups.

Used as the oracle for the bitfield search: plain membership tables and
generator chains, no shared code with the explorer.  Only proven pruning
is applied: the rank bound (adding a generator raises both k and l, so
(k_min+1)(l+1) >= c_max forces E >= 0 on every descendant) and the proven
generator cap c + m - gamma1 (adding a generator that large adds at least
1 to k and l and removes at most one right generator, so it cannot push E
below zero; descendants past the cap are recovered by the extension pass,
which only ever needs to walk through intermediates that are themselves
Eliahou).
"""

from __future__ import annotations

from eliahou.semigroup import numbers, semigroup_from


def _fold_generator(table: bytearray, g: int) -> bytearray:
    out = bytearray(table)
    for x in range(g, len(out)):
        if not out[x] and out[x - g]:
            out[x] = 1
    return out


def _emit_conductors(m, gens, table, c_min, c_max, found):
    """All canonically defined Eliahou semigroups <m, gens>_c in the range."""
    l = len(gens) + 1
    last = gens[-1] if gens else m
    k = sum(table[: c_min - 1])
    reach = [x for x in range(1, c_max) if table[x]]
    for c in range(c_min, c_max + 1):
        k += table[c - 1]
        if table[c - 1]:          # c-1 in the semigroup: not canonical
            continue
        if c <= last + 1:
            continue
        doubles = set()
        for i, y in enumerate(reach):
            if y >= c or 2 * y >= c + m:
                break
            for z in reach[i:]:
                if z >= c or y + z >= c + m:
                    break
                if y + z >= c:
                    doubles.add(y + z)
        r = sum(1 for x in range(c, c + m) if x not in doubles)
        q = -(-c // m)
        if k * l + q * r < c:
            key = (m, (m,) + tuple(gens), c)
            assert key not in found, key
            found[key] = True


def _chains(m, gens, table, c_min, c_max, gamma_bound, found):
    _emit_conductors(m, gens, table, c_min, c_max, found)
    k_min = sum(table[:c_min])
    if (k_min + 1) * (len(gens) + 2) >= c_max:
        return
    start = gens[-1] + 1
    for g in range(start, gamma_bound):
        if table[g]:
            continue
        _chains(m, gens + [g], _fold_generator(table, g),
                c_min, c_max, gamma_bound, found)


def _extend(found: dict, c_max: int):
    """Add generators past the cap, one Eliahou semigroup at a time."""
    queue = list(found)
    while queue:
        m, gens, c = queue.pop()
        s = semigroup_from(m, gens[1:], c)
        for g in range(gens[-1] + 1, c):
            if g in s:
                continue
            cand = semigroup_from(m, gens[1:] + (g,), c)
            if not cand.canonically_defined:
                continue
            if numbers(cand).e_value < 0:
                key = (m, cand.left_gens, c)
                if key not in found:
                    found[key] = True
                    queue.append(key)


def naive_search(c_max: int, interval_len: int = 8,
                 m_range=None) -> set:
    """Every canonically defined semigroup with E < 0 and conductor <= c_max.

    Scans all multiplicities up to c_max - 2 by default (no reliance on the
    c > 3m property of the fast search).
    """
    if m_range is None:
        m_range = range(3, c_max - 1)
    found: dict = {}
    for m in m_range:
        lo = m + 1
        while lo < c_max:
            hi = min(lo + interval_len, c_max)
            for gamma1 in range(m + 1, hi):
                if gamma1 % m == 0:
                    continue
                table = bytearray(c_max + m + 1)
                table[0] = 1
                table = _fold_generator(_fold_generator(table, m), gamma1)
                _chains(m, [gamma1], table, max(lo + 1, gamma1 + 2), hi,
                        hi + m - gamma1, found)
            lo = hi
    _extend(found, c_max)
    return set(found)
