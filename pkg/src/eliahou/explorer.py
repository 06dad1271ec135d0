"""Exhaustive tree search for semigroups with negative Eliahou number.

The search walks the tree of semigroups <m, gamma1, ...>_c with fixed
multiplicity m and fixed second generator gamma1, advancing the conductor
one step at a time.  The only state needed is (c, k, l, r) plus two
bitfields: Lbits encodes (L - 1) (L = the set of left elements) and Dbits
encodes (D - c) for D = L + L, the double elements.  Right generators are
exactly the window positions missing from D, so the three conductor steps

    add_gap       c is left out          (needs bit 0 of Dbits clear)
    add_non_gen   c joins S, not a generator   (needs bit 0 set)
    add_left_gen  c joins S as a generator     (needs bit 0 clear)

update everything with shifts and ORs.

Both bitfields behave like fixed-width registers: bits at index >= width
are dropped.  A dropped bit encodes a double beyond every conductor window
the task will ever look at, which is why `required_width` below admits a
task only when that is guaranteed.  The walk prunes a branch once
(k_min + 1) * (l + 1) >= c_max, where k_min is the rank at c_min: every
descendant then satisfies E >= 0.  Candidate generators are capped at
c_max + m - 2*gamma1; completeness of that cap is conjectural (the cap
c_max + m - gamma1 is proven), which `run_search` records in its metadata.
"""

from __future__ import annotations

import os
from dataclasses import dataclass, replace
from multiprocessing import get_context
from typing import Callable, Iterable, NamedTuple, Optional

from .semigroup import Semigroup, numbers, params, semigroup_from

DEFAULT_WIDTH = 256


class BitsetWidthError(RuntimeError):
    pass


class Emission(NamedTuple):
    m: int
    gens: tuple          # left generators other than m
    c: int
    k: int
    l: int
    r: int
    q: int


@dataclass
class ExplorerState:
    m: int
    gamma1: int
    c: int
    k: int
    l: int
    r: int
    q: int               # ceil(c/m), kept incrementally
    qm: int              # q * m
    lbits: int
    dbits: int
    gens: tuple
    width: int = DEFAULT_WIDTH

    def clone(self) -> "ExplorerState":
        return replace(self)

    def left_set(self) -> set:
        """Decode L; exact as long as no bit was ever dropped."""
        return {0} | {j + 1 for j in range(self.width) if self.lbits >> j & 1}

    def double_set_from_c(self) -> set:
        """Decode the doubles at or beyond the conductor."""
        return {self.c + j for j in range(self.width) if self.dbits >> j & 1}

    def _bump_q(self):
        if self.c > self.qm:
            self.q += 1
            self.qm += self.m

    def _set_left_bit(self):
        idx = self.c - 1
        if idx >= self.width:
            raise BitsetWidthError(
                f"bit {idx} does not fit in width {self.width}")
        self.lbits |= 1 << idx


def init_root(m: int, gamma1: int, width: int = DEFAULT_WIDTH) -> ExplorerState:
    """State for <m, gamma1>_{gamma1 + 1}, the root of one search tree."""
    if m < 3:
        raise ValueError(f"need m >= 3, got {m}")
    if gamma1 <= m or gamma1 % m == 0:
        raise ValueError(f"gamma1 must exceed m and not be a multiple, got {gamma1}")
    c = gamma1 + 1
    left = [i * m for i in range(1, gamma1 // m + 1)] + [gamma1]
    mask = (1 << width) - 1
    lbits = 0
    for x in left:
        lbits |= 1 << (x - 1)
    lbits &= mask
    dbits = 0
    for i, y in enumerate(left):
        for z in left[i:]:
            if y + z >= c:
                dbits |= 1 << (y + z - c)
    dbits &= mask
    r = m - bin(dbits & ((1 << m) - 1)).count("1")
    q = -(-c // m)
    return ExplorerState(m=m, gamma1=gamma1, c=c, k=len(left) + 1, l=2, r=r,
                         q=q, qm=q * m, lbits=lbits, dbits=dbits,
                         gens=(gamma1,), width=width)


def add_gap(st: ExplorerState) -> None:
    """The conductor point stays out of the semigroup."""
    assert not st.dbits & 1, "position is a double, cannot be a gap"
    lost = st.dbits & (1 << st.m)
    st.dbits >>= 1
    st.c += 1
    st._bump_q()
    if lost:
        st.r -= 1


def add_non_gen(st: ExplorerState) -> None:
    """The conductor point joins the semigroup as a non-generator."""
    assert st.dbits & 1, "position is not a double, it would be a generator"
    st._set_left_bit()
    st.dbits = (st.dbits >> 1) | st.lbits
    st.c += 1
    st.k += 1
    st._bump_q()


def add_left_gen(st: ExplorerState) -> None:
    """The conductor point joins the semigroup as a new left generator."""
    assert not st.dbits & 1, "position is a double, cannot be primitive"
    st.gens = st.gens + (st.c,)
    st._set_left_bit()
    st.dbits = (st.dbits >> 1) | st.lbits
    st.c += 1
    st.k += 1
    st.l += 1
    st.r -= 1
    st._bump_q()


def eliahou_test(st: ExplorerState) -> bool:
    """E < 0 for the current (c, k, l, r), via E = k*l + q*r - c."""
    return st.k * st.l + st.q * st.r < st.c


def _walk(m, c_min, c_max, bound, prune, width, emit,
          c, k, l, r, q, qm, lb, db, gens):
    """Algorithm core; scalars are copied, so recursion needs no undo."""
    mask = (1 << width) - 1
    mbit = 1 << m

    # stage 1: sweep the conductor to c_max without adding generators,
    # emitting every gap state with c >= c_min and E < 0
    cc, kk, rr, qq, qqm, llb, ddb = c, k, r, q, qm, lb, db
    k_min = kk if cc >= c_min else -1
    while cc < c_max:
        if cc == c_min:
            k_min = kk
        if ddb & 1:
            llb = (llb | (1 << (cc - 1))) & mask
            ddb = (ddb >> 1) | llb
            cc += 1
            kk += 1
            if cc > qqm:
                qq += 1
                qqm += m
        else:
            lost = ddb & mbit
            ddb >>= 1
            cc += 1
            if cc > qqm:
                qq += 1
                qqm += m
            if lost:
                rr -= 1
            if cc >= c_min and kk * l + qq * rr < cc:
                emit(Emission(m, gens, cc, kk, l, rr, qq))
    if k_min < 0:
        k_min = kk

    # adding a generator raises k and l, so no descendant can reach E < 0
    # once (k_min + 1)(l + 1) >= c_max
    if prune and (k_min + 1) * (l + 1) >= c_max:
        return

    # stage 2: branch on every non-double position below the generator cap
    while c < bound:
        if db & 1:
            lb = (lb | (1 << (c - 1))) & mask
            db = (db >> 1) | lb
            c += 1
            k += 1
            if c > qm:
                q += 1
                qm += m
        else:
            nlb = (lb | (1 << (c - 1))) & mask
            ndb = (db >> 1) | nlb
            nc = c + 1
            if nc > qm:
                nq, nqm = q + 1, qm + m
            else:
                nq, nqm = q, qm
            _walk(m, c_min, c_max, bound, prune, width, emit,
                  nc, k + 1, l + 1, r - 1, nq, nqm, nlb, ndb, gens + (c,))
            lost = db & mbit
            db >>= 1
            c += 1
            if c > qm:
                q += 1
                qm += m
            if lost:
                r -= 1


def explore(st: ExplorerState, c_min: int, c_max: int,
            sink: Callable[[Emission], None], *,
            prune: bool = True, gamma_bound: Optional[int] = None) -> None:
    """Emit every Eliahou semigroup below st with conductor in [c_min, c_max].

    st is not modified.  The generator cap defaults to the conjectural
    c_max + m - 2*gamma1.
    """
    if st.c > c_max:
        raise ValueError(f"state conductor {st.c} already beyond c_max={c_max}")
    bound = gamma_bound if gamma_bound is not None \
        else c_max + st.m - 2 * st.gamma1
    _walk(st.m, c_min, c_max, bound, prune, st.width, sink,
          st.c, st.k, st.l, st.r, st.q, st.qm, st.lbits, st.dbits, st.gens)


@dataclass(frozen=True)
class SearchTask:
    m: int
    gamma1: int
    c_min: int
    c_max: int

    def __post_init__(self):
        if self.m < 3 or self.gamma1 <= self.m or self.gamma1 % self.m == 0:
            raise ValueError(f"bad root ({self.m}, {self.gamma1})")
        if not self.gamma1 < self.c_max:
            raise ValueError(f"gamma1 {self.gamma1} not below c_max {self.c_max}")
        if self.c_min > self.c_max:
            raise ValueError(f"empty interval [{self.c_min}, {self.c_max}]")


def required_width(m: int, c_max: int) -> int:
    """Register width needed so that no dropped bit is ever queried.

    A recorded double x + y (m <= x <= y). is queried only while it is at
    most c_max + m, so its bit index x - 1 stays below (c_max + m)/2; the
    +2 is slack for the rounding.
    """
    return (c_max + m) // 2 + 2


def plan_tasks(c_max: int, interval_len: int = 8,
               c_min: Optional[int] = None) -> list:
    """All (m, gamma1, conductor-interval) tasks for a full run.

    Eliahou semigroups satisfy c > 3m, so conductor intervals partition
    (3m, c_max] for each m up to (c_max - 1) // 3.  Intervals are half-open
    (lo, hi], so no two tasks can emit the same semigroup.
    """
    lowest = c_min if c_min is not None else 0
    tasks = []
    for m in range(3, (c_max - 1) // 3 + 1):
        lo = 3 * m
        while lo < c_max:
            hi = min(lo + interval_len, c_max)
            if hi >= lowest:
                for gamma1 in range(m + 1, hi):
                    if gamma1 % m:
                        tasks.append(SearchTask(m, gamma1,
                                                max(lo + 1, lowest), hi))
            lo = hi
    return tasks


def _run_task(args) -> list:
    task, prune, safe_bound, bound_offset, width = args
    st = init_root(task.m, task.gamma1, width)
    gamma_term = task.gamma1 if safe_bound else 2 * task.gamma1
    bound = task.c_max + task.m - gamma_term + bound_offset
    out = []
    explore(st, task.c_min, task.c_max, out.append,
            prune=prune, gamma_bound=bound)
    return out


@dataclass
class SearchResult:
    semigroups: list          # Semigroup, sorted by (c, m, gens)
    emissions: dict           # key -> Emission (extensions have None)
    meta: dict


def postprocess_extend(found: Iterable[Semigroup], *,
                       bound_offset: int = 0) -> list:
    """Try adding left generators at or beyond c + m - 2*gamma1 to each
    Eliahou semigroup found, recursively, keeping any new Eliahou
    semigroups (canonically defined, deduplicated)."""
    queue = list(found)
    seen = {s.key() for s in queue}
    extra = []
    while queue:
        s = queue.pop()
        gam = s.gamma
        if not gam:
            continue
        low = max(s.c + s.m - 2 * gam[0] + bound_offset, gam[-1] + 1)
        for g in range(low, s.c):
            if g in s:
                continue
            cand = semigroup_from(s.m, gam + (g,), s.c)
            if not cand.canonically_defined or cand.key() in seen:
                continue
            if numbers(cand).e_value < 0:
                seen.add(cand.key())
                extra.append(cand)
                queue.append(cand)
    return sorted(extra, key=lambda s: (s.c, s.m, s.left_gens))


def run_search(c_max: int, *, c_min: Optional[int] = None,
               interval_len: int = 8, workers: Optional[int] = None,
               prune: bool = True, safe_bound: bool = False,
               bound_offset: int = 0, width: int = DEFAULT_WIDTH,
               postprocess: bool = True) -> SearchResult:
    """Run the full decomposed search up to conductor c_max.

    Tasks run on a process pool (workers=0 or 1 keeps everything in
    process); output order does not depend on scheduling.
    """
    tasks = plan_tasks(c_max, interval_len, c_min)
    for t in tasks:
        need = required_width(t.m, t.c_max)
        if need > width:
            raise BitsetWidthError(
                f"task {t} needs width {need} > {width}; "
                f"raise the width to at least {need}")
    if workers is None:
        workers = min(os.cpu_count() or 1, 8)
    env = os.environ.get("ELIAHOU_WORKERS")
    if env:
        workers = int(env)

    args = [(t, prune, safe_bound, bound_offset, width) for t in tasks]
    emissions: list = []
    if workers <= 1 or len(tasks) < 2:
        for a in args:
            emissions.extend(_run_task(a))
    else:
        # big-m tasks dominate the runtime, spread them across workers
        args.sort(key=lambda a: (-a[0].m, a[0].gamma1))
        ctx = get_context("fork")
        with ctx.Pool(workers) as pool:
            chunk = max(1, len(args) // (workers * 16))
            for out in pool.imap_unordered(_run_task, args, chunksize=chunk):
                emissions.extend(out)

    by_key: dict = {}
    for em in emissions:
        key = (em.m, (em.m,) + em.gens, em.c)
        assert key not in by_key, f"duplicate emission {key}"
        by_key[key] = em

    semis = []
    for em in by_key.values():
        s = semigroup_from(em.m, em.gens, em.c)
        p = params(s)
        assert (p.k, p.l, p.r, p.q) == (em.k, em.l, em.r, em.q), \
            f"state desynchronised from oracle at {em}"
        assert s.canonically_defined
        semis.append(s)

    if postprocess:
        for s in postprocess_extend(semis, bound_offset=bound_offset):
            by_key[s.key()] = None
            semis.append(s)

    semis.sort(key=lambda s: (s.c, s.m, s.left_gens))
    meta = {
        "c_max": c_max, "c_min": c_min, "interval_len": interval_len,
        "prune": prune, "bound": "safe" if safe_bound else "conjecture",
        "bound_offset": bound_offset, "width": width, "tasks": len(tasks),
        "completeness": "unconditional" if safe_bound else "conditional",
    }
    return SearchResult(semigroups=semis,
                        emissions={s.key(): by_key.get(s.key()) for s in semis},
                        meta=meta)
