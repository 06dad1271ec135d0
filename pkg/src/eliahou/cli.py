"""Command-line interface.

Subcommands: search, classify, construct, table, render, verify.  Search
emits JSON lines (one record per semigroup, after a single metadata line);
table cross-tabulates such a file the way the big classification table is
usually presented.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

from .explorer import BitsetWidthError, run_search
from .family import FamilyParams, construct, hat_params
from .records import build_record
from .semigroup import (classify, detect_h, parse_semigroup,
                        render_critical_interval, semigroup_from)
from .sumsets import parse_intset
from .verify import run_all


def _emit(obj, out):
    out.write(json.dumps(obj) + "\n")


def cmd_search(args) -> int:
    try:
        result = run_search(
            args.cmax, c_min=args.cmin, interval_len=args.interval_len,
            workers=args.workers, prune=not args.no_prune,
            safe_bound=args.safe_bound, bound_offset=args.bound_offset,
            width=args.width)
    except BitsetWidthError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    out = open(args.out, "w") if args.out else sys.stdout
    try:
        _emit({"meta": result.meta,
               "count": len(result.semigroups)}, out)
        for s in result.semigroups:
            _emit(build_record(s), out)
    finally:
        if args.out:
            out.close()
    return 0


def cmd_classify(args) -> int:
    m, gens, c = parse_semigroup(args.semigroup)
    s = semigroup_from(m, gens, c)
    rec = build_record(s, h=args.h)
    if args.json:
        print(json.dumps(rec))
        return 0
    width = max(len(k) for k in rec)
    for key, val in rec.items():
        print(f"{key:<{width}}  {json.dumps(val)}")
    if not s.canonically_defined:
        print("warning: not canonically defined", file=sys.stderr)
    return 0


def cmd_construct(args) -> int:
    frac = Fraction(args.frac)
    delta = parse_intset(args.delta)
    if args.hat:
        p = hat_params(args.h, frac, delta)
    else:
        if args.tau is None or args.m is None:
            print("error: --tau and --m required without --hat", file=sys.stderr)
            return 2
        p = FamilyParams(args.h, frac, delta, args.tau, args.m)
    s = construct(p)
    rec = build_record(s, h=args.h)
    rec["params"] = {"h": p.h, "frac": str(p.frac), "delta": list(p.delta),
                     "tau": p.tau, "m": p.m, "t": str(p.t), "w": p.w}
    print(json.dumps(rec))
    return 0


CLASS_ROWS = [
    "split, collision-free",
    "short, collision-free",
    "split, collisions",
    "short, collisions",
    "not short",
    "not h-regular",
]


def table_class(rec: dict) -> str:
    if rec.get("h") is None or not rec.get("h_regular"):
        return "not h-regular"
    if not rec.get("short"):
        return "not short"
    cf = rec.get("collision_free")
    if rec.get("split"):
        return "split, collision-free" if cf else "split, collisions"
    return "short, collision-free" if cf else "short, collisions"


def cmd_table(args) -> int:
    rows = []
    stream = open(args.file) if args.file != "-" else sys.stdin
    try:
        for line in stream:
            line = line.strip()
            if not line:
                continue
            rec = json.loads(line)
            if "meta" in rec:
                continue
            rows.append(rec)
    finally:
        if args.file != "-":
            stream.close()

    wide = []          # a/b >= 2, reported separately
    cells: dict = {}
    columns = set()
    for rec in rows:
        frac = rec.get("farey", "..").split("..")[-1]
        value = Fraction(frac) if frac else None
        if value is not None and value >= 2:
            wide.append(rec)
            continue
        col = (rec.get("h"), frac)
        columns.add(col)
        key = (table_class(rec), col)
        cell = cells.setdefault(key, {"count": 0, "l": {}})
        cell["count"] += 1
        cell["l"][rec["l"]] = cell["l"].get(rec["l"], 0) + 1

    cols = sorted(columns, key=lambda c: (c[0] or 0, Fraction(c[1] or 0)))
    header = ["class"] + [f"h={h} {f}" for h, f in cols]
    widths = [max(len(header[0]), max((len(r) for r in CLASS_ROWS), default=5))]
    widths += [max(len(h), 6) for h in header[1:]]
    print("  ".join(f"{name:<{w}}" for name, w in zip(header, widths)))
    total = 0
    for row_name in CLASS_ROWS:
        line = [f"{row_name:<{widths[0]}}"]
        for col, w in zip(cols, widths[1:]):
            cell = cells.get((row_name, col))
            text = str(cell["count"]) if cell else ""
            total += cell["count"] if cell else 0
            line.append(f"{text:>{w}}")
        print("  ".join(line))
    print(f"total {total} with a/b < 2; excluded {len(wide)} with a/b >= 2; "
          f"overall {total + len(wide)}")
    if args.json:
        payload = {
            "cells": [{"class": k[0], "h": k[1][0], "frac": k[1][1],
                       "count": v["count"], "by_l": v["l"]}
                      for k, v in sorted(cells.items(),
                                         key=lambda kv: (kv[0][0], str(kv[0][1])))],
            "wide": len(wide),
            "total": total + len(wide),
        }
        print(json.dumps(payload))
    return 0


def cmd_render(args) -> int:
    m, gens, c = parse_semigroup(args.semigroup)
    s = semigroup_from(m, gens, c)
    h = args.h if args.h else detect_h(s)
    if h is None:
        print("error: no h in [2, 8] makes this semigroup (nearly) regular",
              file=sys.stderr)
        return 2
    doc = render_critical_interval(s, h, "svg" if args.svg else "ascii")
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(doc)
    else:
        print(doc, end="" if doc.endswith("\n") else "\n")
    return 0


def cmd_verify(args) -> int:
    return 0 if run_all(fast=args.fast, seed=args.seed) else 1


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(
        prog="eliahou",
        description="Numerical semigroups with negative Eliahou number: "
                    "search, construct, classify.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("search", help="exhaustive search up to a conductor")
    p.add_argument("--cmax", type=int, required=True)
    p.add_argument("--cmin", type=int, default=None)
    p.add_argument("--interval-len", type=int, default=8)
    p.add_argument("--workers", type=int, default=None)
    p.add_argument("--no-prune", action="store_true",
                   help="disable the rank-based branch pruning")
    p.add_argument("--safe-bound", action="store_true",
                   help="use the proven generator cap c_max + m - gamma1")
    p.add_argument("--bound-offset", type=int, default=0,
                   help=argparse.SUPPRESS)
    p.add_argument("--width", type=int, default=256)
    p.add_argument("--out", type=str, default=None)
    p.set_defaults(func=cmd_search)

    p = sub.add_parser("classify", help="classify one semigroup literal")
    p.add_argument("semigroup", help='literal "m,g1,...;c"')
    p.add_argument("--h", type=int, default=None)
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("construct", help="build a family member")
    p.add_argument("--h", type=int, required=True)
    p.add_argument("--frac", type=str, required=True, help='e.g. "5/3"')
    p.add_argument("--delta", type=str, required=True, help='e.g. "0,1"')
    p.add_argument("--tau", type=int, default=None)
    p.add_argument("--m", type=int, default=None)
    p.add_argument("--hat", action="store_true",
                   help="use the extremal split tau and m")
    p.set_defaults(func=cmd_construct)

    p = sub.add_parser("table", help="cross-tabulate search output")
    p.add_argument("file", help="JSON-lines file, or - for stdin")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_table)

    p = sub.add_parser("render", help="draw the critical interval")
    p.add_argument("semigroup")
    p.add_argument("--h", type=int, default=None)
    group = p.add_mutually_exclusive_group()
    group.add_argument("--svg", action="store_true")
    group.add_argument("--ascii", action="store_true")
    p.add_argument("--out", type=str, default=None)
    p.set_defaults(func=cmd_render)

    p = sub.add_parser("verify", help="run the invariant battery")
    p.add_argument("--fast", action="store_true")
    p.add_argument("--seed", type=int, default=2024)
    p.set_defaults(func=cmd_verify)

    args = parser.parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
