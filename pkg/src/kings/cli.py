"""Command-line interface: ``kings count|table|verify|bounds|enumerate``.

Exit codes: 0 success, 1 verification mismatch, 2 usage error, 3 resource refusal.
"""

from __future__ import annotations

import argparse
import csv
import hashlib
import json
import os
import sys
from dataclasses import asdict, dataclass

from kings import __version__
from kings.bounds import bounds_profile
from kings.engine import DEFAULT_MAX_N, ResourceLimitError, count_kings_rect
from kings.enumerator import enumerate_boards, render
from kings.oracle import DEFAULT_ENUMERATION_BUDGET, EnumerationTooLarge, oracle_count
from kings.strips import from_mask, to_mask

EXIT_OK, EXIT_MISMATCH, EXIT_USAGE, EXIT_RESOURCE = 0, 1, 2, 3
CSV_HEADER = ["n", "m", "count", "elapsed_ms"]
ENGINE_VERSION = f"kings-engine/{__version__}"


class UsageError(Exception):
    pass


@dataclass
class OutputRecord:
    n: int
    m: int
    count: str
    elapsed_ms: int
    method: str  # "recursion" or "oracle"


def engine_tag() -> str:
    digest = hashlib.sha256(ENGINE_VERSION.encode()).hexdigest()[:16]
    return f"{ENGINE_VERSION}#{digest}"


class Cache:
    """JSON-lines store of ``{engine, n, m, count}``; entries from other engine builds are ignored."""

    def __init__(self, path):
        self.path = path
        self.entries: dict[tuple[int, int], str] = {}
        if path and os.path.exists(path):
            tag = engine_tag()
            with open(path) as fh:
                for line in fh:
                    line = line.strip()
                    if not line:
                        continue
                    try:
                        rec = json.loads(line)
                    except json.JSONDecodeError:
                        continue
                    if rec.get("engine") == tag:
                        self.entries[int(rec["n"]), int(rec["m"])] = str(rec["count"])

    def get(self, n, m):
        return self.entries.get((n, m)) if self.path else None

    def put(self, n, m, count: int):
        if not self.path or (n, m) in self.entries:
            return
        self.entries[n, m] = str(count)
        with open(self.path, "a") as fh:
            fh.write(json.dumps({"engine": engine_tag(), "n": n, "m": m, "count": str(count)}) + "\n")


def _compute(n, m, args, cache: Cache) -> OutputRecord:
    hit = cache.get(n, m)
    if hit is not None:
        return OutputRecord(n, m, hit, 0, "recursion")
    res = count_kings_rect(n, m, workers=args.workers, mirror=args.mirror, max_n=args.ceiling)
    cache.put(n, m, res.count)
    ms = 0 if args.no_timing else int(round(res.elapsed * 1000))
    return OutputRecord(n, m, str(res.count), ms, "recursion")


def _emit(records, fmt, out, header=True):
    if fmt == "json":
        out.write(json.dumps([asdict(r) for r in records], indent=2) + "\n")
    elif fmt == "csv":
        w = csv.writer(out, lineterminator="\n")
        if header:
            w.writerow(CSV_HEADER)
        for r in records:
            w.writerow([r.n, r.m, r.count, r.elapsed_ms])
    else:
        for r in records:
            out.write(f"n={r.n} m={r.m} count={r.count} elapsed_ms={r.elapsed_ms} method={r.method}\n")


def parse_set(text: str, n: int) -> int:
    text = text.strip()
    if not text or text in ("{}", "-"):
        return 0
    try:
        squares = [int(x) for x in text.strip("{}").split(",") if x.strip()]
    except ValueError:
        raise UsageError(f"cannot parse square set {text!r}; use comma-separated integers")
    try:
        return to_mask(squares, n)
    except ValueError as exc:
        raise UsageError(str(exc))


def cmd_count(args, out, err):
    n, m = args.n, args.m if args.m is not None else args.n
    if n < 1 or m < 1:
        raise UsageError("n and m must be positive")
    if m > n:
        err.write(f"note: m={m} > n={n}; swapping to n={m} m={n} (same board, transposed)\n")
        n, m = m, n
    rec = _compute(n, m, args, Cache(args.cache))
    if args.format == "json":
        out.write(json.dumps(asdict(rec), indent=2) + "\n")
    else:
        _emit([rec], args.format, out)
    return EXIT_OK


def cmd_table(args, out, err):
    if args.max_n < 1:
        raise UsageError("--max-n must be at least 1")
    cache = Cache(args.cache)
    records = []
    status = EXIT_OK
    for n in range(1, args.max_n + 1):
        m = n if args.m is None else args.m
        a, b = (n, m) if m <= n else (m, n)
        try:
            rec = _compute(a, b, args, cache)
        except (ResourceLimitError, MemoryError) as exc:
            err.write(f"stopped at n={n}: {exc}\n")
            status = EXIT_RESOURCE
            break
        records.append(OutputRecord(n, m, rec.count, rec.elapsed_ms, rec.method))
    _emit(records, args.format, out)
    return status


def cmd_verify(args, out, err):
    if args.max_n < 1:
        raise UsageError("--max-n must be at least 1")
    if args.max_n > args.oracle_limit:
        raise UsageError(f"--max-n {args.max_n} exceeds the oracle limit {args.oracle_limit}")
    failures = 0
    for n in range(1, args.max_n + 1):
        for m in range(1, n + 1):
            ours = count_kings_rect(n, m, workers=args.workers, mirror=args.mirror).count
            ref = oracle_count(2 * n, 2 * m, max_width=max(12, 2 * n)).count
            ok = ours == ref
            failures += not ok
            out.write(f"{'PASS' if ok else 'FAIL'} n={n} m={m} recursion={ours} oracle={ref}\n")
    out.write(f"{'all pairs agree' if not failures else f'{failures} mismatches'}\n")
    return EXIT_OK if not failures else EXIT_MISMATCH


def cmd_bounds(args, out, err):
    n = args.n
    if n < 1:
        raise UsageError("n must be positive")
    A, B = parse_set(args.A, n), parse_set(args.B, n)
    if B & ~A:
        bad = ",".join(map(str, from_mask(B & ~A)))
        raise UsageError(f"B is not a subset of A (squares {bad}): a king on the top row of the "
                         "lower strip would touch the king on the bottom row of the upper strip")
    prof = bounds_profile(A, B, n)
    if args.k is not None:
        if not 1 <= args.k <= n + 1:
            raise UsageError(f"k must be in 1..{n + 1}")
        p, q = prof.p[args.k - 1], prof.q[args.k - 1]
        out.write(f"p={p} q={q} admissible i: {p}..{q}\n")
    width = len(str(n + 1))
    ks = " ".join(str(k).rjust(width) for k in range(1, n + 2))
    out.write(f"k  {ks}\n")
    out.write("p  " + " ".join(str(v).rjust(width) for v in prof.p) + "\n")
    out.write("q  " + " ".join(str(v).rjust(width) for v in prof.q) + "\n")
    return EXIT_OK


def cmd_enumerate(args, out, err):
    n, m = args.n, args.m if args.m is not None else args.n
    if not 1 <= m <= n:
        raise UsageError("enumerate needs 1 <= m <= n")
    if args.format == "csv":
        raise UsageError("enumerate supports --format plain or json")
    total = count_kings_rect(n, m, max_n=args.ceiling).count
    if args.limit is None and total > args.budget:
        raise EnumerationTooLarge(total, args.budget)
    # a --limit preview is lazy, so the budget only gates full enumeration
    stream = enumerate_boards(n, m, budget=max(args.budget, total))
    shown = 0
    for b in stream:
        if args.limit is not None and shown >= args.limit:
            break
        grid = render(b)
        if args.recheck and not (grid.is_independent() and len(grid.occupied) == n * m):
            err.write(f"recheck failed for board {shown + 1}\n")
            return EXIT_MISMATCH
        if args.format == "json":
            out.write(json.dumps({"cells": grid.cells()}) + "\n")
        else:
            out.write(grid.text() + "\n\n")
        shown += 1
    if args.format == "json":
        out.write(json.dumps({"shown": shown, "total": str(total)}) + "\n")
    else:
        out.write(f"shown {shown} of {total}\n")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=["plain", "json", "csv"], default="plain")
    common.add_argument("--workers", type=int, default=None,
                        help="worker processes (default: $KINGS_WORKERS, else 1)")
    common.add_argument("--mirror", action="store_true",
                        help="compute half the split columns and reflect the rest")
    common.add_argument("--ceiling", type=int, default=DEFAULT_MAX_N,
                        help=f"refuse n above this (default {DEFAULT_MAX_N})")
    common.add_argument("--cache", metavar="FILE", default=None)
    common.add_argument("--no-timing", action="store_true", help="report elapsed_ms as 0")

    p = argparse.ArgumentParser(prog="kings", description=__doc__.splitlines()[0])
    p.add_argument("--version", action="version", version=ENGINE_VERSION)
    sub = p.add_subparsers(dest="command", required=True)

    c = sub.add_parser("count", parents=[common], help="count arrangements on the 2m x 2n board")
    c.add_argument("--n", type=int, required=True)
    c.add_argument("--m", type=int, default=None)
    c.set_defaults(func=cmd_count)

    t = sub.add_parser("table", parents=[common], help="counts for n = 1..max-n")
    t.add_argument("--max-n", type=int, required=True)
    t.add_argument("--m", type=int, default=None, help="fixed height (default: square boards)")
    t.set_defaults(func=cmd_table)

    v = sub.add_parser("verify", parents=[common], help="compare against the brute-force oracle")
    v.add_argument("--max-n", type=int, default=4)
    v.add_argument("--oracle-limit", type=int, default=4)
    v.set_defaults(func=cmd_verify)

    b = sub.add_parser("bounds", parents=[common], help="show p and q for (A, B)")
    b.add_argument("--n", type=int, required=True)
    b.add_argument("--A", required=True, help="comma-separated squares, e.g. 1,2,5,7")
    b.add_argument("--B", required=True)
    b.add_argument("--k", type=int, default=None)
    b.set_defaults(func=cmd_bounds)

    e = sub.add_parser("enumerate", parents=[common], help="print explicit arrangements")
    e.add_argument("--n", type=int, required=True)
    e.add_argument("--m", type=int, default=None)
    e.add_argument("--limit", type=int, default=None)
    e.add_argument("--budget", type=int, default=DEFAULT_ENUMERATION_BUDGET)
    e.add_argument("--recheck", action="store_true", help="re-test every printed board")
    e.set_defaults(func=cmd_enumerate)
    return p


def main(argv=None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args, out, err)
    except UsageError as exc:
        err.write(f"error: {exc}\n")
        return EXIT_USAGE
    except (ResourceLimitError, EnumerationTooLarge, MemoryError) as exc:
        err.write(f"refused: {exc}\n")
        return EXIT_RESOURCE


if __name__ == "__main__":
    sys.exit(main())
