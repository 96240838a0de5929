"""Command-line front end.

Exit codes: 0 ok, 1 a verification instance failed, 2 bad or out-of-range
arguments, 3 cache mismatch, 4 k(n) methods disagree.
"""
from __future__ import annotations

import argparse
import json
import sys
import textwrap

from . import congruence, enumeration
from .cache import DEFAULT_PATH, ResultCache
from .congruence import THEOREMS, feasible_primes, k_crt, k_direct_report
from .enumeration import (CountTable, count_preorders, count_t0, count_topologies_naive,
                          count_topologies_partition, t_table)
from .errors import CacheMismatch, TopocountError
from .group import CyclicAction, count_fixed, is_prime

EXIT_FAIL, EXIT_RANGE, EXIT_CACHE, EXIT_DISAGREE = 1, 2, 3, 4


class UsageError(Exception):
    pass


def _emit(args, table_text: str, payload) -> None:
    if args.format == "json":
        print(json.dumps(payload, sort_keys=True))
    else:
        print(table_text)


def _t0_for_partition(n: int, cache: ResultCache, jobs: int) -> CountTable:
    tab = CountTable("T0")
    for k in range(1, n + 1):
        v = count_t0(k, jobs)
        cache.record("T0", k, v, "backtrack")
        tab.put(k, v, "backtrack")
    return tab


def _compute_count(kind: str, n: int, method: str, cache: ResultCache, jobs: int) -> tuple[int, str]:
    if n < 0:
        raise UsageError(f"n must be non-negative, got {n}")
    if method == "auto":
        method = "backtrack"
    if method == "naive":
        return count_topologies_naive(n, t0_only=kind == "T0"), "naive"
    if method == "backtrack":
        return count_preorders(n, t0=kind == "T0", jobs=jobs), "backtrack"
    if method == "partition":
        if kind != "T":
            raise UsageError("the partition formula computes T only")
        if n > enumeration.MAX_BACKTRACK:
            raise UsageError(f"partition needs T0(k) for k <= {n}, beyond enumeration reach")
        return count_topologies_partition(n, _t0_for_partition(n, cache, jobs)), "partition-formula"
    raise UsageError(f"unknown method {method!r}")


def cmd_count(args, cache: ResultCache) -> int:
    cached = cache.entry(args.kind, args.n)
    if cached is not None and not args.recompute:
        value, method = cached["value"], "cache"
    else:
        value, method = _compute_count(args.kind, args.n, args.method, cache, args.jobs)
        cache.record(args.kind, args.n, value, method)
        cache.save()
    _emit(args, str(value), {"kind": args.kind, "n": args.n, "value": value, "method": method})
    return 0


def _check_action(p: int, n: int) -> None:
    if not is_prime(p):
        raise UsageError(f"p = {p} is not prime")
    if n < 0:
        raise UsageError(f"n must be non-negative, got {n}")
    if p + n > enumeration.MAX_BACKTRACK:
        raise UsageError(f"p + n = {p + n} exceeds the {enumeration.MAX_BACKTRACK}-point reach")


def cmd_fixed(args, cache: ResultCache) -> int:
    _check_action(args.p, args.n)
    action = CyclicAction(args.p, args.n)
    value = count_fixed(action, t0_only=args.t0, jobs=args.jobs)
    if not args.t0:
        cache.record("k", args.n, value, "direct")
        cache.save()
    _emit(args, str(value), {"p": args.p, "n": args.n, "t0": args.t0, "value": value,
                             "action": action.describe()})
    return 0


def _report_text(r) -> str:
    lines = []
    if r.ambiguous:
        lines.append(f"k({r.n}) = AMBIGUOUS  [{r.method}]")
    else:
        lines.append(f"k({r.n}) = {r.k_value}  [{r.method}]")
    lines.append(f"  bounds    {r.bounds}")
    if r.method == "direct":
        lines.append(f"  action    C_{r.primes[0]} on {r.primes[0] + r.n} points")
    else:
        lines.append(f"  primes    {', '.join(map(str, r.primes))}")
        lines.append(f"  residues  {', '.join(map(str, r.residues_used))}  ->  {r.solution}")
        if r.ambiguous:
            lines.append(f"  {len(r.candidates)} candidates:")
            lines.append(textwrap.fill(", ".join(map(str, r.candidates)), width=78,
                                       initial_indent="    ", subsequent_indent="    "))
    return "\n".join(lines)


def cmd_kn(args, cache: ResultCache) -> int:
    n = args.n
    if n < 0:
        raise UsageError(f"n must be non-negative, got {n}")
    reports = []
    if args.method in ("direct", "both"):
        _check_action(args.p, n)
    if args.method in ("crt", "both"):
        primes = tuple(args.primes) if args.primes else feasible_primes(n)
        if not primes:
            raise UsageError(f"no prime p keeps T({n} + p) within reach")
        need = max([n + 1] + [n + p for p in primes])
        if need > enumeration.MAX_BACKTRACK:
            raise UsageError(f"T({need}) is beyond enumeration reach")
    if n + 1 > enumeration.MAX_BACKTRACK:
        raise UsageError(f"the bounds need T({n + 1}), beyond enumeration reach")
    tab = t_table(n + 1 if args.method == "direct" else need, args.jobs)
    for k, v in tab.values.items():
        cache.record("T", k, v, tab.method[k])
    if args.method in ("direct", "both"):
        reports.append(k_direct_report(n, args.p, tab, args.jobs))
    if args.method in ("crt", "both"):
        reports.append(k_crt(n, primes, tab))

    status = 0
    if args.method == "both":
        direct, via_crt = reports
        if via_crt.ambiguous:
            agree = direct.k_value in via_crt.candidates
        else:
            agree = direct.k_value == via_crt.k_value
        if not agree:
            status = EXIT_DISAGREE
    for r in reports:
        if not r.ambiguous and status == 0:
            cache.record("k", n, r.k_value, r.method)
    cache.save()

    text = "\n".join(_report_text(r) for r in reports)
    if args.method == "both":
        text += "\nmethods " + ("agree" if status == 0 else "DISAGREE")
    _emit(args, text, {"reports": [r.to_dict() for r in reports],
                       "agree": status == 0 if args.method == "both" else None})
    if status:
        print(f"error: direct and crt values of k({n}) disagree", file=sys.stderr)
    return status


def cmd_verify(args, cache: ResultCache) -> int:
    if args.all:
        theorems = THEOREMS
    elif args.theorem:
        theorems = (args.theorem,)
    else:
        raise UsageError("give --theorem NAME or --all")
    reports = [congruence.verify(t, limit=args.limit, n_values=tuple(args.n_values), jobs=args.jobs)
               for t in theorems]
    rows = []
    for rep in reports:
        for inst in rep.instances:
            key = ",".join(map(str, inst.key))
            detail = " ".join(f"{k}={v}" for k, v in inst.detail.items())
            rows.append(f"{rep.theorem:<16} ({key:<5}) {inst.status.upper():<4}  {detail}")
    failed = sum(len(r.failed) for r in reports)
    rows.append(f"{sum(len(r.instances) for r in reports)} instances, {failed} failed")
    payload = [{"theorem": r.theorem,
                "instances": [{"key": list(i.key), "status": i.status, "detail": i.detail}
                              for i in r.instances]} for r in reports]
    _emit(args, "\n".join(rows), payload)
    return EXIT_FAIL if failed else 0


def cmd_cache(args, cache: ResultCache) -> int:
    if args.action == "clear":
        cache.clear()
        _emit(args, f"cleared {cache.path}", {"cleared": str(cache.path)})
        return 0
    if args.format == "json":
        print(json.dumps(cache.data, sort_keys=True))
        return 0
    for table in ("T", "T0", "k"):
        for n, e in sorted(cache.data[table].items(), key=lambda kv: int(kv[0])):
            print(f"{table:<3} {n:>2}  {e['value']:>10}  {e['method']:<18} {e['at']}")
    return 0


def _int_list(text: str) -> list[int]:
    return [int(x) for x in text.split(",") if x.strip()]


def build_parser() -> argparse.ArgumentParser:
    # Common flags are accepted before or after the subcommand; the copies on
    # the subparsers must not reset values given before it.
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--cache", default=argparse.SUPPRESS, help="result cache file")
    common.add_argument("--format", choices=("table", "json"), default=argparse.SUPPRESS)
    common.add_argument("--jobs", type=int, default=argparse.SUPPRESS,
                        help="worker processes for enumeration")

    parser = argparse.ArgumentParser(prog="topocount",
                                     description="Count finite topologies and check congruences.")
    parser.add_argument("--cache", default=DEFAULT_PATH, help="result cache file")
    parser.add_argument("--format", choices=("table", "json"), default="table")
    parser.add_argument("--jobs", type=int, default=1, help="worker processes for enumeration")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("count", parents=[common], help="T(n) or T0(n)")
    p.add_argument("--kind", choices=("T", "T0"), default="T")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--method", choices=("auto", "naive", "backtrack", "partition"), default="auto")
    p.add_argument("--recompute", action="store_true",
                   help="ignore a cached value and check the fresh one against it")
    p.set_defaults(func=cmd_count)

    p = sub.add_parser("fixed", parents=[common], help="topologies fixed by C_p on p+n points")
    p.add_argument("--p", type=int, required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--t0", action="store_true", help="count T0 topologies only")
    p.set_defaults(func=cmd_fixed)

    p = sub.add_parser("kn", parents=[common], help="k(n) by fixed points and/or CRT")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--method", choices=("direct", "crt", "both"), default="both")
    p.add_argument("--primes", type=_int_list, default=None,
                   help="comma-separated primes for the CRT (default: all within reach)")
    p.add_argument("--p", type=int, default=2, help="prime for the direct count")
    p.set_defaults(func=cmd_kn)

    p = sub.add_parser("verify", parents=[common], help="check the congruence theorems")
    p.add_argument("--theorem", choices=THEOREMS)
    p.add_argument("--all", action="store_true")
    p.add_argument("--limit", type=int, default=enumeration.MAX_BACKTRACK,
                   help="largest point count to try; larger instances are skipped")
    p.add_argument("--n-values", type=_int_list, default=[1, 2, 3, 4],
                   help="n values for the bounds and k_match checks")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("cache", parents=[common], help="inspect or reset the cache")
    p.add_argument("action", choices=("show", "clear"))
    p.set_defaults(func=cmd_cache)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        cache = ResultCache.load(args.cache)
        return args.func(args, cache)
    except CacheMismatch as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_CACHE
    except (UsageError, TopocountError, ValueError) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_RANGE


if __name__ == "__main__":
    sys.exit(main())
