"""Print T(n) and T0(n) with the method and time taken for each.

Usage:
    python scripts/count_table.py [--max-n 7] [--jobs 1]
"""
import argparse
import time

from topocount.enumeration import (CountTable, count_preorders, count_t0, count_topologies_naive,
                                   count_topologies_partition, stirling2)


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--max-n", type=int, default=7)
    ap.add_argument("--jobs", type=int, default=1)
    args = ap.parse_args()

    t0 = CountTable("T0")
    print(f"{'n':>2} {'T0(n)':>10} {'T(n)':>10} {'naive':>6}  {'seconds':>7}")
    for n in range(args.max_n + 1):
        start = time.perf_counter()
        t0.put(n, count_t0(n, args.jobs), "backtrack")
        t = count_preorders(n, jobs=args.jobs)
        elapsed = time.perf_counter() - start
        naive = count_topologies_naive(n) if n <= 3 else None
        via_stirling = count_topologies_partition(n, t0)
        assert via_stirling == t, (n, via_stirling, t)
        assert naive is None or naive == t
        print(f"{n:>2} {t0[n]:>10} {t:>10} {'ok' if naive else '-':>6}  {elapsed:7.2f}")
    print("\nS(n,k) rows used by the partition formula:")
    for n in range(1, args.max_n + 1):
        print(f"  n={n}: {[stirling2(n, k) for k in range(1, n + 1)]}")


if __name__ == "__main__":
    main()
