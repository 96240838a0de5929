"""Compute k(n) by fixed-point counting for every admissible prime and
compare with the CRT reconstruction from T(n + p) mod p.

Usage:
    python scripts/k_sequence.py [--max-n 5] [--jobs 1]
"""
import argparse
import time

from topocount.congruence import PUBLISHED_K, feasible_primes, k_bounds, k_crt, k_direct
from topocount.enumeration import t_table


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--max-n", type=int, default=5)
    ap.add_argument("--jobs", type=int, default=1)
    args = ap.parse_args()

    t = t_table(7, args.jobs)
    for n in range(0, args.max_n + 1):
        primes = feasible_primes(n)
        start = time.perf_counter()
        direct = {p: k_direct(n, p, args.jobs) for p in primes}
        elapsed = time.perf_counter() - start
        bounds = k_bounds(n, t)
        line = f"n={n}  direct {direct}  bounds {bounds}  ({elapsed:.1f}s)"
        if n >= 1:
            r = k_crt(n, primes, t)
            verdict = r.k_value if not r.ambiguous else f"AMBIGUOUS ({len(r.candidates)} candidates)"
            line += f"  crt[{r.solution}] -> {verdict}"
        if n in PUBLISHED_K:
            line += f"  published {PUBLISHED_K[n]}"
        print(line)


if __name__ == "__main__":
    main()
