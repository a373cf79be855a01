#!/usr/bin/env python3
"""Regulator constants of product relations over every subset of a prime set.

For each nonempty subset P the predicted class prod(P) is compared with the
reduction path, and with direct evaluation when the group is small enough.
"""
import argparse
import itertools
import sys
import time

from gassmann.regulator import DEFAULT_DIRECT_EVAL_CAP, SUPPORTED_PRIMES, biggroup


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--primes", default="2,3,5", help="comma-separated subset of %s" % (SUPPORTED_PRIMES,))
    ap.add_argument("--direct-eval-cap", type=int, default=DEFAULT_DIRECT_EVAL_CAP)
    ap.add_argument("--q", type=int, action="append", default=[], help="local witness prime (repeatable)")
    args = ap.parse_args()
    primes = [int(p) for p in args.primes.split(",")]
    failures = 0
    print(f"{'P':<12}{'|G|':>10}{'pred':>6}{'reduc':>7}{'direct':>8}{'secs':>8}")
    for k in range(1, len(primes) + 1):
        for P in itertools.combinations(primes, k):
            t0 = time.perf_counter()
            r = biggroup(P, q_list=args.q, direct_eval_cap=args.direct_eval_cap, max_group_order=10 ** 12)
            direct = "-" if r.direct is None else r.direct.value
            failures += not r.agrees
            print(f"{str(set(P)):<12}{r.order:>10}{r.predicted.value:>6}{r.reduction.value:>7}"
                  f"{direct:>8}{time.perf_counter() - t0:>8.2f}")
    return 1 if failures else 0


if __name__ == "__main__":
    sys.exit(main())
