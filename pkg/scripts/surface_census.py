#!/usr/bin/env python3
"""Census of surface characters from random generating vectors.

Draws realisable branched covers for each group, computes the character on
H_1 and checks that ramification data is recovered from it.
"""
import argparse
import random
import sys
from collections import Counter

from gassmann.groups import make_named_group
from gassmann.surfaces import data_from_vector, random_generating_vector, recover_ramification, surface_character


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--groups", default="cyclic(2),cyclic(6),sym(3),dihedral(4),quat8")
    ap.add_argument("--count", type=int, default=200)
    ap.add_argument("--seed", type=int, default=1)
    args = ap.parse_args()
    bad = 0
    for desc in args.groups.split(","):
        G = make_named_group(desc)
        rng = random.Random(f"census:{args.seed}:{desc}")
        genera, ok = Counter(), 0
        for _ in range(args.count):
            vec = random_generating_vector(G, rng)
            if vec is None:
                continue
            tau, _, cs = vec
            data = data_from_vector(G, tau, cs)
            chi = surface_character(G, data)
            genera[chi.values[0] // 2] += 1
            ok += recover_ramification(G, chi) == data
        total = sum(genera.values())
        bad += total - ok
        common = ", ".join(f"g={g}:{n}" for g, n in sorted(genera.items())[:8])
        print(f"{desc:<12} vectors={total:<5} recovered={ok:<5} genera {common}")
    return 1 if bad else 0


if __name__ == "__main__":
    sys.exit(main())
