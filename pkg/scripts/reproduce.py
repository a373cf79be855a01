#!/usr/bin/env python3
"""Run the reproduction suite and write the JSON report to a file."""
import argparse
import json
import sys
import time

from gassmann import __version__
from gassmann.config import RunConfig
from gassmann.reproduce import all_pass, run_suite


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--seed", type=int, default=1)
    ap.add_argument("--out", default="reproduce_report.json")
    args = ap.parse_args()
    cfg = RunConfig(seed=args.seed)
    t0 = time.perf_counter()
    rows = run_suite(cfg)
    elapsed = time.perf_counter() - t0
    report = {"version": __version__, "config": cfg.to_json(), "claims": [r.to_json() for r in rows],
              "all_pass": all_pass(rows)}
    with open(args.out, "w") as fh:
        json.dump(report, fh, sort_keys=True, indent=2)
    for r in rows:
        print(f"{r.verdict:>12}  {r.claim}")
    print(f"wrote {args.out} ({elapsed:.1f}s)")
    return 0 if report["all_pass"] else 1


if __name__ == "__main__":
    sys.exit(main())
