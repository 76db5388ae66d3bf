#!/usr/bin/env python3
"""Monte Carlo sweep of the PPT ratio over a grid of dimensions.

Usage:
    python scripts/run_sweep.py [--max-dim 4] [--samples 200000] [--seeds 1 2 3] [--out sweep.csv]
"""
import argparse
import sys

from xppt.montecarlo import estimates_to_csv, sweep
from xppt.xstate import Dims


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--max-dim", type=int, default=4)
    parser.add_argument("--samples", type=int, default=200_000)
    parser.add_argument("--seeds", type=int, nargs="+", default=[1])
    parser.add_argument("--methods", nargs="+", default=["naive", "rb"])
    parser.add_argument("--workers", type=int, default=1)
    parser.add_argument("--out", default="-")
    args = parser.parse_args()

    dims = [Dims(m, n) for m in range(2, args.max_dim + 1) for n in range(m, args.max_dim + 1)]
    rows = sweep(dims, [args.samples], args.seeds, args.methods, args.workers)
    text = estimates_to_csv(rows)
    if args.out == "-":
        sys.stdout.write(text)
    else:
        with open(args.out, "w") as fh:
            fh.write(text)
    bad = [r for r in rows if not r.passed(4.0)]
    for r in bad:
        print(f"|z| > 4: {r.dims} {r.method.value} seed={r.seed} z={r.z_score:.2f}", file=sys.stderr)
    return 1 if bad else 0


if __name__ == "__main__":
    sys.exit(main())
