#!/usr/bin/env python3
"""Tabulate visit frequencies of a balance window across starting balances.

Prints short-window counts, long-run empirical frequencies, and the ergodic
prediction side by side; the long-run columns agree with the prediction
while short windows fluctuate by O(1/N).
"""

import argparse
import sys

from savings_dynamics import chaotic_params, visit_frequency

SEEDS = (1450.0, 1380.0, 1023.0, 1900.0, 800.0)


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--b", type=float, default=2.0)
    ap.add_argument("--lo", type=float, default=1400.0)
    ap.add_argument("--hi", type=float, default=1600.0)
    ap.add_argument("--short-n", type=int, default=150)
    ap.add_argument("--long-n", type=int, default=100_000)
    args = ap.parse_args()

    cfg = chaotic_params(args.b)
    print(f"window [{args.lo:g}, {args.hi:g}], b = {args.b:g}")
    print(f"{'s0':>8} {'count/' + str(args.short_n):>12} {'freq@' + str(args.long_n):>14} {'predicted':>12}")
    for s0 in SEEDS:
        short = visit_frequency(cfg, s0, args.lo, args.hi, args.short_n)
        long_run = visit_frequency(cfg, s0, args.lo, args.hi, args.long_n)
        print(
            f"{s0:>8g} {short.count:>8}/{args.short_n} {long_run.freq:>14.6f} "
            f"{long_run.predicted.predicted:>12.6f}"
        )
    return 0


if __name__ == "__main__":
    sys.exit(main())
