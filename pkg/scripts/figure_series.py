#!/usr/bin/env python3
"""Emit the chaotic balance trajectory S_n for plotting.

Writes an (n, balance) CSV for the derived chaotic parameters; pipe it into
any plotting tool, e.g.

    python scripts/figure_series.py --n 150 --out series.csv
"""

import argparse
import sys

from savings_dynamics import chaotic_params, simulate


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--b", type=float, default=2.0)
    ap.add_argument("--s0", type=float, default=1450.0)
    ap.add_argument("--n", type=int, default=150)
    ap.add_argument("--out", default=None)
    args = ap.parse_args()

    cfg = chaotic_params(args.b)
    series = simulate(cfg.process_params(), args.s0, args.n)
    fh = open(args.out, "w", newline="\n") if args.out else sys.stdout
    fh.write("n,balance\n")
    for i, value in enumerate(series.values):
        fh.write(f"{i},{value:.17g}\n")
    if args.out:
        fh.close()
        print(f"wrote {args.n + 1} rows to {args.out}", file=sys.stderr)
    return 0


if __name__ == "__main__":
    sys.exit(main())
