#!/usr/bin/env python3
"""Tabulate quotient structure over all coprime pairs up to a bound.

Each row shows the continued-fraction entries, the base dimension, the
projective fiber dimensions, and the Galois group of the etale cover.
Human-readable counterpart of `elliquot sweep`.
"""

import argparse
import sys

from elliquot.cli import batch_sweep


def format_galois(factors: list[int]) -> str:
    if not factors:
        return "trivial"
    return " x ".join(f"Z/{f}" for f in factors)


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--n-max", type=int, default=12)
    args = parser.parse_args()

    sweep = batch_sweep(args.n_max)
    header = f"{'n/k':>7}  {'entries':<16} {'base':>4}  {'fibers':<12} galois"
    print(header)
    print("-" * len(header))
    for row in sweep["rows"]:
        fibers = " ".join(f"P^{m}" for m in row["fiber_dims"]) or "-"
        entries = ",".join(str(e) for e in row["entries"])
        print(
            f"{row['n']:>4}/{row['k']:<2}  [{entries}]{'':<{max(0, 14 - len(entries))}}"
            f"{row['base_dim']:>4}  {fibers:<12} {format_galois(row['galois_factors'])}"
        )
        assert row["base_dim"] + sum(row["fiber_dims"]) == row["g"]
    print(f"\n{len(sweep['rows'])} coprime pairs, dimension bookkeeping exact")
    return 0


if __name__ == "__main__":
    sys.exit(main())
