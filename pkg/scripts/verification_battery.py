#!/usr/bin/env python3
"""Run the brute-force cover and lift verifiers over a battery of
configurations and print one line per check.

Covers both regimes (with and without fixed coordinates), the full
symmetric groups, and the trivial subgroup.  Exits nonzero if any
verification fails.
"""

import argparse
import sys
import time

from elliquot.covers import verify_cover
from elliquot.hj import hj_expand, sigma_from_expansion
from elliquot.lift import verify_lift
from elliquot.sigma import SigmaSubgroup, orbit_decomposition, sigma_from_block_sizes


def battery() -> list[tuple[str, object, int]]:
    configs: list[tuple[str, object, int]] = []
    for n, k in [(2, 1), (5, 2), (7, 3), (8, 3), (12, 5)]:
        od = orbit_decomposition(sigma_from_expansion(hj_expand(n, k)))
        configs.append((f"pair ({n},{k})", od, 6))
    for sizes in [(2, 2), (2, 4), (2, 3), (3, 3)]:
        configs.append(
            (f"blocks {sizes}, nothing fixed", orbit_decomposition(sigma_from_block_sizes(sizes)), 4)
        )
    for g in (1, 2, 3):
        od = orbit_decomposition(SigmaSubgroup(g + 1, set(range(1, g + 1))))
        configs.append((f"full symmetric group, g={g}", od, 6))
    configs.append(("trivial subgroup, g=3", orbit_decomposition(SigmaSubgroup(4, set())), 5))
    return configs


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--samples", type=int, default=10)
    parser.add_argument("--seed", type=int, default=0)
    parser.add_argument("--workers", type=int, default=1)
    args = parser.parse_args()

    failures = 0
    started = time.perf_counter()
    for label, od, level in battery():
        cover = verify_cover(
            od, torsion_level=level, samples=args.samples, seed=args.seed, workers=args.workers
        )
        lift = verify_lift(
            od, torsion_level=level, samples=args.samples, seed=args.seed, workers=args.workers
        )
        fibers = sorted({c["fiber_size"] for c in cover["checks"]})
        ok = cover["pass"] and lift["pass"]
        failures += 0 if ok else 1
        print(
            f"{'PASS' if ok else 'FAIL'}  {label:<34} fibers {fibers} "
            f"galois order {cover['config']['descriptor']['galois_order']}"
        )
    print(f"\n{time.perf_counter() - started:.2f}s; {failures} failing configuration(s)")
    return 1 if failures else 0


if __name__ == "__main__":
    sys.exit(main())
