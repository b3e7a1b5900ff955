#!/usr/bin/env python3
"""Search per-kind transistor costs against the published multiplier totals.

Builds both 4x4 designs, takes their cell censuses, and searches integer
costs in [2, 24] for AND2/HA/FA such that the conventional design prices
out to 376 transistors and the proposed one to 320. The shipped default
table is the unique feasible assignment with the 16-transistor full adder.

Usage: python scripts/calibrate_costs.py [--lo 2] [--hi 24]
"""

import argparse
import sys

import amlab


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--lo", type=int, default=2, help="minimum cost per kind")
    parser.add_argument("--hi", type=int, default=24, help="maximum cost per kind")
    parser.add_argument("--conventional-total", type=int, default=376)
    parser.add_argument("--proposed-total", type=int, default=320)
    args = parser.parse_args()

    conv = amlab.cell_stats(amlab.build_conventional(4))
    prop = amlab.cell_stats(amlab.build_proposed(4))
    print(f"conventional census: AND2={conv.and2} HA={conv.ha} FA={conv.fa}")
    print(f"proposed census:     AND2={prop.and2} HA={prop.ha} FA={prop.fa}")

    feasible = amlab.search_transistor_costs(
        conv, prop, args.conventional_total, args.proposed_total, args.lo, args.hi
    )
    if not feasible:
        print("INFEASIBLE: no integer cost assignment reproduces both totals")
        return 1

    print(f"{len(feasible)} feasible assignment(s) for totals "
          f"{args.conventional_total}/{args.proposed_total}:")
    for a in feasible:
        print(f"  AND2={a.and2:2d} HA={a.ha:2d} FA={a.fa:2d}")

    chosen = [a for a in feasible if a.fa == 16]
    if len(chosen) != 1:
        print("no unique assignment with FA=16; defaults cannot be confirmed")
        return 1
    a = chosen[0]
    print(f"chosen (16-transistor full adder anchor): AND2={a.and2} HA={a.ha} FA={a.fa}")

    tech = amlab.builtin_tech("tsmc180")
    shipped = tech.transistors
    ok = (shipped["AND2"], shipped["HA"], shipped["FA"]) == (a.and2, a.ha, a.fa)
    print(f"shipped default table matches: {ok}")
    return 0 if ok else 1


if __name__ == "__main__":
    sys.exit(main())
