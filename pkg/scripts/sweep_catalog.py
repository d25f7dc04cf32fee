#!/usr/bin/env python3
"""Sweep circle directions over the toric del Pezzo catalog.

For every primitive direction up to the chosen bound this prints, per
polygon: the Hamiltonian range, the fixed-point count, the localisation
sum (always 0), and whether the lemma suite passed.  A one-line summary
per polygon closes the sweep.

usage: python scripts/sweep_catalog.py [--bound N] [--verbose]
"""

import argparse

from hamfano.fixed_data import format_rational
from hamfano.localization import abbv_sum_4d
from hamfano.toric import delpezzo_catalog, scan_directions


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--bound", type=int, default=3)
    ap.add_argument("--verbose", action="store_true")
    args = ap.parse_args()

    for entry in delpezzo_catalog():
        total = ok = suites = 0
        for item in scan_directions(entry.polytope, args.bound):
            total += 1
            if item.report.ok:
                ok += 1
            generic = not any("skipped" in n for n in item.report.notes)
            if generic:
                suites += 1
            if args.verbose:
                data = item.data
                print(
                    f"  {entry.name} xi={item.xi} H=[{format_rational(data.h_min())},"
                    f" {format_rational(data.h_max())}] comps={len(data.components)}"
                    f" sum={format_rational(abbv_sum_4d(data))}"
                    f" {'ok' if item.report.ok else 'VIOLATIONS'}"
                )
        print(
            f"{entry.name:9s} degree {entry.degree}: {total} directions, "
            f"{suites} generic lemma suites, {ok} clean reports"
        )


if __name__ == "__main__":
    main()
