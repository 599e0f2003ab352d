#!/usr/bin/env python3
"""Grid-refinement study of the triple linking number for catalog links.

Prints mu, its nearest-integer residual, and the refinement deltas for a
geometric ladder of grid sizes, plus wall-clock per solve.
"""

import argparse
import time

from linkhel import catalog
from linkhel.invariants import milnor_mu


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--entry", default="borromean", choices=catalog.names())
    parser.add_argument("--grids", type=int, nargs="+", default=[16, 32, 64, 128])
    args = parser.parse_args()

    entry = catalog.get_entry(args.entry)
    print(f"entry: {entry.name}   expected: {entry.expected}")
    print(f"{'N':>5} {'mu':>16} {'residual':>12} {'|mu_N - mu_prev|':>18} {'secs':>8}")
    prev = None
    for n in args.grids:
        t0 = time.perf_counter()
        report = milnor_mu(entry.link, n)
        dt = time.perf_counter() - t0
        delta = "" if prev is None else f"{abs(report.mu - prev):18.3e}"
        print(f"{n:>5} {report.mu:>16.10f} {report.mu_residual:>12.3e} {delta:>18} {dt:>8.2f}")
        prev = report.mu


if __name__ == "__main__":
    main()
