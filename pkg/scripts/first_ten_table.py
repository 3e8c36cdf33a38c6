#!/usr/bin/env python3
"""Print the exact reduced-word counts P(s, n) for small s and n,
cross-checked against the subtractive recursion on every entry."""

import argparse
import os
import sys

sys.path.insert(0, os.path.join(os.path.dirname(__file__), "..", "src"))

from pericatalan.enumeration import build_table, peri_catalan_recursive


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--s-max", type=int, default=3)
    ap.add_argument("--n-max", type=int, default=10)
    args = ap.parse_args()
    if args.s_max < 1 or args.n_max < 1:
        ap.error("--s-max and --n-max must be >= 1")

    columns = {}
    for s in range(1, args.s_max + 1):
        table = build_table(s, args.n_max)
        memo = {}
        for n in range(1, args.n_max + 1):
            if peri_catalan_recursive(s, n, memo) != table[n]:
                raise AssertionError(f"path mismatch at s={s} n={n}")
        columns[s] = table

    widths = {s: max(len(str(columns[s][args.n_max])), len(f"s = {s}")) for s in columns}
    header = "  n  " + "  ".join(f"{f's = {s}':>{widths[s]}}" for s in columns)
    print(header)
    print("-" * len(header))
    for n in range(1, args.n_max + 1):
        print(f"{n:>3}  " + "  ".join(f"{columns[s][n]:>{widths[s]}}" for s in columns))


if __name__ == "__main__":
    main()
