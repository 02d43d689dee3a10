#!/usr/bin/env python3
"""Tabulate circuit-size metrics of all four schemes over an (n, t) grid,
cross-checking counted circuits against the closed forms where buildable.

Writes metrics.csv under --out; render with
``plots/render.py --kind metrics-heatmap``.
"""

import argparse
import sys

from cyclewalk.cli import main as cyclewalk_main


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--out", default="results/metrics")
    parser.add_argument("--n", default="2:8")
    parser.add_argument("--t", default="1:20")
    parser.add_argument("--schemes", default="all")
    args = parser.parse_args()
    return cyclewalk_main(["metrics", "--n", args.n, "--t", args.t,
                           "--schemes", args.schemes, "--out", args.out])


if __name__ == "__main__":
    sys.exit(main())
