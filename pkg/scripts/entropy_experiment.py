#!/usr/bin/env python3
"""Entanglement-entropy experiment on the 4-cycle: second-order Renyi
entropies of coin, position, and the full register per timestep, either
exactly or through the randomized-measurement estimator.

Writes entropy.csv (+ meta.json) under --out; render with
``plots/render.py --kind entropy``.
"""

import argparse
import json
import sys
import tempfile
from pathlib import Path

from cyclewalk.cli import main as cyclewalk_main


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--out", default="results/entropy")
    parser.add_argument("--steps", type=int, default=14)
    parser.add_argument("--mode", choices=("exact", "randomized"),
                        default="randomized")
    parser.add_argument("--n-unitaries", type=int, default=300)
    parser.add_argument("--shots", type=int, default=100_000)
    parser.add_argument("--seed", type=int, default=11)
    args = parser.parse_args()

    config = {
        "walk": {"n": 2, "steps": args.steps, "theta": "pi/6", "phi": "pi/2",
                 "scheme": "present"},
        "seed": args.seed,
        "entropy_mode": {"mode": args.mode, "n_unitaries": args.n_unitaries,
                         "shots": args.shots},
    }
    with tempfile.NamedTemporaryFile("w", suffix=".json", delete=False) as fh:
        json.dump(config, fh)
        cfg_path = fh.name
    code = cyclewalk_main(["entropy", "--config", cfg_path, "--out", args.out])
    Path(cfg_path).unlink()
    return code


if __name__ == "__main__":
    sys.exit(main())
