#!/usr/bin/env python3
"""Noisy-fidelity experiment on the 4-cycle: Hellinger fidelity of the
sampled walker distribution against the ideal one, per timestep, for the
one-Fourier-block circuit and the per-step-Fourier circuit.

Writes compare.csv (+ meta.json) under --out; render with
``plots/render.py --kind fidelity``.
"""

import argparse
import json
import sys
import tempfile
from pathlib import Path

from cyclewalk.cli import main as cyclewalk_main


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--out", default="results/fidelity")
    parser.add_argument("--steps", type=int, default=19)
    parser.add_argument("--p2", type=float, default=0.01)
    parser.add_argument("--shots", type=int, default=20000)
    parser.add_argument("--repeat", type=int, default=5)
    parser.add_argument("--seed", type=int, default=7)
    args = parser.parse_args()

    config = {
        "walk": {"n": 2, "steps": args.steps, "theta": "pi/6", "phi": "pi/2",
                 "scheme": "present"},
        "noise": {"p2": args.p2},
        "shots": args.shots,
        "seed": args.seed,
        "schemes": ["present", "qft"],
        "repeat": args.repeat,
    }
    with tempfile.NamedTemporaryFile("w", suffix=".json", delete=False) as fh:
        json.dump(config, fh)
        cfg_path = fh.name
    code = cyclewalk_main(["compare-schemes", "--config", cfg_path,
                           "--out", args.out])
    Path(cfg_path).unlink()
    return code


if __name__ == "__main__":
    sys.exit(main())
