"""Command-line driver: run walks, tabulate circuit metrics, compare schemes,
and estimate entanglement entropies.  Results land in CSV (one row per
timestep) plus a meta.json echoing the configuration.

Exit codes: 0 success, 2 usage, 3 configuration, 4 runtime failure.
"""

from __future__ import annotations

import argparse
import csv
import json
import sys
from pathlib import Path

import numpy as np

from . import __version__, metrics, noise as noise_mod, oracle, statevec, walks
from .circuit import gate_counts
from .config import ConfigError, ExperimentConfig, load_config, parse_scheme
from .walks import Scheme, WalkConfig

SCHEMA_VERSION = 1

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_CONFIG = 3
EXIT_RUNTIME = 4


def main(argv=None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code not in (0, None) else EXIT_OK
    try:
        return args.func(args)
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except Exception as exc:  # noqa: BLE001 - single reporting point
        print(f"runtime error: {exc}", file=sys.stderr)
        return EXIT_RUNTIME


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="cyclewalk",
        description="Cycle quantum walks: simulate, count, compare, probe.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    run = sub.add_parser("run", help="simulate one walk over t = 0..steps")
    _common_flags(run)
    run.set_defaults(func=cmd_run)

    met = sub.add_parser("metrics", help="closed-form and counted circuit metrics")
    met.add_argument("--n", default="2:8", help="position-qubit range lo:hi")
    met.add_argument("--t", default="1:20", help="timestep range lo:hi")
    met.add_argument("--schemes", default="all",
                     help="comma list or \"all\" (present,qft,id-linear-depth,id-ancilla)")
    met.add_argument("--out", required=True, help="output directory")
    met.add_argument("--format", choices=("csv", "json"), default="csv")
    met.set_defaults(func=cmd_metrics)

    cmp_ = sub.add_parser("compare-schemes",
                          help="noisy fidelity-vs-t curves for several schemes")
    _common_flags(cmp_)
    cmp_.set_defaults(func=cmd_compare)

    ent = sub.add_parser("entropy", help="entanglement entropy vs timestep")
    _common_flags(ent)
    ent.set_defaults(func=cmd_entropy)
    return parser


def _common_flags(sub):
    sub.add_argument("--config", required=True, help="JSON experiment config")
    sub.add_argument("--out", required=True, help="output directory")
    sub.add_argument("--seed", type=int, default=None, help="override config seed")
    sub.add_argument("--format", choices=("csv", "json"), default="csv")


def _load(args) -> ExperimentConfig:
    cfg = load_config(args.config)
    if args.seed is not None:
        cfg.seed = args.seed
        cfg.raw = dict(cfg.raw, seed=args.seed)
    return cfg


def _derive_seed(*parts: int) -> int:
    return int(np.random.SeedSequence(list(parts)).generate_state(1)[0])


def _fmt(value) -> str:
    if isinstance(value, float):
        return repr(value)
    return str(value)


def _write_rows(out_dir: Path, stem: str, fmt: str, header: list[str],
                rows: list[list]) -> Path:
    out_dir.mkdir(parents=True, exist_ok=True)
    if fmt == "csv":
        path = out_dir / f"{stem}.csv"
        with open(path, "w", newline="\n", encoding="utf-8") as fh:
            writer = csv.writer(fh, lineterminator="\n")
            writer.writerow(header)
            for row in rows:
                writer.writerow([_fmt(v) for v in row])
    else:
        path = out_dir / f"{stem}.json"
        payload = [dict(zip(header, row)) for row in rows]
        with open(path, "w", encoding="utf-8") as fh:
            json.dump(payload, fh, indent=2, sort_keys=True)
            fh.write("\n")
    return path


def _write_meta(out_dir: Path, command: str, cfg_doc: dict, seed: int,
                extra: dict | None = None):
    meta = {
        "schema_version": SCHEMA_VERSION,
        "package_version": __version__,
        "command": command,
        "seed": seed,
        "config": cfg_doc,
    }
    if extra:
        meta.update(extra)
    with open(out_dir / "meta.json", "w", encoding="utf-8") as fh:
        json.dump(meta, fh, indent=2, sort_keys=True)
        fh.write("\n")


# ---------------------------------------------------------------------------
# run
# ---------------------------------------------------------------------------

def _walk_at(cfg_walk: WalkConfig, t: int) -> WalkConfig:
    return WalkConfig(n=cfg_walk.n, steps=t, theta=cfg_walk.theta,
                      phi=cfg_walk.phi, scheme=cfg_walk.scheme,
                      coin_matrix=cfg_walk.coin_matrix,
                      localized_init=cfg_walk.localized_init)


def _empirical_distribution(cfg: ExperimentConfig, t: int) -> np.ndarray | None:
    """Sampled / noisy position distribution, or None for the ideal echo."""
    if cfg.noise is None and cfg.shots is None:
        return None
    circuit = walks.build_walk(_walk_at(cfg.walk, t))
    seed_t = _derive_seed(cfg.seed, t)
    if cfg.noise is None:
        state = statevec.run_circuit(statevec.StateVector.zero(cfg.walk.n + 1), circuit)
        counts = statevec.sample_counts(state, cfg.shots, seed_t)
    else:
        counts = noise_mod.run_noisy(circuit, cfg.noise, cfg.shots, seed_t)
    pos_counts = counts.reshape(2, -1).sum(axis=0)
    return pos_counts / pos_counts.sum()


def _entropies_at(cfg: ExperimentConfig, t: int, ideal_state: statevec.StateVector):
    n_pos = cfg.walk.n
    mode = cfg.entropy_mode
    if mode.mode == "exact":
        if cfg.noise is None:
            rep = statevec.purities(ideal_state, n_pos)
            pur = (rep.purity_coin, rep.purity_position, rep.purity_total)
        else:
            circuit = walks.build_walk(_walk_at(cfg.walk, t))
            rho = noise_mod.average_density_matrix(
                circuit, cfg.noise, mode.trajectories, _derive_seed(cfg.seed, t, 1))
            pur = noise_mod.density_matrix_purities(rho, n_pos)
    else:
        pur = []
        for k, part in enumerate(("coin", "position", "total")):
            seed_part = _derive_seed(cfg.seed, t, 2 + k)
            if cfg.noise is None:
                est = metrics.state_purity_estimate(
                    ideal_state, n_pos, part, mode.n_unitaries, mode.shots, seed_part)
            else:
                circuit = walks.build_walk(_walk_at(cfg.walk, t))
                run, n_part = noise_mod.noisy_part_runner(
                    circuit, cfg.noise, n_pos, part, mode.shots)
                est = metrics.randomized_purity(run, n_part, mode.n_unitaries,
                                                mode.shots, seed_part)
            pur.append(est)
    # estimator fluctuations may leave (0, 1]; clamp before taking logs
    return metrics.EntropyReport.from_purities(*pur, clamp=True)


def cmd_run(args) -> int:
    cfg = _load(args)
    out_dir = Path(args.out)
    n_positions = cfg.walk.n_positions
    want = set(cfg.outputs)

    header = ["t"]
    if "distribution" in want:
        header += [f"p_{k}" for k in range(n_positions)]
        header += [f"phat_{k}" for k in range(n_positions)]
    if "fidelity" in want:
        header.append("hellinger_fidelity")
    if "entropy" in want:
        header += ["s2_coin", "s2_position", "s2_total"]

    rows = []
    amp_state = oracle.initial_state(n_positions, cfg.walk.theta, cfg.walk.phi)
    for t in range(cfg.walk.steps + 1):
        if t > 0:
            amp_state = oracle.step(amp_state, cfg.walk.coin_matrix)
        ideal = oracle.position_probabilities(amp_state)
        empirical = _empirical_distribution(cfg, t)
        shown = ideal if empirical is None else empirical

        row: list = [t]
        if "distribution" in want:
            row += [float(x) for x in ideal]
            row += [float(x) for x in shown]
        if "fidelity" in want:
            row.append(metrics.hellinger(ideal, shown).fidelity)
        if "entropy" in want:
            ideal_sv = statevec.StateVector(cfg.walk.n + 1, amp_state.flatten())
            row.extend(_entropies_at(cfg, t, ideal_sv))
        rows.append(row)

    path = _write_rows(out_dir, "results", args.format, header, rows)
    _write_meta(out_dir, "run", cfg.raw, cfg.seed)

    if "metrics" in want and cfg.walk.scheme in (Scheme.PRESENT, Scheme.QFT_SCHEME):
        _write_rows(out_dir, "metrics", args.format,
                    ["scheme", "n", "t", "n1", "n2", "depth", "ancillae"],
                    [_metrics_row(cfg.walk.scheme, cfg.walk.n, t)
                     for t in range(1, cfg.walk.steps + 1)])
    print(path)
    return EXIT_OK


# ---------------------------------------------------------------------------
# metrics
# ---------------------------------------------------------------------------

def _parse_range(text: str, what: str) -> range:
    try:
        lo, hi = (int(p) for p in text.split(":"))
    except ValueError:
        raise ConfigError(f"--{what} expects lo:hi, got {text!r}") from None
    return range(lo, hi + 1)


_ALL_SCHEMES = (Scheme.PRESENT, Scheme.QFT_SCHEME, Scheme.ID_LINEAR_DEPTH,
                Scheme.ID_ANCILLA)
_SCHEME_MIN_N = {Scheme.PRESENT: 1, Scheme.QFT_SCHEME: 1,
                 Scheme.ID_LINEAR_DEPTH: 3, Scheme.ID_ANCILLA: 4}


def _metrics_row(scheme: Scheme, n: int, t: int) -> list:
    closed = metrics.closed_form_metrics(scheme, n, t)
    row = [scheme.value, n, t, closed.n1, closed.n2, closed.depth, closed.ancillae]
    if scheme in (Scheme.PRESENT, Scheme.QFT_SCHEME):
        built = walks.build_walk(
            WalkConfig(n=n, steps=t, scheme=scheme, localized_init=False),
            include_prep=False)
        counted = gate_counts(built)
        if (counted.n1, counted.n2, counted.depth) != (closed.n1, closed.n2,
                                                       closed.depth):
            raise RuntimeError(
                f"counted metrics diverge from closed form at "
                f"({scheme.value}, n={n}, t={t}): "
                f"{(counted.n1, counted.n2, counted.depth)} vs "
                f"{(closed.n1, closed.n2, closed.depth)}"
            )
        row += [counted.n1, counted.n2, counted.depth]
    else:
        row += ["", "", ""]
    return row


def cmd_metrics(args) -> int:
    n_range = _parse_range(args.n, "n")
    t_range = _parse_range(args.t, "t")
    if args.schemes.strip().lower() == "all":
        # "all" quietly trims each increment-based variant to its valid n
        schemes = _ALL_SCHEMES
    else:
        schemes = tuple(parse_scheme(s.strip()) for s in args.schemes.split(","))
        for scheme in schemes:
            low = _SCHEME_MIN_N[scheme]
            bad = [n for n in n_range if n < low]
            if bad:
                raise ConfigError(
                    f"scheme {scheme.value} needs n >= {low}; range includes {bad}")

    header = ["scheme", "n", "t", "n1", "n2", "depth", "ancillae",
              "counted_n1", "counted_n2", "counted_depth"]
    rows = [_metrics_row(scheme, n, t)
            for scheme in schemes for n in n_range if n >= _SCHEME_MIN_N[scheme]
            for t in t_range]
    out_dir = Path(args.out)
    path = _write_rows(out_dir, "metrics", args.format, header, rows)
    _write_meta(out_dir, "metrics", {"n": args.n, "t": args.t,
                                     "schemes": args.schemes}, 0)
    print(path)
    return EXIT_OK


# ---------------------------------------------------------------------------
# compare-schemes
# ---------------------------------------------------------------------------

def cmd_compare(args) -> int:
    cfg = _load(args)
    if cfg.shots is None:
        raise ConfigError("compare-schemes samples histograms: set \"shots\"")
    model = cfg.noise if cfg.noise is not None else noise_mod.NoiseModel()

    n_positions = cfg.walk.n_positions
    ideal = []
    amp_state = oracle.initial_state(n_positions, cfg.walk.theta, cfg.walk.phi)
    for t in range(cfg.walk.steps + 1):
        if t > 0:
            amp_state = oracle.step(amp_state, cfg.walk.coin_matrix)
        ideal.append(oracle.position_probabilities(amp_state))

    header = ["t"] + [f"fidelity_{s.value}" for s in cfg.schemes]
    rows = [[t] for t in range(cfg.walk.steps + 1)]
    all_schemes = list(Scheme)
    for scheme in cfg.schemes:
        scheme_tag = all_schemes.index(scheme)
        for t in range(cfg.walk.steps + 1):
            walk_cfg = _walk_at(cfg.walk, t)
            walk_cfg.scheme = scheme
            circuit = walks.build_walk(walk_cfg)
            fids = []
            for r in range(cfg.repeat):
                seed_t = _derive_seed(cfg.seed, t, r, scheme_tag)
                counts = noise_mod.run_noisy(circuit, model, cfg.shots, seed_t)
                pos = counts.reshape(2, -1).sum(axis=0).astype(float)
                fids.append(metrics.hellinger(ideal[t], pos / pos.sum()).fidelity)
            rows[t].append(float(np.mean(fids)))

    out_dir = Path(args.out)
    path = _write_rows(out_dir, "compare", args.format, header, rows)
    _write_meta(out_dir, "compare-schemes", cfg.raw, cfg.seed)
    print(path)
    return EXIT_OK


# ---------------------------------------------------------------------------
# entropy
# ---------------------------------------------------------------------------

def cmd_entropy(args) -> int:
    cfg = _load(args)
    header = ["t", "s2_coin", "s2_position", "s2_total"]
    rows = []
    amp_state = oracle.initial_state(cfg.walk.n_positions, cfg.walk.theta,
                                     cfg.walk.phi)
    for t in range(cfg.walk.steps + 1):
        if t > 0:
            amp_state = oracle.step(amp_state, cfg.walk.coin_matrix)
        ideal_sv = statevec.StateVector(cfg.walk.n + 1, amp_state.flatten())
        rows.append([t, *_entropies_at(cfg, t, ideal_sv)])

    out_dir = Path(args.out)
    path = _write_rows(out_dir, "entropy", args.format, header, rows)
    _write_meta(out_dir, "entropy", cfg.raw, cfg.seed,
                extra={"entropy_mode": cfg.entropy_mode.mode})
    print(path)
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
