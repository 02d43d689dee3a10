"""Experiment configuration: JSON schema, angle literals, validation.

Angles accept plain numbers or exact pi-fraction literals such as "pi/6",
"2*pi/3", "-pi/2"; the literal is evaluated symbolically over math.pi rather
than parsed from decimal text.
"""

from __future__ import annotations

import json
import math
import re
from dataclasses import dataclass, field

import numpy as np

from .noise import NoiseModel
from .walks import HADAMARD, Scheme, WalkConfig


class ConfigError(ValueError):
    """Configuration file is unreadable or violates the schema."""


_PI_LITERAL = re.compile(
    r"^\s*(?P<sign>[+-])?\s*(?:(?P<num>\d+(?:\.\d+)?)\s*\*\s*)?pi"
    r"(?:\s*/\s*(?P<den>\d+(?:\.\d+)?))?\s*$"
)

VALID_OUTPUTS = ("distribution", "fidelity", "entropy", "metrics")


def parse_angle(value, where: str = "angle") -> float:
    """Number or pi-fraction literal -> radians."""
    if isinstance(value, (int, float)) and not isinstance(value, bool):
        return float(value)
    if isinstance(value, str):
        m = _PI_LITERAL.match(value)
        if m:
            out = math.pi
            if m.group("num"):
                out *= float(m.group("num"))
            if m.group("den"):
                out /= float(m.group("den"))
            return -out if m.group("sign") == "-" else out
        try:
            return float(value)
        except ValueError:
            pass
    raise ConfigError(f"{where}: expected a number or pi-fraction literal, got {value!r}")


_SCHEME_NAMES = {s.value: s for s in Scheme}
# convenience aliases
_SCHEME_NAMES["qft-scheme"] = Scheme.QFT_SCHEME
_SCHEME_NAMES["id"] = Scheme.ID_LINEAR_DEPTH


def parse_scheme(name: str) -> Scheme:
    try:
        return _SCHEME_NAMES[str(name).lower()]
    except KeyError:
        raise ConfigError(
            f"walk.scheme: unknown scheme {name!r}; choose from "
            f"{sorted(set(_SCHEME_NAMES))}"
        ) from None


def _parse_coin(value) -> np.ndarray:
    if value is None or value == "hadamard":
        return HADAMARD.copy()
    try:
        rows = []
        for row in value:
            rows.append([complex(entry[0], entry[1]) if isinstance(entry, list)
                         else complex(entry) for entry in row])
        coin = np.array(rows, dtype=complex)
    except Exception:
        raise ConfigError(
            "walk.coin: expected \"hadamard\" or a 2x2 matrix of numbers / "
            "[re, im] pairs"
        ) from None
    if coin.shape != (2, 2):
        raise ConfigError(f"walk.coin: matrix must be 2x2, got {coin.shape}")
    return coin


@dataclass
class EntropyMode:
    mode: str = "exact"                 # "exact" | "randomized"
    n_unitaries: int = 300
    shots: int = 100_000
    trajectories: int = 1000            # density-matrix averaging under noise


@dataclass
class ExperimentConfig:
    """One experiment: walk, optional noise, sampling, outputs."""

    walk: WalkConfig
    noise: NoiseModel | None = None
    shots: int | None = None
    seed: int = 0
    outputs: tuple[str, ...] = ("distribution", "fidelity", "entropy")
    entropy_mode: EntropyMode = field(default_factory=EntropyMode)
    schemes: tuple[Scheme, ...] = (Scheme.PRESENT, Scheme.QFT_SCHEME)
    repeat: int = 1
    raw: dict = field(default_factory=dict)


def load_config(path: str) -> ExperimentConfig:
    try:
        with open(path, encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise ConfigError(f"cannot read config file: {exc}") from None
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ConfigError(
            f"{path}:{exc.lineno}:{exc.colno}: invalid JSON: {exc.msg}"
        ) from None
    return parse_config(doc)


def parse_config(doc: dict) -> ExperimentConfig:
    if not isinstance(doc, dict):
        raise ConfigError("top level must be a JSON object")
    unknown = set(doc) - {"walk", "noise", "shots", "seed", "outputs",
                          "entropy_mode", "schemes", "repeat"}
    if unknown:
        raise ConfigError(f"unknown top-level keys: {sorted(unknown)}")
    if "walk" not in doc:
        raise ConfigError("missing required key \"walk\"")

    walk_doc = doc["walk"]
    if not isinstance(walk_doc, dict):
        raise ConfigError("\"walk\" must be an object")
    unknown = set(walk_doc) - {"n", "steps", "theta", "phi", "scheme", "coin",
                               "localized_init"}
    if unknown:
        raise ConfigError(f"unknown walk keys: {sorted(unknown)}")
    for key in ("n", "steps"):
        if key not in walk_doc:
            raise ConfigError(f"walk.{key} is required")
        if not isinstance(walk_doc[key], int) or isinstance(walk_doc[key], bool):
            raise ConfigError(f"walk.{key} must be an integer")
    try:
        walk = WalkConfig(
            n=walk_doc["n"],
            steps=walk_doc["steps"],
            theta=parse_angle(walk_doc.get("theta", 0.0), "walk.theta"),
            phi=parse_angle(walk_doc.get("phi", 0.0), "walk.phi"),
            scheme=parse_scheme(walk_doc.get("scheme", "present")),
            coin_matrix=_parse_coin(walk_doc.get("coin")),
            localized_init=bool(walk_doc.get("localized_init", True)),
        )
    except ValueError as exc:
        raise ConfigError(f"walk: {exc}") from None

    noise = None
    if doc.get("noise") is not None:
        noise_doc = doc["noise"]
        unknown = set(noise_doc) - {"p1", "p2", "p_readout"}
        if unknown:
            raise ConfigError(f"unknown noise keys: {sorted(unknown)}")
        try:
            noise = NoiseModel(p1=float(noise_doc.get("p1", 0.0)),
                               p2=float(noise_doc.get("p2", 0.0)),
                               p_readout=float(noise_doc.get("p_readout", 0.0)))
        except (TypeError, ValueError) as exc:
            raise ConfigError(f"noise: {exc}") from None

    shots = doc.get("shots")
    if shots is not None:
        if not isinstance(shots, int) or isinstance(shots, bool) or shots < 1:
            raise ConfigError("shots must be a positive integer when given")
    if noise is not None and shots is None:
        raise ConfigError("noisy runs sample histograms: \"shots\" is required")

    outputs = tuple(doc.get("outputs", ["distribution", "fidelity", "entropy"]))
    bad = [o for o in outputs if o not in VALID_OUTPUTS]
    if bad:
        raise ConfigError(f"unknown outputs {bad}; valid: {list(VALID_OUTPUTS)}")

    mode_doc = doc.get("entropy_mode", {"mode": "exact"})
    if isinstance(mode_doc, str):
        mode_doc = {"mode": mode_doc}
    if mode_doc.get("mode", "exact") not in ("exact", "randomized"):
        raise ConfigError("entropy_mode.mode must be \"exact\" or \"randomized\"")
    entropy_mode = EntropyMode(
        mode=mode_doc.get("mode", "exact"),
        n_unitaries=int(mode_doc.get("n_unitaries", 300)),
        shots=int(mode_doc.get("shots", 100_000)),
        trajectories=int(mode_doc.get("trajectories", 1000)),
    )

    schemes = tuple(parse_scheme(s)
                    for s in doc.get("schemes", ["present", "qft"]))
    repeat = doc.get("repeat", 1)
    if not isinstance(repeat, int) or isinstance(repeat, bool) or repeat < 1:
        raise ConfigError("repeat must be a positive integer")

    seed = doc.get("seed", 0)
    if not isinstance(seed, int) or isinstance(seed, bool) or seed < 0:
        raise ConfigError("seed must be a nonnegative integer")

    return ExperimentConfig(walk=walk, noise=noise, shots=shots, seed=seed,
                            outputs=outputs, entropy_mode=entropy_mode,
                            schemes=schemes, repeat=repeat, raw=doc)
