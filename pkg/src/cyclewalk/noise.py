"""Stochastic gate-error model: Pauli-trajectory sampling over batched states.

Each trajectory applies the circuit exactly; after every gate, each touched
qubit independently suffers a uniformly random non-identity Pauli with
probability p1 (one-qubit gates) or p2 (multi-qubit gates).  Measurement
flips each readout bit with probability p_readout.  Trajectories evolve as a
batch, so shots are vectorized rather than looped.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .circuit import KIND_BARRIER, Circuit, Gate
from .statevec import StateVector, _apply_gate_batch, run_circuit


@dataclass(frozen=True)
class NoiseModel:
    """Depolarizing-style error rates: p1/p2 after 1q/2q+ gates, readout flip."""

    p1: float = 0.0
    p2: float = 0.0
    p_readout: float = 0.0

    def __post_init__(self):
        for name in ("p1", "p2", "p_readout"):
            value = getattr(self, name)
            if not 0.0 <= value <= 1.0:
                raise ValueError(f"{name}={value} outside [0, 1]")

    def is_trivial(self) -> bool:
        return self.p1 == 0.0 and self.p2 == 0.0


def run_noisy(circuit: Circuit, model: NoiseModel, shots: int,
              seed: int) -> np.ndarray:
    """Histogram over basis outcomes of ``shots`` noisy trajectories.

    Starts from |0...0>, applies the circuit with stochastic Pauli insertions,
    measures once per trajectory, then applies readout flips.  Deterministic
    for a fixed seed.
    """
    if shots < 1:
        raise ValueError("shots must be >= 1")
    rng = np.random.default_rng(seed)
    n = circuit.n_qubits
    dim = 1 << n

    if model.is_trivial():
        # all trajectories coincide: evolve once, sample, flip readout bits
        final = run_circuit(StateVector.zero(n), circuit)
        probs = np.abs(final.amps) ** 2
        outcomes = rng.choice(dim, size=shots, p=probs / probs.sum())
        outcomes = _readout_flips(outcomes, n, model.p_readout, rng)
        return np.bincount(outcomes, minlength=dim)

    amps = np.zeros((shots, dim), dtype=complex)
    amps[:, 0] = 1.0
    for gate in circuit.gates:
        if gate.kind == KIND_BARRIER:
            continue
        _apply_gate_batch(amps, gate, n)
        rate = model.p1 if gate.is_one_qubit() else model.p2
        if rate == 0.0:
            continue
        for q in gate.qubits:
            _pauli_kicks(amps, q, n, rate, rng)

    probs = np.abs(amps) ** 2
    probs /= probs.sum(axis=1, keepdims=True)
    draws = rng.random(shots)
    outcomes = (probs.cumsum(axis=1) < draws[:, None]).sum(axis=1)
    np.clip(outcomes, 0, dim - 1, out=outcomes)  # guard the cumsum rounding edge
    outcomes = _readout_flips(outcomes, n, model.p_readout, rng)
    return np.bincount(outcomes, minlength=dim)


def _pauli_kicks(amps: np.ndarray, qubit: int, n_qubits: int, rate: float,
                 rng: np.random.Generator):
    """Random non-identity Pauli on ``qubit`` for a ``rate`` fraction of rows.

    Y is applied as Z then X; the dropped phase i is global per trajectory
    and cancels in every sampled probability.
    """
    hit = rng.random(amps.shape[0]) < rate
    if not hit.any():
        return
    which = rng.integers(0, 3, size=amps.shape[0])  # 0=X 1=Y 2=Z
    outer = 1 << (n_qubits - 1 - qubit)
    inner = 1 << qubit
    view = amps.reshape(-1, outer, 2, inner)

    z_rows = hit & (which != 0)
    if z_rows.any():
        view[z_rows, :, 1, :] *= -1.0
    x_rows = hit & (which != 2)
    if x_rows.any():
        tmp = view[x_rows, :, 0, :].copy()
        view[x_rows, :, 0, :] = view[x_rows, :, 1, :]
        view[x_rows, :, 1, :] = tmp


def _readout_flips(outcomes: np.ndarray, n_qubits: int, p_readout: float,
                   rng: np.random.Generator) -> np.ndarray:
    if p_readout == 0.0:
        return outcomes
    out = outcomes.copy()
    for q in range(n_qubits):
        flips = rng.random(out.size) < p_readout
        out[flips] ^= 1 << q
    return out


def average_density_matrix(circuit: Circuit, model: NoiseModel,
                           n_trajectories: int, seed: int) -> np.ndarray:
    """Trajectory-averaged density matrix (for entropy under noise).

    Memory is n_trajectories x 2**n amplitudes; intended for the small
    registers this package targets.
    """
    if n_trajectories < 1:
        raise ValueError("need at least one trajectory")
    rng = np.random.default_rng(seed)
    n = circuit.n_qubits
    dim = 1 << n
    amps = np.zeros((n_trajectories, dim), dtype=complex)
    amps[:, 0] = 1.0
    for gate in circuit.gates:
        if gate.kind == KIND_BARRIER:
            continue
        _apply_gate_batch(amps, gate, n)
        rate = model.p1 if gate.is_one_qubit() else model.p2
        if rate == 0.0:
            continue
        for q in gate.qubits:
            _pauli_kicks(amps, q, n, rate, rng)
    return np.einsum("bi,bj->ij", amps, amps.conj()) / n_trajectories


def density_matrix_purities(rho: np.ndarray, n_position: int):
    """(coin, position, total) purities of a walk-register density matrix."""
    n_pos = 1 << n_position
    d_hi = rho.shape[0] // n_pos
    blocks = rho.reshape(d_hi, n_pos, d_hi, n_pos)
    rho_hi = np.einsum("ajbj->ab", blocks)
    rho_lo = np.einsum("sjsk->jk", blocks)
    return (float(np.sum(np.abs(rho_hi) ** 2)),
            float(np.sum(np.abs(rho_lo) ** 2)),
            float(np.sum(np.abs(rho) ** 2)))


def noisy_part_runner(circuit: Circuit, model: NoiseModel, n_position: int,
                      part: str, shots: int):
    """(runner, part qubit count) for randomized purity under the noise model.

    Each call evolves fresh noisy trajectories with the random local layer
    appended, then histograms the part's measured bits.
    """
    n = circuit.n_qubits
    if part == "coin":
        part_qubits = list(range(n_position, n))
    elif part == "position":
        part_qubits = list(range(n_position))
    elif part == "total":
        part_qubits = list(range(n))
    else:
        raise ValueError(f"unknown part {part!r}")

    def run(unitaries, rng):
        layer = tuple(Gate.u1q(u, q) for u, q in zip(unitaries, part_qubits))
        rotated = Circuit(n, circuit.gates + layer, label="rotated")
        counts = run_noisy(rotated, model, shots, int(rng.integers(2**63)))
        full = np.arange(counts.size)
        part_index = np.zeros(counts.size, dtype=int)
        for rank, q in enumerate(sorted(part_qubits)):
            part_index |= ((full >> q) & 1) << rank
        marg = np.zeros(1 << len(part_qubits), dtype=int)
        np.add.at(marg, part_index, counts)
        return marg

    return run, len(part_qubits)
