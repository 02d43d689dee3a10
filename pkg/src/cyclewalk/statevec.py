"""Dense state-vector simulation for small registers (up to ~14 qubits).

Basis convention for a walk with n position qubits: basis index
i = s * 2**n + j encodes coin s (most significant qubit, index n) and
position j (qubits 0..n-1, little-endian).  Gate application works in place
on strided views; no full unitaries are materialized here.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .circuit import (
    KIND_BARRIER,
    KIND_CPHASE,
    KIND_CX,
    KIND_MCX,
    Circuit,
    Gate,
    GateError,
)

NORM_TOL = 1e-10


@dataclass
class StateVector:
    """Complex amplitudes over 2**n_qubits basis states."""

    n_qubits: int
    amps: np.ndarray

    @classmethod
    def zero(cls, n_qubits: int) -> StateVector:
        return cls.basis(n_qubits, 0)

    @classmethod
    def basis(cls, n_qubits: int, index: int) -> StateVector:
        if n_qubits < 1:
            raise ValueError("need at least one qubit")
        amps = np.zeros(1 << n_qubits, dtype=complex)
        amps[index] = 1.0
        return cls(n_qubits, amps)

    @classmethod
    def from_amps(cls, amps) -> StateVector:
        amps = np.asarray(amps, dtype=complex)
        n = int(np.log2(amps.size))
        if 1 << n != amps.size:
            raise ValueError("amplitude length must be a power of two")
        return cls(n, amps.copy())

    def copy(self) -> StateVector:
        return StateVector(self.n_qubits, self.amps.copy())

    def norm(self) -> float:
        return float(np.linalg.norm(self.amps))


# ---------------------------------------------------------------------------
# In-place gate kernels over a batch of states, shape (batch, 2**n).
# The batch axis serves the trajectory sampler; plain states pass batch=1.
# ---------------------------------------------------------------------------

def _apply_1q_batch(amps: np.ndarray, u: np.ndarray, qubit: int, n_qubits: int):
    outer = 1 << (n_qubits - 1 - qubit)
    inner = 1 << qubit
    view = amps.reshape(-1, outer, 2, inner)
    a0 = view[:, :, 0, :].copy()
    a1 = view[:, :, 1, :]
    view[:, :, 0, :] = u[0, 0] * a0 + u[0, 1] * a1
    view[:, :, 1, :] = u[1, 0] * a0 + u[1, 1] * a1


def _bit_mask(n_qubits: int, ones: list[int], zeros: list[int] = ()) -> np.ndarray:
    idx = np.arange(1 << n_qubits)
    mask = np.ones(idx.size, dtype=bool)
    for q in ones:
        mask &= (idx >> q) & 1 == 1
    for q in zeros:
        mask &= (idx >> q) & 1 == 0
    return mask


def _apply_gate_batch(amps: np.ndarray, gate: Gate, n_qubits: int):
    """Apply one gate in place to (batch, dim) amplitudes."""
    if gate.kind == KIND_BARRIER:
        return
    if gate.is_one_qubit():
        _apply_1q_batch(amps, gate.unitary_1q(), gate.qubits[0], n_qubits)
        return
    if gate.kind == KIND_CPHASE:
        a, b = gate.qubits
        factor = np.ones(1 << n_qubits, dtype=complex)
        factor[_bit_mask(n_qubits, [a, b])] = np.exp(1j * gate.angle)
        amps *= factor
        return
    if gate.kind == KIND_CX:
        control, target = gate.qubits
        perm = np.arange(1 << n_qubits)
        hit = (perm >> control) & 1 == 1
        perm[hit] ^= 1 << target
        amps[:] = amps[:, perm]
        return
    if gate.kind == KIND_MCX:
        target = gate.qubits[-1]
        perm = np.arange(1 << n_qubits)
        hit = np.ones(perm.size, dtype=bool)
        for q, pol in zip(gate.qubits[:-1], gate.polarities):
            hit &= (perm >> q) & 1 == pol
        perm[hit] ^= 1 << target
        amps[:] = amps[:, perm]
        return
    raise GateError(f"cannot simulate gate kind {gate.kind}")


def apply_gate(state: StateVector, gate: Gate) -> StateVector:
    """Return the state with one gate applied.

    Raises for qubit indices outside the register; Unitary1q gates were
    already checked for unitarity at construction.
    """
    if any(q >= state.n_qubits for q in gate.qubits):
        raise GateError(f"gate on {gate.qubits} exceeds {state.n_qubits} qubits")
    out = state.copy()
    _apply_gate_batch(out.amps.reshape(1, -1), gate, state.n_qubits)
    return out


def run_circuit(state: StateVector, circuit: Circuit) -> StateVector:
    """Apply all circuit gates in list order."""
    if circuit.n_qubits != state.n_qubits:
        raise ValueError(
            f"circuit width {circuit.n_qubits} != state width {state.n_qubits}"
        )
    out = state.copy()
    batch = out.amps.reshape(1, -1)
    for gate in circuit.gates:
        _apply_gate_batch(batch, gate, state.n_qubits)
    return out


def circuit_unitary(circuit: Circuit) -> np.ndarray:
    """Dense unitary of a circuit, built column-by-column by simulation.

    Cross-check use only; fine for the small registers tested here.
    """
    dim = 1 << circuit.n_qubits
    cols = np.empty((dim, dim), dtype=complex)
    for j in range(dim):
        cols[:, j] = run_circuit(StateVector.basis(circuit.n_qubits, j), circuit).amps
    return cols


# ---------------------------------------------------------------------------
# Measurement-side quantities
# ---------------------------------------------------------------------------

def position_distribution(state: StateVector) -> np.ndarray:
    """Walker position marginal p_j = sum_s |amp[s, j]|^2 (coin = top qubit)."""
    n_pos = state.n_qubits - 1
    probs = np.abs(state.amps.reshape(2, 1 << n_pos)) ** 2
    return probs.sum(axis=0)


@dataclass
class PurityReport:
    purity_coin: float
    purity_position: float
    purity_total: float


def purities(state: StateVector, n_position: int) -> PurityReport:
    """Exact purities of the two reduced states of the (rest | low qubits) cut.

    ``n_position`` low qubits form one part; the remaining high qubits (the
    coin, for walk states) form the other.  For a pure input the two reduced
    purities agree and the total purity is 1.
    """
    if not 0 < n_position < state.n_qubits:
        raise ValueError("n_position must split the register in two")
    m = state.amps.reshape(-1, 1 << n_position)
    rho_hi = m @ m.conj().T
    purity_hi = float(np.sum(np.abs(rho_hi) ** 2))
    rho_lo = m.T @ m.conj()
    purity_lo = float(np.sum(np.abs(rho_lo) ** 2))
    total = float(np.abs(np.vdot(state.amps, state.amps)) ** 2)
    return PurityReport(purity_coin=purity_hi, purity_position=purity_lo,
                        purity_total=total)


def sample_counts(state: StateVector, shots: int, seed: int) -> np.ndarray:
    """Multinomial counts over basis indices; deterministic per seed."""
    if shots < 1:
        raise ValueError("shots must be >= 1")
    probs = np.abs(state.amps) ** 2
    probs = probs / probs.sum()
    rng = np.random.default_rng(seed)
    return rng.multinomial(shots, probs)


def overlap(a: StateVector, b: StateVector) -> float:
    """|<a|b>|: global-phase-insensitive state agreement in [0, 1]."""
    if a.n_qubits != b.n_qubits:
        raise ValueError("states have different qubit counts")
    return float(abs(np.vdot(a.amps, b.amps)))
