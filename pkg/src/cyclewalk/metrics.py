"""Figures of merit: Hellinger distance/fidelity, Renyi-2 entropy, closed-form
circuit metrics for all four schemes, and the randomized-measurement purity
estimator."""

from __future__ import annotations

from typing import Callable, NamedTuple

import numpy as np

from .circuit import MetricsReport
from .statevec import StateVector, _apply_1q_batch
from .walks import Scheme, id_cost_model


class Hellinger(NamedTuple):
    distance: float
    fidelity: float


class EntropyReport(NamedTuple):
    """Renyi-2 entropies (bits) of coin, position, and the whole register."""

    s2_coin: float
    s2_position: float
    s2_total: float

    @classmethod
    def from_purities(cls, coin: float, position: float, total: float,
                      clamp: bool = False) -> "EntropyReport":
        """``clamp`` snaps statistical purity estimates into (0, 1]."""
        values = (coin, position, total)
        if clamp:
            values = tuple(min(max(v, 1e-12), 1.0) for v in values)
        return cls(*(renyi2(v) for v in values))


def hellinger(p, q) -> Hellinger:
    """Hellinger distance h = sqrt(sum (sqrt p - sqrt q)^2 / 2) and the
    derived fidelity (1 - h^2)^2.  Symmetric and bounded in [0, 1]."""
    p = np.asarray(p, dtype=float)
    q = np.asarray(q, dtype=float)
    if p.shape != q.shape:
        raise ValueError(f"length mismatch: {p.shape} vs {q.shape}")
    if np.any(p < 0) or np.any(q < 0):
        raise ValueError("probabilities must be nonnegative")
    h_sq = 0.5 * np.sum((np.sqrt(p) - np.sqrt(q)) ** 2)
    h_sq = min(h_sq, 1.0)
    return Hellinger(distance=float(np.sqrt(h_sq)), fidelity=float((1.0 - h_sq) ** 2))


def renyi2(purity: float) -> float:
    """Second-order Renyi entropy -log2(purity), in bits."""
    if purity <= 0.0 or purity > 1.0 + 1e-12:
        raise ValueError(f"purity must lie in (0, 1], got {purity}")
    return float(-np.log2(min(purity, 1.0)) + 0.0)  # + 0.0 kills IEEE -0.0


def closed_form_metrics(scheme: Scheme, n: int, t: int) -> MetricsReport:
    """Exact circuit metrics per scheme.

    The first two rows are reproduced gate-for-gate by the builders; the
    increment-based rows are cost models for the two generalized-CNOT
    lowerings (never emitted as gate lists).
    """
    if n < 1 or t < 0:
        raise ValueError("need n >= 1 and t >= 0")
    if scheme is Scheme.PRESENT:
        return MetricsReport(n1=t * (n + 1) + 2 * n,
                             n2=t * (n - 1) + n * (n - 1),
                             depth=t * n + 2 * (2 * n - 1))
    if scheme is Scheme.QFT_SCHEME:
        return MetricsReport(n1=t * (3 * n + 1), n2=t * n * (n + 1), depth=6 * t * n)
    return id_cost_model(n, t, scheme)


# ---------------------------------------------------------------------------
# Randomized-measurement purity estimation
# ---------------------------------------------------------------------------

def haar_unitary_2x2(rng: np.random.Generator) -> np.ndarray:
    """Haar-distributed U(2) element via the three-angle parameterization."""
    alpha, psi, chi = rng.uniform(0.0, 2.0 * np.pi, size=3)
    theta = np.arcsin(np.sqrt(rng.uniform(0.0, 1.0)))
    c, s = np.cos(theta), np.sin(theta)
    u = np.array([[np.exp(1j * psi) * c, np.exp(1j * chi) * s],
                  [-np.exp(-1j * chi) * s, np.exp(-1j * psi) * c]])
    return np.exp(1j * alpha) * u


def randomized_purity(run: Callable[[list[np.ndarray]], np.ndarray],
                      n_part_qubits: int, n_unitaries: int, shots: int,
                      seed: int) -> float:
    """Estimate Tr[rho_A^2] from randomized local measurements.

    ``run(unitaries, rng)`` must return outcome counts over the
    2**n_part_qubits basis states of part A after rotating each of its
    qubits by the supplied single-qubit unitary; ``rng`` is that unitary's
    own stream (derived from ``seed``), so runs parallelize per unitary and
    stay deterministic.  The estimator averages
    2**n_A * sum_{s,s'} (-2)^{-H(s,s')} P(s) P(s') over unitaries, with the
    diagonal term replaced by the unbiased same-sample correction.
    """
    if n_unitaries < 2:
        raise ValueError("need at least two random unitaries")
    if shots < 1:
        raise ValueError("need at least one shot")
    dim = 1 << n_part_qubits
    idx = np.arange(dim)
    hamming = np.zeros((dim, dim), dtype=int)
    for b in range(n_part_qubits):
        hamming += ((idx[:, None] ^ idx[None, :]) >> b) & 1
    weights = (-2.0) ** (-hamming.astype(float))

    estimates = np.empty(n_unitaries)
    for m in range(n_unitaries):
        rng = np.random.default_rng([seed, m])
        unitaries = [haar_unitary_2x2(rng) for _ in range(n_part_qubits)]
        counts = np.asarray(run(unitaries, rng), dtype=float)
        if counts.size != dim:
            raise ValueError(f"runner returned {counts.size} bins, expected {dim}")
        total = counts.sum()
        p_hat = counts / total
        cross = np.outer(p_hat, p_hat)
        if total > 1:
            np.fill_diagonal(cross, p_hat * (total * p_hat - 1.0) / (total - 1.0))
        estimates[m] = dim * np.sum(weights * cross)
    return float(estimates.mean())


def make_state_runner(state: StateVector, n_position: int, part: str,
                      shots: int) -> tuple[Callable, int]:
    """(runner, part qubit count) sampling a fixed pure state.

    ``part`` selects the coin qubit, the position register, or the whole
    register.  The runner rotates the part's qubits, marginalizes the exact
    probabilities onto the part, and draws multinomial counts from the
    per-unitary RNG stream.
    """
    if part == "coin":
        part_qubits = list(range(n_position, state.n_qubits))
    elif part == "position":
        part_qubits = list(range(n_position))
    elif part == "total":
        part_qubits = list(range(state.n_qubits))
    else:
        raise ValueError(f"unknown part {part!r}")
    n_part = len(part_qubits)

    def run(unitaries, rng):
        amps = state.amps.reshape(1, -1).copy()
        for u, q in zip(unitaries, part_qubits):
            _apply_1q_batch(amps, u, q, state.n_qubits)
        probs = np.abs(amps.ravel()) ** 2
        marg = _marginalize(probs, state.n_qubits, part_qubits)
        return rng.multinomial(shots, marg / marg.sum())

    return run, n_part


def _marginalize(probs: np.ndarray, n_qubits: int, keep: list[int]) -> np.ndarray:
    """Marginal distribution over ``keep`` qubits (ascending bit significance)."""
    tensor = probs.reshape([2] * n_qubits)
    # axis a holds qubit n_qubits-1-a; summing out the dropped qubits leaves
    # the kept axes ordered most-significant-first, the part's own bit order
    drop = tuple(n_qubits - 1 - q for q in range(n_qubits) if q not in keep)
    marg = tensor.sum(axis=drop) if drop else tensor
    return marg.reshape(-1)


def state_purity_estimate(state: StateVector, n_position: int, part: str,
                          n_unitaries: int, shots: int, seed: int) -> float:
    """Randomized-measurement purity of one part of a pure state."""
    run, n_part = make_state_runner(state, n_position, part, shots)
    return randomized_purity(run, n_part, n_unitaries, shots, seed)
