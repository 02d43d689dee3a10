"""Circuit-free reference walk: amplitude arrays, modular shifts, dense matrices.

This module is the ground truth the circuit builders are checked against.
It deliberately shares nothing with the gate IR: one step is a coin mix of
the two amplitude arrays followed by opposite cyclic rolls.  Dense matrix
constructions (shift operators, Fourier matrix, circulant eigendecomposition)
live here because this is the designated cross-check path.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import TYPE_CHECKING

import numpy as np

if TYPE_CHECKING:  # config type only; no circuit machinery crosses this import
    from .walks import WalkConfig

HADAMARD = np.array([[1.0, 1.0], [1.0, -1.0]], dtype=complex) / np.sqrt(2.0)


@dataclass
class WalkAmplitudes:
    """psi0[j], psi1[j]: amplitudes of coin 0 / coin 1 at position j."""

    psi0: np.ndarray
    psi1: np.ndarray

    @property
    def n_positions(self) -> int:
        return self.psi0.size

    def norm_sq(self) -> float:
        return float(np.sum(np.abs(self.psi0) ** 2) + np.sum(np.abs(self.psi1) ** 2))

    def flatten(self) -> np.ndarray:
        """Column vector in the coin-major basis (index 0..N-1 coin 0, then coin 1)."""
        return np.concatenate([self.psi0, self.psi1])


def initial_state(n_positions: int, theta: float, phi: float) -> WalkAmplitudes:
    """Walker localized at vertex 0, coin cos(theta/2)|0> + e^{i phi} sin(theta/2)|1>."""
    psi0 = np.zeros(n_positions, dtype=complex)
    psi1 = np.zeros(n_positions, dtype=complex)
    psi0[0] = np.cos(theta / 2.0)
    psi1[0] = np.exp(1j * phi) * np.sin(theta / 2.0)
    return WalkAmplitudes(psi0, psi1)


def step(state: WalkAmplitudes, coin: np.ndarray) -> WalkAmplitudes:
    """One walk step: coin on each position pair, then conditional shift.

    Coin 0 amplitudes move one vertex down (j -> j-1 mod N), coin 1
    amplitudes one vertex up (j -> j+1 mod N).
    """
    coin = np.asarray(coin, dtype=complex)
    if np.max(np.abs(coin.conj().T @ coin - np.eye(2))) > 1e-10:
        raise ValueError("coin operator is not unitary")
    mixed0 = coin[0, 0] * state.psi0 + coin[0, 1] * state.psi1
    mixed1 = coin[1, 0] * state.psi0 + coin[1, 1] * state.psi1
    return WalkAmplitudes(np.roll(mixed0, -1), np.roll(mixed1, 1))


def evolve(config: "WalkConfig") -> WalkAmplitudes:
    """Run ``config.steps`` steps from the configured initial state."""
    return evolve_params(1 << config.n, config.steps, config.theta, config.phi,
                         config.coin_matrix)


def evolve_params(n_positions: int, steps: int, theta: float, phi: float,
                  coin: np.ndarray | None = None) -> WalkAmplitudes:
    coin = HADAMARD if coin is None else coin
    state = initial_state(n_positions, theta, phi)
    for _ in range(steps):
        state = step(state, coin)
    return state


def position_probabilities(state: WalkAmplitudes) -> np.ndarray:
    return np.abs(state.psi0) ** 2 + np.abs(state.psi1) ** 2


def coin_purity(state: WalkAmplitudes) -> float:
    """Tr[rho_coin^2] from the exact 2x2 reduced coin state."""
    m = np.vstack([state.psi0, state.psi1])
    rho = m @ m.conj().T
    return float(np.sum(np.abs(rho) ** 2))


def amplitude_overlap(a: WalkAmplitudes, b: WalkAmplitudes) -> float:
    return float(abs(np.vdot(a.flatten(), b.flatten())))


# ---------------------------------------------------------------------------
# Dense matrices for the cross-check path
# ---------------------------------------------------------------------------

def shift_matrices(n_positions: int) -> tuple[np.ndarray, np.ndarray]:
    """(P0, P1): decrement / increment permutation matrices, P1 = P0^T."""
    if n_positions < 2:
        raise ValueError("need at least two positions")
    p0 = np.zeros((n_positions, n_positions))
    for j in range(n_positions):
        p0[(j - 1) % n_positions, j] = 1.0
    return p0, p0.T.copy()


def dft_matrix(n_positions: int) -> np.ndarray:
    """F with F[j, k] = omega^{jk} / sqrt(N), omega = exp(2 pi i / N)."""
    j, k = np.meshgrid(np.arange(n_positions), np.arange(n_positions),
                       indexing="ij")
    return np.exp(2j * np.pi * j * k / n_positions) / np.sqrt(n_positions)


def omega_matrix(n_positions: int) -> np.ndarray:
    """diag(1, omega, ..., omega^{N-1})."""
    return np.diag(np.exp(2j * np.pi * np.arange(n_positions) / n_positions))


def conditional_shift_matrix(n_positions: int) -> np.ndarray:
    """Block matrix diag(P0, P1) on the coin (x) position space."""
    p0, p1 = shift_matrices(n_positions)
    top = np.hstack([p0, np.zeros_like(p0)])
    bottom = np.hstack([np.zeros_like(p1), p1])
    return np.vstack([top, bottom]).astype(complex)


def one_step_matrix(n_positions: int, coin: np.ndarray | None = None) -> np.ndarray:
    """Dense single-step operator: conditional shift after the coin."""
    coin = HADAMARD if coin is None else np.asarray(coin, dtype=complex)
    eye_p = np.eye(n_positions)
    return conditional_shift_matrix(n_positions) @ np.kron(coin, eye_p)


def circulant_matrix(first_row: np.ndarray) -> np.ndarray:
    """C[k, j] = c[(j - k) mod N]: each row a cyclic shift of the one above."""
    c = np.asarray(first_row, dtype=complex)
    n = c.size
    return c[(np.arange(n)[None, :] - np.arange(n)[:, None]) % n]


def circulant_eig(first_row: np.ndarray) -> tuple[np.ndarray, float]:
    """Eigenvalues lambda_m = sum_k c_k omega^{-mk} and the dense residual.

    The residual is max|C - F^dag diag(lambda) F| computed with explicit
    matrices; it certifies the spectral identity on the given row.
    """
    c = np.asarray(first_row, dtype=complex)
    n = c.size
    eigvals = np.fft.fft(c)
    f = dft_matrix(n)
    residual = float(np.max(np.abs(circulant_matrix(c)
                                   - f.conj().T @ np.diag(eigvals) @ f)))
    return eigvals, residual
