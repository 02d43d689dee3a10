"""Circuit builders for the cycle walk under the four competing schemes.

Conventions shared by every builder:

* Register layout: qubits 0..n-1 hold the walker position (little-endian),
  qubit n holds the coin.
* Shift convention: coin 0 moves the walker down (j -> j-1 mod N), coin 1
  moves it up.  The increment-based schemes are emitted with flipped coin
  polarity so that all four schemes realize the same convention and can be
  compared by strict equality.
* Fourier blocks are the swapless variants; the terminal qubit reversal is
  absorbed into reversed phase-gate ordering, so no SWAP gates appear.
* Barriers separate logical blocks (initial Fourier layer, each step, final
  inverse Fourier layer).  They cost nothing in gate counts and pin the
  measured depth to the block-additive accounting of the cost models.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field

import numpy as np

from .circuit import Circuit, Gate, MetricsReport

HADAMARD = np.array([[1.0, 1.0], [1.0, -1.0]], dtype=complex) / np.sqrt(2.0)


class Scheme(enum.Enum):
    PRESENT = "present"
    QFT_SCHEME = "qft"
    ID_LINEAR_DEPTH = "id-linear-depth"
    ID_ANCILLA = "id-ancilla"


ID_SCHEMES = (Scheme.ID_LINEAR_DEPTH, Scheme.ID_ANCILLA)


@dataclass
class WalkConfig:
    """Walk parameters: cycle size 2**n, step count, coin prep angles, scheme.

    ``theta``/``phi`` fix the initial coin state cos(theta/2)|0> +
    e^{i phi} sin(theta/2)|1>; the walker always starts at vertex 0.
    ``coin_matrix`` is the per-step coin operator (Hadamard by default).
    ``localized_init`` swaps the opening Fourier block for a Hadamard layer,
    valid exactly because the walker starts at |0...0>.
    """

    n: int
    steps: int
    theta: float = 0.0
    phi: float = 0.0
    scheme: Scheme = Scheme.PRESENT
    coin_matrix: np.ndarray = field(default_factory=lambda: HADAMARD.copy())
    localized_init: bool = True

    def __post_init__(self):
        if self.n < 1:
            raise ValueError("need at least one position qubit")
        if self.steps < 0:
            raise ValueError("steps must be nonnegative")
        self.coin_matrix = np.asarray(self.coin_matrix, dtype=complex)

    @property
    def n_positions(self) -> int:
        return 1 << self.n


# ---------------------------------------------------------------------------
# Fourier and diagonal-phase sub-circuits
# ---------------------------------------------------------------------------

def _qft_gates(n: int) -> list[Gate]:
    """Swapless transform: processes the top qubit down, phases fan in from
    below.  Output bits come out reversed, which the walk absorbs via the
    reversed phase layers."""
    gates: list[Gate] = []
    for i in range(n - 1, -1, -1):
        gates.append(Gate.h(i))
        for m in range(i - 1, -1, -1):
            gates.append(Gate.cphase(2.0 * np.pi / (1 << (i - m + 1)), m, i))
    return gates


def qft(n: int, with_swaps: bool = False) -> Circuit:
    """Fourier transform circuit on n qubits.

    ``with_swaps=False`` gives the swapless operator (bit-reversed outputs);
    ``with_swaps=True`` appends the reversal as CX triples so the unitary is
    exactly F[j, k] = omega^{jk}/sqrt(N).
    """
    if n < 1:
        raise ValueError("need at least one qubit")
    gates = _qft_gates(n)
    if with_swaps:
        for k in range(n // 2):
            a, b = k, n - 1 - k
            gates += [Gate.cx(a, b), Gate.cx(b, a), Gate.cx(a, b)]
    label = f"qft{n}" if with_swaps else f"qft{n}-swapless"
    return Circuit(n, tuple(gates), label=label)


def _omega_angles(n: int, dagger: bool, tilde: bool):
    """(qubit, angle) pairs of the diagonal phase layer, descending factor index.

    Factor k carries phase 2 pi / 2**k and sits on qubit n-k in the plain
    ordering or qubit k-1 in the reversed (tilde) ordering.
    """
    sign = -1.0 if dagger else 1.0
    for k in range(n, 0, -1):
        qubit = (k - 1) if tilde else (n - k)
        yield qubit, sign * 2.0 * np.pi / (1 << k)


def omega_layer(n: int, dagger: bool = False, tilde: bool = False) -> Circuit:
    """n parallel phase gates realizing diag(1, omega, ..., omega^{N-1})
    (or its conjugate; tilde = reversed qubit ordering)."""
    if n < 1:
        raise ValueError("need at least one qubit")
    gates = tuple(Gate.phase(angle, q) for q, angle in _omega_angles(n, dagger, tilde))
    return Circuit(n, gates, label="omega")


# ---------------------------------------------------------------------------
# Per-step builders
# ---------------------------------------------------------------------------

def build_present_step(n: int, coin: np.ndarray | None = None) -> Circuit:
    """One walk step in the Fourier frame: a parallel one-qubit layer (coin
    plus the conjugate phase layer on the position register) followed by
    n-1 coin-controlled phase gates.

    The controlled block realizes the squared phase layer; its weakest
    factor is the identity and is omitted, hence n-1 two-qubit gates.
    """
    coin = HADAMARD if coin is None else np.asarray(coin, dtype=complex)
    gates = [Gate.u1q(coin, n)]
    gates += [Gate.phase(angle, q) for q, angle in _omega_angles(n, dagger=True, tilde=True)]
    # controlled squared layer: factor on qubit m carries phase 2 pi / 2**m
    for m in range(n - 1, 0, -1):
        gates.append(Gate.cphase(2.0 * np.pi / (1 << m), n, m))
    return Circuit(n + 1, tuple(gates), label="present-step")


def _qft_scheme_step_gates(n: int, coin: np.ndarray) -> list[Gate]:
    """One step of the per-step-Fourier scheme, with blocks fenced."""
    coin_qubit = n
    all_qubits = range(n + 1)
    gates: list[Gate] = [Gate.u1q(coin, coin_qubit)]
    cascade = [Gate.mcx([(coin_qubit, 0)], q) for q in range(n - 1, -1, -1)]
    gates += cascade
    gates.append(Gate.barrier(all_qubits))
    gates += _qft_gates(n)
    gates.append(Gate.barrier(all_qubits))
    gates += [Gate.phase(angle, q) for q, angle in _omega_angles(n, dagger=False, tilde=True)]
    gates.append(Gate.barrier(all_qubits))
    gates += [g.adjoint() for g in reversed(_qft_gates(n))]
    gates.append(Gate.barrier(all_qubits))
    gates += cascade
    return gates


def increment_circuit(n: int) -> Circuit:
    """|j> -> |(j+1) mod 2**n> as a multi-controlled-X ripple plus CX and X."""
    if n < 1:
        raise ValueError("need at least one qubit")
    gates: list[Gate] = []
    for target in range(n - 1, 0, -1):
        controls = [(q, 1) for q in range(target)]
        gates.append(Gate.mcx(controls, target))
    gates.append(Gate.x(0))
    return Circuit(n, tuple(gates), label="increment")


def _id_step_gates(n: int, coin: np.ndarray) -> list[Gate]:
    """One increment-based step: coin, polarity cascade, increment, cascade.

    The cascade flips every position bit when the coin is |0>, which turns
    the central increment into a decrement exactly when required by the
    shift convention.
    """
    coin_qubit = n
    gates: list[Gate] = [Gate.u1q(coin, coin_qubit)]
    cascade = [Gate.mcx([(coin_qubit, 0)], q) for q in range(n - 1, -1, -1)]
    gates += cascade
    gates += list(increment_circuit(n).gates)
    gates += cascade
    return gates


# ---------------------------------------------------------------------------
# Full-walk builder
# ---------------------------------------------------------------------------

def prepare_coin_state(theta: float, phi: float) -> Circuit:
    """Single-qubit circuit sending |0> to cos(theta/2)|0> + e^{i phi} sin(theta/2)|1>."""
    if not 0.0 <= theta <= np.pi + 1e-12:
        raise ValueError("theta must lie in [0, pi]")
    c, s = np.cos(theta / 2.0), np.sin(theta / 2.0)
    u = np.array([[c, -s * np.exp(-1j * phi)],
                  [s * np.exp(1j * phi), c]])
    return Circuit(1, (Gate.u1q(u, 0),), label="coin-prep")


def build_walk(config: WalkConfig, include_prep: bool = True) -> Circuit:
    """Full walk circuit for ``config`` over n+1 qubits.

    ``include_prep=False`` drops the initial coin rotation; the cost-model
    comparisons exclude state preparation, so counting paths use that form
    (with ``localized_init=False`` to keep the full Fourier blocks).
    """
    n = config.n
    coin_qubit = n
    all_qubits = range(n + 1)
    gates: list[Gate] = []
    if include_prep:
        prep = prepare_coin_state(config.theta, config.phi)
        gates.append(Gate.u1q(prep.gates[0].matrix, coin_qubit))

    scheme = config.scheme
    if scheme is Scheme.PRESENT:
        if config.localized_init:
            gates += [Gate.h(q) for q in range(n - 1, -1, -1)]
        else:
            gates += _qft_gates(n)
        gates.append(Gate.barrier(all_qubits))
        step = build_present_step(n, config.coin_matrix)
        for _ in range(config.steps):
            gates += list(step.gates)
            gates.append(Gate.barrier(all_qubits))
        gates += [g.adjoint() for g in reversed(_qft_gates(n))]
    elif scheme is Scheme.QFT_SCHEME:
        step = _qft_scheme_step_gates(n, config.coin_matrix)
        for s in range(config.steps):
            if s:
                gates.append(Gate.barrier(all_qubits))
            gates += step
    elif scheme in ID_SCHEMES:
        step = _id_step_gates(n, config.coin_matrix)
        for s in range(config.steps):
            if s:
                gates.append(Gate.barrier(all_qubits))
            gates += step
    else:
        raise ValueError(f"unknown scheme {scheme}")
    return Circuit(n + 1, tuple(gates), label=f"walk-{scheme.value}-n{n}-t{config.steps}")


def build_walk_core(config: WalkConfig) -> Circuit:
    """The repeated step block alone (no prep, no Fourier sandwich).

    This is the part whose two-qubit gates must fit the device couplings
    with the coin adjacent to every position qubit.
    """
    if config.scheme is not Scheme.PRESENT:
        raise ValueError("core extraction is defined for the present scheme")
    step = build_present_step(config.n, config.coin_matrix)
    gates: list[Gate] = []
    for s in range(config.steps):
        if s:
            gates.append(Gate.barrier(range(config.n + 1)))
        gates += list(step.gates)
    return Circuit(config.n + 1, tuple(gates),
                   label=f"walk-core-n{config.n}-t{config.steps}")


# ---------------------------------------------------------------------------
# Closed-form cost model for the increment-based scheme
# ---------------------------------------------------------------------------

def id_cost_model(n: int, t: int, variant: Scheme) -> MetricsReport:
    """Closed-form metrics of the increment-based walk.

    ``ID_LINEAR_DEPTH`` (n >= 3) lowers each generalized CNOT to a
    linear-depth ancilla-free circuit; ``ID_ANCILLA`` (n >= 4) trades n-3
    reusable ancilla qubits for quadratically fewer two-qubit gates.
    """
    if variant is Scheme.ID_LINEAR_DEPTH:
        if n < 3:
            raise ValueError("linear-depth cost model needs n >= 3")
        numer = 2 * n**3 - 6 * n**2 + 13 * n - 3
        assert numer % 3 == 0
        return MetricsReport(n1=2 * t, n2=t * (numer // 3),
                             depth=t * (4 * n**2 - 14 * n + 19), ancillae=0)
    if variant is Scheme.ID_ANCILLA:
        if n < 4:
            raise ValueError("ancilla cost model needs n >= 4")
        return MetricsReport(n1=2 * t, n2=t * (10 * n**2 - 48 * n + 66),
                             depth=t * (8 * n**2 - 38 * n + 55), ancillae=n - 3)
    raise ValueError(f"{variant} is not an increment-based variant")
