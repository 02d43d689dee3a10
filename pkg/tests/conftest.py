import numpy as np
import pytest

from cyclewalk import walks
from cyclewalk.circuit import Circuit, Gate
from cyclewalk.statevec import StateVector, run_circuit

# Initial coin used throughout: theta = pi/6, phi = pi/2.
THETA = np.pi / 6
PHI = np.pi / 2


def walk_state(n, steps, scheme=walks.Scheme.PRESENT, theta=THETA, phi=PHI,
               localized_init=True):
    """Build and simulate a walk, returning the final (n+1)-qubit state."""
    cfg = walks.WalkConfig(n=n, steps=steps, theta=theta, phi=phi,
                           scheme=scheme, localized_init=localized_init)
    return run_circuit(StateVector.zero(n + 1), walks.build_walk(cfg))


def mesps_state_t1(n=2):
    """The maximally entangled state after one step on the 4-cycle:
    (e^{i pi/12}|0_c>|3_p> + e^{-i pi/12}|1_c>|1_p>)/sqrt 2."""
    amps = np.zeros(1 << (n + 1), dtype=complex)
    amps[0 * 4 + 3] = np.exp(1j * np.pi / 12) / np.sqrt(2)
    amps[1 * 4 + 1] = np.exp(-1j * np.pi / 12) / np.sqrt(2)
    return StateVector(n + 1, amps)


def random_circuit(rng, n_qubits, n_gates):
    """Random circuit over the simulable IR (no barriers)."""
    gates = []
    for _ in range(n_gates):
        kind = rng.integers(0, 7)
        q = int(rng.integers(0, n_qubits))
        if kind == 0:
            gates.append(Gate.x(q))
        elif kind == 1:
            gates.append(Gate.h(q))
        elif kind == 2:
            gates.append(Gate.sqrt_x(q))
        elif kind == 3:
            gates.append(Gate.phase(float(rng.uniform(0, 2 * np.pi)), q))
        elif kind == 4:
            gates.append(Gate.u1q(haar_unitary(rng), q))
        elif kind == 5 and n_qubits > 1:
            a, b = rng.choice(n_qubits, size=2, replace=False)
            gates.append(Gate.cx(int(a), int(b)))
        elif n_qubits > 1:
            a, b = rng.choice(n_qubits, size=2, replace=False)
            gates.append(Gate.cphase(float(rng.uniform(0, 2 * np.pi)),
                                     int(a), int(b)))
        else:
            gates.append(Gate.h(q))
    return Circuit(n_qubits, tuple(gates))


def haar_unitary(rng, dim=2):
    z = (rng.standard_normal((dim, dim))
         + 1j * rng.standard_normal((dim, dim))) / np.sqrt(2)
    q, r = np.linalg.qr(z)
    return q * (np.diag(r) / np.abs(np.diag(r)))


def random_state(rng, n_qubits):
    amps = rng.standard_normal(1 << n_qubits) + 1j * rng.standard_normal(1 << n_qubits)
    return StateVector(n_qubits, amps / np.linalg.norm(amps))


@pytest.fixture
def rng():
    return np.random.default_rng(20240819)
