"""Gate-level IR: gates, circuits, counting, depth, layout checks, native rewrite.

Depth follows as-soon-as-possible scheduling over the shared-qubit partial
order: a gate starts one level after the latest earlier gate touching any of
its qubits, so gates on disjoint qubits parallelize and gates sharing a
control qubit serialize.  Barriers are zero-cost alignment fences; builders
emit them between logical blocks (QFT, walk step, ...) so that measured depth
matches the block-additive accounting used by the closed-form cost models.
"""

from __future__ import annotations

import json
from dataclasses import dataclass

import numpy as np

# Gate kinds.  1q: X, H, SqrtX, Rz(lambda), Phase(phi), Unitary1q(matrix).
# 2q: CX, ControlledPhase(phi).  MultiControlledX carries per-control polarity
# (1 = fire on |1>, 0 = fire on |0>).  Barrier is a scheduling fence.
KIND_X = "X"
KIND_H = "H"
KIND_SQRT_X = "SqrtX"
KIND_RZ = "Rz"
KIND_PHASE = "Phase"
KIND_U1Q = "Unitary1q"
KIND_CX = "CX"
KIND_CPHASE = "ControlledPhase"
KIND_MCX = "MultiControlledX"
KIND_BARRIER = "Barrier"

ONE_QUBIT_KINDS = frozenset({KIND_X, KIND_H, KIND_SQRT_X, KIND_RZ, KIND_PHASE, KIND_U1Q})

_SQRT_X_MATRIX = 0.5 * np.array([[1 + 1j, 1 - 1j], [1 - 1j, 1 + 1j]])
_X_MATRIX = np.array([[0.0, 1.0], [1.0, 0.0]], dtype=complex)
_H_MATRIX = np.array([[1.0, 1.0], [1.0, -1.0]], dtype=complex) / np.sqrt(2.0)

UNITARITY_TOL = 1e-10


class GateError(ValueError):
    """Malformed gate: bad qubit indices, non-unitary matrix, or bad polarity."""


class LoweringError(ValueError):
    """Gate not expressible in the 1q/2q counting model (unlowered k>=2 controls)."""


@dataclass(frozen=True, eq=False)
class Gate:
    """One gate of the IR.

    ``qubits`` lists every touched qubit; for CX and MultiControlledX the
    controls come first and the target last.  ``angle`` is radians.
    """

    kind: str
    qubits: tuple[int, ...]
    angle: float | None = None
    matrix: np.ndarray | None = None
    polarities: tuple[int, ...] | None = None

    # -- constructors ------------------------------------------------------
    @classmethod
    def x(cls, qubit: int) -> Gate:
        return cls(KIND_X, (qubit,))

    @classmethod
    def h(cls, qubit: int) -> Gate:
        return cls(KIND_H, (qubit,))

    @classmethod
    def sqrt_x(cls, qubit: int) -> Gate:
        return cls(KIND_SQRT_X, (qubit,))

    @classmethod
    def rz(cls, angle: float, qubit: int) -> Gate:
        return cls(KIND_RZ, (qubit,), angle=float(angle))

    @classmethod
    def phase(cls, angle: float, qubit: int) -> Gate:
        return cls(KIND_PHASE, (qubit,), angle=float(angle))

    @classmethod
    def u1q(cls, matrix: np.ndarray, qubit: int) -> Gate:
        matrix = np.asarray(matrix, dtype=complex)
        if matrix.shape != (2, 2):
            raise GateError(f"Unitary1q needs a 2x2 matrix, got shape {matrix.shape}")
        if not _is_unitary(matrix):
            raise GateError("Unitary1q matrix is not unitary within tolerance")
        return cls(KIND_U1Q, (qubit,), matrix=matrix)

    @classmethod
    def cx(cls, control: int, target: int) -> Gate:
        if control == target:
            raise GateError("CX control and target must differ")
        return cls(KIND_CX, (control, target))

    @classmethod
    def cphase(cls, angle: float, qubit_a: int, qubit_b: int) -> Gate:
        if qubit_a == qubit_b:
            raise GateError("ControlledPhase qubits must differ")
        return cls(KIND_CPHASE, (qubit_a, qubit_b), angle=float(angle))

    @classmethod
    def mcx(cls, controls: list[tuple[int, int]], target: int) -> Gate:
        qubits = tuple(q for q, _ in controls) + (target,)
        if len(set(qubits)) != len(qubits):
            raise GateError("MultiControlledX qubits must be pairwise distinct")
        pols = tuple(int(p) for _, p in controls)
        if any(p not in (0, 1) for p in pols):
            raise GateError("control polarity must be 0 or 1")
        return cls(KIND_MCX, qubits, polarities=pols)

    @classmethod
    def barrier(cls, qubits) -> Gate:
        return cls(KIND_BARRIER, tuple(qubits))

    # -- queries -----------------------------------------------------------
    def is_one_qubit(self) -> bool:
        return self.kind in ONE_QUBIT_KINDS

    def is_two_qubit(self) -> bool:
        if self.kind in (KIND_CX, KIND_CPHASE):
            return True
        return self.kind == KIND_MCX and len(self.qubits) == 2

    def unitary_1q(self) -> np.ndarray:
        """2x2 matrix of a one-qubit gate (phase gates included)."""
        if self.kind == KIND_X:
            return _X_MATRIX
        if self.kind == KIND_H:
            return _H_MATRIX
        if self.kind == KIND_SQRT_X:
            return _SQRT_X_MATRIX
        if self.kind == KIND_RZ:
            return np.diag([np.exp(-0.5j * self.angle), np.exp(0.5j * self.angle)])
        if self.kind == KIND_PHASE:
            return np.diag([1.0, np.exp(1j * self.angle)])
        if self.kind == KIND_U1Q:
            return self.matrix
        raise GateError(f"{self.kind} is not a one-qubit gate")

    def adjoint(self) -> Gate:
        if self.kind in (KIND_X, KIND_H, KIND_CX, KIND_MCX, KIND_BARRIER):
            return self
        if self.kind == KIND_SQRT_X:
            return Gate.u1q(_SQRT_X_MATRIX.conj().T, self.qubits[0])
        if self.kind == KIND_RZ:
            return Gate.rz(-self.angle, self.qubits[0])
        if self.kind == KIND_PHASE:
            return Gate.phase(-self.angle, self.qubits[0])
        if self.kind == KIND_U1Q:
            return Gate.u1q(self.matrix.conj().T, self.qubits[0])
        if self.kind == KIND_CPHASE:
            return Gate.cphase(-self.angle, *self.qubits)
        raise GateError(f"no adjoint rule for kind {self.kind}")


def _is_unitary(matrix: np.ndarray, tol: float = UNITARITY_TOL) -> bool:
    eye = np.eye(matrix.shape[0])
    return np.max(np.abs(matrix.conj().T @ matrix - eye)) <= tol


@dataclass(frozen=True)
class Circuit:
    """Ordered gate list over a fixed qubit count.  Immutable once built."""

    n_qubits: int
    gates: tuple[Gate, ...]
    label: str = ""

    def __post_init__(self):
        object.__setattr__(self, "gates", tuple(self.gates))
        for i, gate in enumerate(self.gates):
            if any(q < 0 or q >= self.n_qubits for q in gate.qubits):
                raise GateError(
                    f"gate {i} ({gate.kind}) uses qubit outside 0..{self.n_qubits - 1}"
                )

    def __len__(self) -> int:
        return len(self.gates)


@dataclass
class MetricsReport:
    """Circuit size report: one-qubit gates, two-qubit gates, depth, ancillae."""

    n1: int
    n2: int
    depth: int
    ancillae: int = 0


def gate_counts(circuit: Circuit) -> MetricsReport:
    """Count 1q/2q gates; barriers are free.  Depth comes from :func:`depth`.

    Raises :class:`LoweringError` for a MultiControlledX with two or more
    controls: those are simulable but have no place in the 1q/2q counting
    model until lowered or replaced by a closed-form cost model.
    """
    n1 = 0
    n2 = 0
    for i, gate in enumerate(circuit.gates):
        if gate.kind == KIND_BARRIER:
            continue
        if gate.is_one_qubit():
            n1 += 1
        elif gate.is_two_qubit():
            n2 += 1
        else:
            raise LoweringError(
                f"gate {i} ({gate.kind} on {gate.qubits}) has "
                f"{len(gate.qubits) - 1} controls; lower it before counting"
            )
    return MetricsReport(n1=n1, n2=n2, depth=depth(circuit))


def depth(circuit: Circuit) -> int:
    """ASAP depth: longest chain of gates linked by shared qubits.

    A barrier synchronizes its span: gates after it start no earlier than
    every gate before it on the spanned qubits.  Barriers themselves cost
    no level.
    """
    levels = [0] * circuit.n_qubits
    for i, gate in enumerate(circuit.gates):
        if gate.kind == KIND_BARRIER:
            fence = max((levels[q] for q in gate.qubits), default=0)
            for q in gate.qubits:
                levels[q] = fence
            continue
        if not (gate.is_one_qubit() or gate.is_two_qubit()):
            raise LoweringError(
                f"gate {i} ({gate.kind} on {gate.qubits}) has "
                f"{len(gate.qubits) - 1} controls; lower it before scheduling"
            )
        start = max(levels[q] for q in gate.qubits) + 1
        for q in gate.qubits:
            levels[q] = start
    return max(levels, default=0)


def inverse(circuit: Circuit) -> Circuit:
    """Reverse gate order, each gate replaced by its adjoint."""
    gates = tuple(g.adjoint() for g in reversed(circuit.gates))
    label = f"{circuit.label}^dag" if circuit.label else ""
    return Circuit(circuit.n_qubits, gates, label=label)


def concat(n_qubits: int, *parts, label: str = "") -> Circuit:
    """Concatenate circuits and/or gate iterables into one circuit."""
    gates: list[Gate] = []
    for part in parts:
        gates.extend(part.gates if isinstance(part, Circuit) else part)
    return Circuit(n_qubits, tuple(gates), label=label)


# ---------------------------------------------------------------------------
# Coupling maps and layout validation
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class CouplingMap:
    """Physical qubit adjacency: undirected edges over device qubits."""

    n_qubits: int
    edges: frozenset[tuple[int, int]]

    @classmethod
    def from_edges(cls, n_qubits: int, edges) -> CouplingMap:
        norm = set()
        for a, b in edges:
            if not (0 <= a < n_qubits and 0 <= b < n_qubits) or a == b:
                raise ValueError(f"bad edge ({a}, {b}) for device of size {n_qubits}")
            norm.add((min(a, b), max(a, b)))
        return cls(n_qubits, frozenset(norm))

    def adjacent(self, a: int, b: int) -> bool:
        return (min(a, b), max(a, b)) in self.edges


# 27-qubit heavy-hex device used for the walk experiments (ibm_cairo family).
IBM_CAIRO = CouplingMap.from_edges(27, [
    (0, 1), (1, 2), (1, 4), (2, 3), (3, 5), (4, 7), (5, 8), (6, 7),
    (7, 10), (8, 9), (8, 11), (10, 12), (11, 14), (12, 13), (12, 15),
    (13, 14), (14, 16), (15, 18), (16, 19), (17, 18), (18, 21), (19, 20),
    (19, 22), (21, 23), (22, 25), (23, 24), (24, 25), (25, 26),
])


@dataclass(frozen=True)
class LayoutViolation:
    gate_index: int
    kind: str
    logical: tuple[int, int]
    physical: tuple[int, int]


def validate_layout(circuit: Circuit, coupling: CouplingMap,
                    placement: dict[int, int]) -> list[LayoutViolation]:
    """Check every 2q gate against physical adjacency under ``placement``.

    ``placement`` maps logical qubit index to physical qubit index; it must
    be injective and stay inside the device.  Returns one violation record
    per offending gate (empty list = routable without SWAPs).
    """
    phys = set()
    for logical, physical in placement.items():
        if not 0 <= physical < coupling.n_qubits:
            raise ValueError(f"placement {logical}->{physical} outside device")
        if physical in phys:
            raise ValueError("placement is not injective")
        phys.add(physical)

    violations = []
    for i, gate in enumerate(circuit.gates):
        if gate.kind == KIND_BARRIER or gate.is_one_qubit():
            continue
        if not gate.is_two_qubit():
            raise LoweringError(
                f"gate {i} ({gate.kind}) has multiple controls; lower it "
                "before layout validation"
            )
        a, b = gate.qubits
        try:
            pa, pb = placement[a], placement[b]
        except KeyError as exc:
            raise ValueError(f"placement missing logical qubit {exc}") from None
        if not coupling.adjacent(pa, pb):
            violations.append(LayoutViolation(i, gate.kind, (a, b), (pa, pb)))
    return violations


# ---------------------------------------------------------------------------
# Rewrite into the native basis {CX, I, Rz, SqrtX, X}
# ---------------------------------------------------------------------------

def rewrite_to_native(circuit: Circuit) -> Circuit:
    """Rewrite to {CX, Rz, SqrtX, X} preserving the unitary up to global phase.

    H becomes Rz(pi/2) SqrtX Rz(pi/2); Phase(phi) becomes Rz(phi); a generic
    one-qubit unitary becomes the standard Rz-SqrtX-Rz-SqrtX-Rz sequence;
    ControlledPhase becomes 2 CX + 3 Rz.  MultiControlledX is rewritten only
    in the single-control case (polarity absorbed into X conjugation).
    """
    out: list[Gate] = []
    for i, gate in enumerate(circuit.gates):
        if gate.kind == KIND_BARRIER:
            out.append(gate)
        elif gate.kind in (KIND_X, KIND_SQRT_X, KIND_RZ, KIND_CX):
            out.append(gate)
        elif gate.kind == KIND_H:
            q = gate.qubits[0]
            out += [Gate.rz(np.pi / 2, q), Gate.sqrt_x(q), Gate.rz(np.pi / 2, q)]
        elif gate.kind == KIND_PHASE:
            out.append(Gate.rz(gate.angle, gate.qubits[0]))
        elif gate.kind == KIND_U1Q:
            out += _rewrite_u1q(gate.matrix, gate.qubits[0])
        elif gate.kind == KIND_CPHASE:
            a, b = gate.qubits
            half = gate.angle / 2.0
            out += [Gate.rz(half, a), Gate.rz(half, b), Gate.cx(a, b),
                    Gate.rz(-half, b), Gate.cx(a, b)]
        elif gate.kind == KIND_MCX:
            if len(gate.qubits) != 2:
                raise LoweringError(
                    f"gate {i}: MultiControlledX with {len(gate.qubits) - 1} "
                    "controls is outside the native rewrite scope"
                )
            control, target = gate.qubits
            if gate.polarities[0] == 1:
                out.append(Gate.cx(control, target))
            else:
                out += [Gate.x(control), Gate.cx(control, target), Gate.x(control)]
        else:
            raise GateError(f"unknown gate kind {gate.kind}")
    label = f"{circuit.label}:native" if circuit.label else "native"
    return Circuit(circuit.n_qubits, tuple(out), label=label)


def _rewrite_u1q(matrix: np.ndarray, qubit: int) -> list[Gate]:
    """One-qubit unitary as Rz/SqrtX gates (up to global phase)."""
    theta, phi, lam = _u3_angles(matrix)
    if abs(theta) < 1e-12:
        angle = phi + lam
        return [] if abs(angle) < 1e-12 else [Gate.rz(angle, qubit)]
    # U3(theta, phi, lam) ~ Rz(phi+pi) SqrtX Rz(theta+pi) SqrtX Rz(lam)
    return [
        Gate.rz(lam, qubit),
        Gate.sqrt_x(qubit),
        Gate.rz(theta + np.pi, qubit),
        Gate.sqrt_x(qubit),
        Gate.rz(phi + np.pi, qubit),
    ]


def _u3_angles(matrix: np.ndarray) -> tuple[float, float, float]:
    """Angles with U = e^{i a} [[cos(t/2), -e^{il} sin(t/2)],
    [e^{ip} sin(t/2), e^{i(p+l)} cos(t/2)]]."""
    u = np.asarray(matrix, dtype=complex)
    c = abs(u[0, 0])
    s = abs(u[1, 0])
    theta = 2.0 * np.arctan2(s, c)
    if s < 1e-12:           # diagonal
        return 0.0, 0.0, float(np.angle(u[1, 1] / u[0, 0]))
    if c < 1e-12:           # anti-diagonal
        return float(np.pi), float(np.angle(u[1, 0])), float(np.angle(-u[0, 1]))
    alpha = np.angle(u[0, 0])
    phi = np.angle(u[1, 0]) - alpha
    lam = np.angle(-u[0, 1]) - alpha
    return float(theta), float(phi), float(lam)


# ---------------------------------------------------------------------------
# JSON serialization: {n_qubits, label, gates: [{kind, qubits, params}]}
# ---------------------------------------------------------------------------

def circuit_to_json(circuit: Circuit) -> str:
    doc = {
        "n_qubits": circuit.n_qubits,
        "label": circuit.label,
        "gates": [_gate_to_doc(g) for g in circuit.gates],
    }
    return json.dumps(doc, indent=None, separators=(",", ":"))


def circuit_from_json(text: str) -> Circuit:
    doc = json.loads(text)
    gates = tuple(_gate_from_doc(g) for g in doc["gates"])
    return Circuit(int(doc["n_qubits"]), gates, label=doc.get("label", ""))


def _gate_to_doc(gate: Gate) -> dict:
    doc: dict = {"kind": gate.kind, "qubits": list(gate.qubits), "params": {}}
    if gate.angle is not None:
        doc["params"]["angle"] = gate.angle
    if gate.matrix is not None:
        doc["params"]["matrix"] = [[[float(z.real), float(z.imag)] for z in row]
                                   for row in gate.matrix]
    if gate.polarities is not None:
        doc["params"]["polarities"] = list(gate.polarities)
    return doc


def _gate_from_doc(doc: dict) -> Gate:
    kind = doc["kind"]
    qubits = [int(q) for q in doc["qubits"]]
    params = doc.get("params", {})
    if kind == KIND_X:
        return Gate.x(qubits[0])
    if kind == KIND_H:
        return Gate.h(qubits[0])
    if kind == KIND_SQRT_X:
        return Gate.sqrt_x(qubits[0])
    if kind == KIND_RZ:
        return Gate.rz(params["angle"], qubits[0])
    if kind == KIND_PHASE:
        return Gate.phase(params["angle"], qubits[0])
    if kind == KIND_U1Q:
        matrix = np.array([[complex(re, im) for re, im in row]
                           for row in params["matrix"]])
        return Gate.u1q(matrix, qubits[0])
    if kind == KIND_CX:
        return Gate.cx(qubits[0], qubits[1])
    if kind == KIND_CPHASE:
        return Gate.cphase(params["angle"], qubits[0], qubits[1])
    if kind == KIND_MCX:
        controls = list(zip(qubits[:-1], params["polarities"]))
        return Gate.mcx(controls, qubits[-1])
    if kind == KIND_BARRIER:
        return Gate.barrier(qubits)
    raise GateError(f"unknown gate kind in JSON: {kind}")
