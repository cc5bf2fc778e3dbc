"""
Dense statevector simulator for X, H and multi-controlled X gates

Bit order: qubit 0 is the least significant bit of the basis index.
Bitstrings are written most-significant first, like a ket |q_{m-1} ... q_0>,
so new_state("10") puts qubit 1 in |1> and qubit 0 in |0>.
"""

import logging
from collections import Counter
from dataclasses import dataclass, field
from enum import Enum
from typing import Dict, Iterable, Iterator, List, Mapping, Sequence, Tuple

import numpy as np

from core.errors import IndexOutOfRange, InvalidGate, InvalidState, TooManyQubits

logger = logging.getLogger(__name__)

MAX_QUBITS = 24
NORM_TOLERANCE = 1e-10
_INV_SQRT2 = 1.0 / np.sqrt(2.0)


class Polarity(Enum):
    """Control fires on |1> (positive) or |0> (negative)"""
    POSITIVE = 1
    NEGATIVE = 0

    @property
    def symbol(self) -> str:
        return '+' if self is Polarity.POSITIVE else '-'


class GateKind(Enum):
    X = 'X'
    H = 'H'
    MCX = 'MCX'


@dataclass(frozen=True)
class GateSpec:
    """One gate: kind, target and polarised controls"""
    kind: GateKind
    target: int
    controls: Tuple[Tuple[int, Polarity], ...] = ()

    def __post_init__(self):
        controls = tuple((int(q), Polarity(p) if not isinstance(p, Polarity) else p)
                         for q, p in self.controls)
        object.__setattr__(self, 'controls', controls)
        if self.kind in (GateKind.X, GateKind.H) and controls:
            raise InvalidGate(f"{self.kind.value} gate takes no controls")
        indices = [q for q, _ in controls]
        if self.target in indices:
            raise InvalidGate(f"Target {self.target} also listed as a control")
        if len(set(indices)) != len(indices):
            raise InvalidGate("Control qubits must be distinct")

    @property
    def qubits(self) -> Tuple[int, ...]:
        return (self.target,) + tuple(q for q, _ in self.controls)

    def describe(self) -> str:
        """Listing line: kind, target, controls with polarity"""
        if not self.controls:
            return f"{self.kind.value} target={self.target}"
        ctrl = ','.join(f"{p.symbol}{q}" for q, p in self.controls)
        return f"{self.kind.value} target={self.target} controls=[{ctrl}]"


def x_gate(target: int) -> GateSpec:
    return GateSpec(GateKind.X, target)


def h_gate(target: int) -> GateSpec:
    return GateSpec(GateKind.H, target)


def mcx_gate(target: int, positive: Iterable[int] = (),
             negative: Iterable[int] = ()) -> GateSpec:
    """Multi-controlled X; CNOT and Toffoli are the one- and two-control cases"""
    controls = ([(q, Polarity.POSITIVE) for q in positive]
                + [(q, Polarity.NEGATIVE) for q in negative])
    return GateSpec(GateKind.MCX, target, tuple(controls))


@dataclass
class Circuit:
    """Ordered gate list over a fixed register"""
    num_qubits: int
    gates: List[GateSpec] = field(default_factory=list)

    def __post_init__(self):
        for gate in self.gates:
            self._check(gate)

    def _check(self, gate: GateSpec) -> None:
        for q in gate.qubits:
            if q < 0 or q >= self.num_qubits:
                raise IndexOutOfRange(
                    f"Gate '{gate.describe()}' touches qubit {q} outside 0..{self.num_qubits - 1}")

    def append(self, gate: GateSpec) -> 'Circuit':
        self._check(gate)
        self.gates.append(gate)
        return self

    def extend(self, gates: Iterable[GateSpec]) -> 'Circuit':
        for gate in gates:
            self.append(gate)
        return self

    def __iter__(self) -> Iterator[GateSpec]:
        return iter(self.gates)

    def __len__(self) -> int:
        return len(self.gates)


class QubitState:
    """Amplitude vector of 2^m complex numbers, single owner while mutating"""

    def __init__(self, num_qubits: int, amplitudes: np.ndarray):
        if num_qubits > MAX_QUBITS:
            raise TooManyQubits(f"{num_qubits} qubits exceed the {MAX_QUBITS}-qubit limit")
        amplitudes = np.asarray(amplitudes, dtype=np.complex128)
        if amplitudes.shape != (1 << num_qubits,):
            raise InvalidState(f"Expected {1 << num_qubits} amplitudes, got shape {amplitudes.shape}")
        self.num_qubits = num_qubits
        self.amplitudes = amplitudes

    def tensor(self) -> np.ndarray:
        """View with one axis per qubit; axis k holds qubit m-1-k"""
        return self.amplitudes.reshape((2,) * self.num_qubits)

    def norm(self) -> float:
        return float(np.vdot(self.amplitudes, self.amplitudes).real)

    def probabilities(self) -> np.ndarray:
        return np.abs(self.amplitudes) ** 2

    def support(self, tol: float = 1e-12) -> np.ndarray:
        """Basis indices carrying non-negligible amplitude"""
        return np.flatnonzero(self.probabilities() > tol)

    def copy(self) -> 'QubitState':
        return QubitState(self.num_qubits, self.amplitudes.copy())


def new_state(bits: str) -> QubitState:
    """
    Computational basis state |bits>

    Args:
        bits: String of '0'/'1', most-significant qubit first; '' is the scalar state

    Returns:
        QubitState
    """
    if len(bits) > MAX_QUBITS:
        raise TooManyQubits(f"{len(bits)} qubits exceed the {MAX_QUBITS}-qubit limit")
    if bits and set(bits) - {'0', '1'}:
        raise ValueError(f"Basis label must contain only 0/1, got {bits!r}")
    m = len(bits)
    amplitudes = np.zeros(1 << m, dtype=np.complex128)
    amplitudes[int(bits, 2) if bits else 0] = 1.0
    return QubitState(m, amplitudes)


def basis_label(index: int, num_qubits: int) -> str:
    """Inverse of new_state's labelling"""
    return format(index, f'0{num_qubits}b') if num_qubits else ''


def _slices(num_qubits: int, fixed: Mapping[int, int]) -> Tuple:
    idx = [slice(None)] * num_qubits
    for q, bit in fixed.items():
        idx[num_qubits - 1 - q] = bit
    return tuple(idx)


def apply(state: QubitState, gate: GateSpec) -> QubitState:
    """
    Apply one gate in place

    Args:
        state: State to mutate
        gate: Gate to apply

    Returns:
        The same state object
    """
    m = state.num_qubits
    for q in gate.qubits:
        if q < 0 or q >= m:
            raise IndexOutOfRange(f"Qubit {q} outside 0..{m - 1}")

    psi = state.tensor()
    fixed = {q: p.value for q, p in gate.controls}
    low = _slices(m, {**fixed, gate.target: 0})
    high = _slices(m, {**fixed, gate.target: 1})

    if gate.kind is GateKind.H:
        a0 = psi[low].copy()
        a1 = psi[high].copy()
        psi[low] = (a0 + a1) * _INV_SQRT2
        psi[high] = (a0 - a1) * _INV_SQRT2
    else:
        a0 = psi[low].copy()
        psi[low] = psi[high]
        psi[high] = a0
    return state


def run(state: QubitState, circuit: Circuit) -> QubitState:
    """Apply every gate of a circuit in order"""
    if circuit.num_qubits != state.num_qubits:
        raise IndexOutOfRange(
            f"Circuit spans {circuit.num_qubits} qubits, state has {state.num_qubits}")
    for gate in circuit:
        apply(state, gate)
    return state


def marginal_probability(state: QubitState, assignment: Mapping[int, int]) -> float:
    """
    Exact probability that the given qubits take the given values

    Args:
        state: State to inspect
        assignment: qubit index -> bit

    Returns:
        Sum of |amp|^2 over consistent basis states
    """
    m = state.num_qubits
    for q, bit in assignment.items():
        if q < 0 or q >= m:
            raise IndexOutOfRange(f"Qubit {q} outside 0..{m - 1}")
        if bit not in (0, 1):
            raise ValueError(f"Assigned value for qubit {q} must be 0 or 1, got {bit!r}")
    if not assignment:
        return state.norm()
    block = state.tensor()[_slices(m, assignment)]
    return float(np.sum(np.abs(block) ** 2))


def sample(state: QubitState, rng: np.random.Generator) -> str:
    """
    Draw one basis outcome with probability |amp|^2

    Args:
        state: Normalised state
        rng: Caller-owned random stream

    Returns:
        Bitstring, most-significant qubit first
    """
    norm = state.norm()
    if abs(norm - 1.0) > NORM_TOLERANCE:
        raise InvalidState(f"Cannot sample from a state with norm {norm!r}")
    probs = state.probabilities()
    index = int(rng.choice(probs.size, p=probs / probs.sum()))
    return basis_label(index, state.num_qubits)


def gate_listing(circuit: Circuit) -> str:
    """One line per gate"""
    return '\n'.join(gate.describe() for gate in circuit)


def gate_counts(circuit: Circuit) -> Dict[str, int]:
    """Gate totals by kind and by control count"""
    counts: Counter = Counter()
    for gate in circuit:
        counts[gate.kind.value] += 1
        if gate.kind is GateKind.MCX:
            counts[f"MCX/{len(gate.controls)}"] += 1
    counts['total'] = len(circuit)
    return dict(counts)


def compose(num_qubits: int, parts: Sequence[Circuit]) -> Circuit:
    """Concatenate circuits over the same register"""
    circuit = Circuit(num_qubits)
    for part in parts:
        circuit.extend(part.gates)
    return circuit
