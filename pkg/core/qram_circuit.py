"""
Bucket-brigade qRAM circuit with fault-address-table repair

The query runs three stages on one statevector:

1. repair: the fault address table is compiled into multi-controlled X
   gates that raise the repair flag (RFQ) and write the spare code into the
   spare-address register when the input address is faulty; the |1> ancilla
   becomes NOT RFQ.
2. routing: the ancilla is split down an upper binary tree steered by the
   input address, RFQ down a lower tree steered by the spare code. Each split
   hands half of a node's range to a fresh qubit, so afterwards exactly one
   leaf qubit is |1> per basis branch. The roots end up as leaves too.
3. read/write: each leaf controls a Toffoli-style gate onto Readout (read)
   or onto its memory cell (XOR write with DQ).
"""

import itertools
import logging
from collections import deque
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Dict, Iterator, List, Optional, Sequence, Tuple, Union

from core.errors import CapacityExceeded, InvalidFat, VerificationFailed
from core.repair import (
    DefectMap, FaultAddressTable, SpareId, build_fat, fat_to_text, translate_address
)
from core.statevec import (
    MAX_QUBITS, Circuit, QubitState, compose, h_gate, marginal_probability,
    mcx_gate, new_state, run
)
from core.yield_engine import resolve_threads

logger = logging.getLogger(__name__)

UNIFORM = 'uniform'
READ = 'read'
WRITE = 'write'
MAX_ADDRESS_BITS = 3
MAX_VERIFY_ADDRESS_BITS = 2
MAX_VERIFY_SPARES = 2
PROBABILITY_TOLERANCE = 1e-9


@dataclass(frozen=True)
class QramLayout:
    """Statevector index of every qubit of the circuit, grouped by register"""
    address_bits: int
    spare_count: int
    address: Tuple[int, ...]
    spare_address: Tuple[int, ...]
    rfq: int
    one_ancilla: int
    upper_nodes: Tuple[int, ...]
    lower_nodes: Tuple[int, ...]
    memory: Tuple[int, ...]
    spare_memory: Tuple[int, ...]
    dq: int
    rw: int
    readout: int

    @property
    def num_logical(self) -> int:
        return 1 << self.address_bits

    @property
    def num_qubits(self) -> int:
        return sum(len(qubits) for qubits in self.registers().values())

    def registers(self) -> Dict[str, Tuple[int, ...]]:
        return {
            'address': self.address,
            'spare_address': self.spare_address,
            'rfq': (self.rfq,),
            'one_ancilla': (self.one_ancilla,),
            'upper_nodes': self.upper_nodes,
            'lower_nodes': self.lower_nodes,
            'memory': self.memory,
            'spare_memory': self.spare_memory,
            'dq': (self.dq,),
            'rw': (self.rw,),
            'readout': (self.readout,),
        }

    def cell_qubit(self, location: Union[int, SpareId]) -> int:
        if isinstance(location, SpareId):
            return self.spare_memory[location.index]
        return self.memory[location]


def layout_size(n: int, X: int) -> int:
    """Qubits needed for n address bits and X spares"""
    N = 1 << n
    return n + (n if X else 0) + 2 + (N - 1) + max(X - 1, 0) + N + X + 3


def build_layout(n: int, X: int) -> QramLayout:
    """
    Assign statevector indices to every register

    Registers are packed from qubit 0 in the order: input address,
    spare address, RFQ, ancilla, upper nodes, lower nodes, memory,
    spare memory, DQ, R/W, Readout.

    Args:
        n: Address bits, 1..3
        X: Spares, 0..2^n

    Returns:
        QramLayout

    Raises:
        CapacityExceeded: the layout needs more than the simulator's qubits
    """
    if not 1 <= n <= MAX_ADDRESS_BITS:
        raise ValueError(f"Address bits must lie in 1..{MAX_ADDRESS_BITS}, got {n}")
    N = 1 << n
    if not 0 <= X <= N:
        raise ValueError(f"Spare count must lie in 0..{N} for {n} address bits, got {X}")

    total = layout_size(n, X)
    if total > MAX_QUBITS:
        raise CapacityExceeded(
            f"Layout (n={n}, X={X}) needs {total} qubits, the simulator holds {MAX_QUBITS}")

    counter = itertools.count()

    def take(width: int) -> Tuple[int, ...]:
        return tuple(next(counter) for _ in range(width))

    return QramLayout(
        address_bits=n,
        spare_count=X,
        address=take(n),
        spare_address=take(n if X else 0),
        rfq=next(counter),
        one_ancilla=next(counter),
        upper_nodes=take(N - 1),
        lower_nodes=take(max(X - 1, 0)),
        memory=take(N),
        spare_memory=take(X),
        dq=next(counter),
        rw=next(counter),
        readout=next(counter),
    )


def _check_fat(layout: QramLayout, fat: FaultAddressTable) -> None:
    if fat.address_bits != layout.address_bits:
        raise InvalidFat(
            f"Table addresses are {fat.address_bits} bits wide, layout uses {layout.address_bits}")
    if len(fat) > layout.spare_count:
        raise InvalidFat(f"Table has {len(fat)} entries but the layout has "
                         f"{layout.spare_count} spare(s)")
    for _, spare in fat.entries:
        if spare.index >= layout.spare_count:
            raise InvalidFat(f"Spare {spare} is outside the layout's {layout.spare_count} spare(s)")


def _address_controls(layout: QramLayout, fa: int) -> Tuple[List[int], List[int]]:
    positive = [q for b, q in enumerate(layout.address) if (fa >> b) & 1]
    negative = [q for b, q in enumerate(layout.address) if not (fa >> b) & 1]
    return positive, negative


def build_repair_subcircuit(layout: QramLayout, fat: FaultAddressTable) -> Circuit:
    """
    Compile the fault address table into the repair oracle

    One address-matching MCX onto RFQ per entry plus one per set bit of the
    spare code onto the spare-address register, then CNOT(RFQ -> ancilla).

    Args:
        layout: Register map
        fat: Fault address table

    Returns:
        Circuit over layout.num_qubits qubits
    """
    _check_fat(layout, fat)
    circuit = Circuit(layout.num_qubits)
    for fa, spare in fat.entries:
        positive, negative = _address_controls(layout, fa)
        circuit.append(mcx_gate(layout.rfq, positive, negative))
        for k, sa_qubit in enumerate(layout.spare_address):
            if (spare.index >> k) & 1:
                circuit.append(mcx_gate(sa_qubit, positive, negative))
    circuit.append(mcx_gate(layout.one_ancilla, positive=[layout.rfq]))
    return circuit


def _split_tree(root: int, pool: Sequence[int], selectors: Sequence[int],
                width: int) -> Tuple[List, Dict[int, int]]:
    """
    Grow a routing tree over codes 0..width-1

    A node covering [lo, hi) splits on the highest bit k where lo and hi-1
    differ: a fresh qubit takes the half with bit k = 0, the node keeps the
    half with bit k = 1.

    Returns:
        (gates, leaves) where leaves maps code -> qubit
    """
    gates = []
    leaves: Dict[int, int] = {}
    free = deque(pool)
    pending = deque([(root, 0, width)])
    while pending:
        node, lo, hi = pending.popleft()
        if hi - lo == 1:
            leaves[lo] = node
            continue
        k = (lo ^ (hi - 1)).bit_length() - 1
        mid = ((hi - 1) >> k) << k
        child = free.popleft()
        gates.append(mcx_gate(child, positive=[node], negative=[selectors[k]]))
        gates.append(mcx_gate(node, positive=[child]))
        pending.append((child, lo, mid))
        pending.append((node, mid, hi))
    return gates, leaves


def _routing(layout: QramLayout) -> Tuple[List, Dict[int, int], Dict[int, int]]:
    upper_gates, upper_leaves = _split_tree(
        layout.one_ancilla, layout.upper_nodes, layout.address, layout.num_logical)
    lower_gates: List = []
    lower_leaves: Dict[int, int] = {}
    if layout.spare_count:
        lower_gates, lower_leaves = _split_tree(
            layout.rfq, layout.lower_nodes, layout.spare_address, layout.spare_count)
    return upper_gates + lower_gates, upper_leaves, lower_leaves


def routing_leaves(layout: QramLayout) -> Dict[Union[int, SpareId], int]:
    """Leaf qubit that ends up |1> for each original address and each spare"""
    _, upper, lower = _routing(layout)
    leaves: Dict[Union[int, SpareId], int] = dict(upper)
    leaves.update({SpareId(j): q for j, q in lower.items()})
    return leaves


def build_routing_subcircuit(layout: QramLayout) -> Circuit:
    """Upper tree from the ancilla over IA bits, lower tree from RFQ over SA bits"""
    gates, _, _ = _routing(layout)
    return Circuit(layout.num_qubits, gates)


def build_rw_subcircuit(layout: QramLayout) -> Circuit:
    """
    Read and write paths

    Read: MCX{leaf+, cell+, RW-} -> Readout. Write: MCX{leaf+, RW+, DQ+} -> cell.
    """
    circuit = Circuit(layout.num_qubits)
    pairs = [(leaf, layout.cell_qubit(location))
             for location, leaf in routing_leaves(layout).items()]
    for leaf, cell in pairs:
        circuit.append(mcx_gate(layout.readout, positive=[leaf, cell], negative=[layout.rw]))
    for leaf, cell in pairs:
        circuit.append(mcx_gate(cell, positive=[leaf, layout.rw, layout.dq]))
    return circuit


def _preparation(layout: QramLayout, uniform_address: bool,
                 uniform_memory: bool = False) -> Circuit:
    circuit = Circuit(layout.num_qubits)
    if uniform_address:
        circuit.extend(h_gate(q) for q in layout.address)
    if uniform_memory:
        circuit.extend(h_gate(q) for q in layout.memory + layout.spare_memory)
    return circuit


def build_query_circuit(layout: QramLayout, fat: FaultAddressTable,
                        uniform_address: bool = False) -> Circuit:
    """Preparation, repair, routing and read/write as one circuit"""
    return compose(layout.num_qubits, [
        _preparation(layout, uniform_address),
        build_repair_subcircuit(layout, fat),
        build_routing_subcircuit(layout),
        build_rw_subcircuit(layout),
    ])


@dataclass
class QueryOutcome:
    """Exact results of one query"""
    readout_distribution: Dict[int, float]
    address_distribution: Dict[int, float]
    conditional_readout: Dict[int, float]
    repair_flags: Dict[int, float]
    post_memory: Optional[Tuple[int, ...]]
    state: QubitState = field(repr=False)


def _initial_bits(layout: QramLayout, memory: Sequence[int], address: Optional[int],
                  write: bool, dq: int) -> str:
    bits = [0] * layout.num_qubits
    for q, value in zip(layout.memory + layout.spare_memory, memory):
        bits[q] = value
    bits[layout.one_ancilla] = 1
    bits[layout.rw] = int(write)
    bits[layout.dq] = dq
    if address is not None:
        for b, q in enumerate(layout.address):
            bits[q] = (address >> b) & 1
    return ''.join(str(bits[q]) for q in reversed(range(layout.num_qubits)))


def _address_assignment(layout: QramLayout, a: int) -> Dict[int, int]:
    return {q: (a >> b) & 1 for b, q in enumerate(layout.address)}


def _per_address(state: QubitState, layout: QramLayout, addresses: Sequence[int],
                 qubit: int) -> Tuple[Dict[int, float], Dict[int, float]]:
    """Address marginals and P(qubit = 1 | address) on addresses with support"""
    marginals = {}
    conditional = {}
    for a in addresses:
        assignment = _address_assignment(layout, a)
        p_a = marginal_probability(state, assignment)
        marginals[a] = p_a
        if p_a > PROBABILITY_TOLERANCE:
            conditional[a] = marginal_probability(state, {**assignment, qubit: 1}) / p_a
    return marginals, conditional


def run_query(layout: QramLayout, memory: Sequence[int], fat: FaultAddressTable,
              address: Union[int, str], mode: str = READ, dq: int = 0) -> QueryOutcome:
    """
    Simulate one query end to end

    Args:
        layout: Register map
        memory: N original then X spare cell bits; spares hold the data of
            the addresses they replace
        fat: Fault address table
        address: Basis address or UNIFORM for an equal superposition
        mode: READ or WRITE
        dq: Data bit for writes

    Returns:
        QueryOutcome; repair_flags are taken after the repair stage, before
        routing consumes RFQ as a leaf
    """
    memory = tuple(int(b) for b in memory)
    expected = layout.num_logical + layout.spare_count
    if len(memory) != expected:
        raise ValueError(f"Memory needs {expected} bits, got {len(memory)}")
    if set(memory) - {0, 1} or dq not in (0, 1):
        raise ValueError("Memory contents and DQ must be bits")
    if mode not in (READ, WRITE):
        raise ValueError(f"Mode must be '{READ}' or '{WRITE}', got {mode!r}")

    uniform = address == UNIFORM
    if not uniform:
        address = int(address)
        if not 0 <= address < layout.num_logical:
            raise ValueError(f"Address {address} outside the {layout.address_bits}-bit space")

    state = new_state(_initial_bits(layout, memory, None if uniform else address,
                                    mode == WRITE, dq))
    run(state, _preparation(layout, uniform))
    run(state, build_repair_subcircuit(layout, fat))

    addresses = range(layout.num_logical)
    _, repair_flags = _per_address(state, layout, addresses, layout.rfq)

    run(state, build_routing_subcircuit(layout))
    run(state, build_rw_subcircuit(layout))

    address_distribution, conditional = _per_address(state, layout, addresses, layout.readout)
    p_one = marginal_probability(state, {layout.readout: 1})

    post_memory = None
    support = state.support()
    if support.size == 1:
        index = int(support[0])
        post_memory = tuple((index >> q) & 1 for q in layout.memory + layout.spare_memory)

    return QueryOutcome(
        readout_distribution={0: 1.0 - p_one, 1: p_one},
        address_distribution=address_distribution,
        conditional_readout=conditional,
        repair_flags=repair_flags,
        post_memory=post_memory,
        state=state,
    )


# ---------------------------------------------------------------------------
# Exhaustive verification
# ---------------------------------------------------------------------------

@dataclass
class VerificationReport:
    """Case totals of one exhaustive check"""
    address_bits: int
    spare_count: int
    tables: int
    cases: int = 0
    passed: int = 0
    failed: int = 0
    counterexample: Optional[dict] = None

    @property
    def ok(self) -> bool:
        return self.failed == 0


def fat_configurations(n: int, X: int) -> List[FaultAddressTable]:
    """
    Every distinct table build_fat can produce with 0..X faulty originals

    Broken spares are enumerated too so that tables skipping a spare appear.
    """
    N = 1 << n
    seen = set()
    tables = []
    for broken in range(X + 1):
        for broken_spares in itertools.combinations(range(X), broken):
            for faulty in range(X - broken + 1):
                for originals in itertools.combinations(range(N), faulty):
                    fat = build_fat(DefectMap(n, originals, broken_spares), X)
                    if fat.entries not in seen:
                        seen.add(fat.entries)
                        tables.append(fat)
    return tables


def _modes() -> Iterator[Tuple[str, int]]:
    yield READ, 0
    yield WRITE, 0
    yield WRITE, 1


def _expected_index(layout: QramLayout, leaves: Dict, fat: FaultAddressTable, a: int,
                    mode: str, dq: int, contents: Sequence[int]) -> Tuple[int, int]:
    """Basis index the circuit must map (a, contents) to, plus the expected readout"""
    location, faulty = translate_address(fat, a)
    cells = layout.memory + layout.spare_memory
    target = layout.cell_qubit(location)
    post = list(contents)
    readout = 0
    if mode == READ:
        readout = post[cells.index(target)]
    else:
        post[cells.index(target)] ^= dq

    index = 0
    for b, q in enumerate(layout.address):
        index |= ((a >> b) & 1) << q
    if faulty:
        for k, q in enumerate(layout.spare_address):
            index |= ((location.index >> k) & 1) << q
    index |= 1 << leaves[location]
    for q, bit in zip(cells, post):
        index |= bit << q
    index |= dq << layout.dq
    index |= int(mode == WRITE) << layout.rw
    index |= readout << layout.readout
    return index, readout


def _verify_case(layout: QramLayout, fat: FaultAddressTable, a: int, mode: str, dq: int,
                 repair: Circuit, routing: Circuit, rw: Circuit,
                 leaves: Dict) -> Tuple[int, int, Optional[dict]]:
    """
    One run with every memory content in equal superposition

    The query is a permutation of basis states, so each content branch keeps
    amplitude 2^-(N+X)/2 and must land on its classically expected index.
    """
    cells = len(layout.memory) + len(layout.spare_memory)
    state = new_state(_initial_bits(layout, (0,) * cells, a, mode == WRITE, dq))
    run(state, _preparation(layout, uniform_address=False, uniform_memory=True))
    run(state, repair)
    run(state, routing)
    run(state, rw)

    amplitude = 2.0 ** (-cells / 2)
    passed = failed = 0
    first = None
    for contents in itertools.product((0, 1), repeat=cells):
        index, readout = _expected_index(layout, leaves, fat, a, mode, dq, contents)
        observed = state.amplitudes[index]
        if abs(observed - amplitude) <= PROBABILITY_TOLERANCE:
            passed += 1
            continue
        failed += 1
        if first is None:
            first = {
                'fat': fat_to_text(fat).strip() or '(empty)',
                'address': format(a, f'0{layout.address_bits}b'),
                'mode': mode,
                'dq': dq,
                'memory': ''.join(str(b) for b in contents),
                'expected_location': str(translate_address(fat, a)[0]),
                'expected_readout': readout,
                'probability_at_expected': float(abs(observed) ** 2 / amplitude ** 2),
            }
    return passed, failed, first


def verify_against_classical(n: int, X: int, repair_builder=None, strict: bool = True,
                             threads: Optional[int] = None) -> VerificationReport:
    """
    Check the circuit against translate_address plus array access

    Covers every memory content, every table from fat_configurations, every
    basis address and the modes read, write DQ=0 and write DQ=1.

    Args:
        n: Address bits, at most 2
        X: Spares, at most 2
        repair_builder: Replacement for build_repair_subcircuit
        strict: Raise on the first failing configuration set instead of
            returning the report
        threads: Worker threads (None reads QRAM_THREADS)

    Returns:
        VerificationReport

    Raises:
        VerificationFailed: strict and at least one case disagreed
    """
    if not 1 <= n <= MAX_VERIFY_ADDRESS_BITS or not 0 <= X <= MAX_VERIFY_SPARES:
        raise ValueError(f"Exhaustive verification covers n <= {MAX_VERIFY_ADDRESS_BITS} "
                         f"and X <= {MAX_VERIFY_SPARES}, got n={n}, X={X}")
    builder = repair_builder or build_repair_subcircuit
    layout = build_layout(n, X)
    leaves = routing_leaves(layout)
    routing = build_routing_subcircuit(layout)
    rw = build_rw_subcircuit(layout)
    tables = fat_configurations(n, X)
    report = VerificationReport(n, X, len(tables))

    jobs = [(fat, builder(layout, fat), a, mode, dq)
            for fat in tables
            for a in range(layout.num_logical)
            for mode, dq in _modes()]
    logger.info("Verifying n=%d X=%d: %d table(s), %d run(s)", n, X, len(tables), len(jobs))

    def _job(job):
        fat, repair, a, mode, dq = job
        return _verify_case(layout, fat, a, mode, dq, repair, routing, rw, leaves)

    workers = resolve_threads(threads)
    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(_job, jobs))
    else:
        results = [_job(job) for job in jobs]

    for passed, failed, first in results:
        report.passed += passed
        report.failed += failed
        if first is not None and report.counterexample is None:
            report.counterexample = first
    report.cases = report.passed + report.failed

    if report.failed:
        logger.warning("Verification n=%d X=%d: %d of %d case(s) failed",
                       n, X, report.failed, report.cases)
        if strict:
            raise VerificationFailed(
                f"Circuit disagrees with the classical oracle in {report.failed} case(s)",
                report.counterexample)
    return report
