"""
Unit tests for the repaired qRAM circuit
"""

import unittest
import sys
from pathlib import Path
from unittest import mock

# Add parent directory to path to import package
sys.path.append(str(Path(__file__).parent.parent))

from core import qram_circuit
from core.errors import CapacityExceeded, InvalidFat, VerificationFailed
from core.qram_circuit import (
    READ, UNIFORM, WRITE, build_layout, build_query_circuit, build_repair_subcircuit,
    build_routing_subcircuit, build_rw_subcircuit, fat_configurations, layout_size,
    routing_leaves, run_query, verify_against_classical
)
from core.repair import DefectMap, FaultAddressTable, SpareId, build_fat, translate_address
from core.statevec import Circuit, GateKind, marginal_probability, mcx_gate, new_state, run


def _basis_state(layout, address, extra=None):
    """Address loaded, ancilla at |1>, everything else |0> unless listed in extra"""
    bits = [0] * layout.num_qubits
    bits[layout.one_ancilla] = 1
    for b, q in enumerate(layout.address):
        bits[q] = (address >> b) & 1
    for q, value in (extra or {}).items():
        bits[q] = value
    return new_state(''.join(str(bits[q]) for q in reversed(range(layout.num_qubits))))


class TestLayout(unittest.TestCase):
    """Test register allocation"""

    def test_sizes(self):
        self.assertEqual(build_layout(2, 2).num_qubits, 19)
        self.assertEqual(build_layout(1, 0).num_qubits, 9)
        self.assertEqual(build_layout(3, 0).num_qubits, 23)
        self.assertEqual(layout_size(2, 2), 19)

    def test_registers_are_disjoint_and_dense(self):
        for n, x in ((1, 0), (1, 2), (2, 1), (2, 4), (3, 0)):
            layout = build_layout(n, x)
            qubits = [q for register in layout.registers().values() for q in register]
            self.assertEqual(sorted(qubits), list(range(layout.num_qubits)))

    def test_empty_spare_registers(self):
        layout = build_layout(1, 0)
        self.assertEqual(layout.spare_address, ())
        self.assertEqual(layout.spare_memory, ())
        self.assertEqual(layout.lower_nodes, ())

    def test_capacity_and_bounds(self):
        with self.assertRaises(CapacityExceeded):
            build_layout(3, 1)
        with self.assertRaises(CapacityExceeded):
            build_layout(3, 8)
        for n, x in ((0, 0), (4, 0), (2, 5), (2, -1)):
            with self.assertRaises(ValueError):
                build_layout(n, x)


class TestRepairSubcircuit(unittest.TestCase):
    """Test the repair oracle truth table"""

    def setUp(self):
        """Set up test fixtures"""
        self.layout = build_layout(2, 2)

    def _run_repair(self, fat, address):
        state = _basis_state(self.layout, address)
        return run(state, build_repair_subcircuit(self.layout, fat))

    def test_truth_table(self):
        layout = self.layout
        for fat in fat_configurations(2, 2):
            for a in range(4):
                state = self._run_repair(fat, a)
                location, flag = translate_address(fat, a)
                code = location.index if flag else 0
                expected = {layout.rfq: int(flag), layout.one_ancilla: 1 - int(flag)}
                for b, q in enumerate(layout.address):
                    expected[q] = (a >> b) & 1
                for k, q in enumerate(layout.spare_address):
                    expected[q] = (code >> k) & 1
                self.assertAlmostEqual(marginal_probability(state, expected), 1.0,
                                       msg=f"table={fat.entries} a={a}")

    def test_empty_table_only_copies_flag(self):
        circuit = build_repair_subcircuit(self.layout, FaultAddressTable(2))
        self.assertEqual(len(circuit), 1)
        state = self._run_repair(FaultAddressTable(2), 2)
        self.assertEqual(marginal_probability(state, {self.layout.one_ancilla: 1}), 1.0)

    def test_table_must_fit_layout(self):
        with self.assertRaises(InvalidFat):
            build_repair_subcircuit(self.layout, FaultAddressTable(3))
        with self.assertRaises(InvalidFat):
            build_repair_subcircuit(self.layout, FaultAddressTable(2, ((1, SpareId(2)),)))
        with self.assertRaises(InvalidFat):
            build_repair_subcircuit(build_layout(2, 0), build_fat(DefectMap(2, (1,)), 1))


class TestRouting(unittest.TestCase):
    """Test the routing trees"""

    def test_single_bit_tree(self):
        """n=1 without spares: one split of the ancilla"""
        layout = build_layout(1, 0)
        circuit = build_routing_subcircuit(layout)
        self.assertEqual(len(circuit), 2)
        self.assertEqual(routing_leaves(layout), {0: layout.upper_nodes[0], 1: layout.one_ancilla})

    def test_leaves_are_distinct(self):
        for n, x in ((1, 1), (2, 2), (2, 3), (2, 4), (3, 0)):
            leaves = routing_leaves(build_layout(n, x))
            self.assertEqual(len(leaves), (1 << n) + x)
            self.assertEqual(len(set(leaves.values())), (1 << n) + x)

    def test_one_hot_after_routing(self):
        """Exactly the translated location's leaf is |1> in every basis branch"""
        for n, x in ((1, 2), (2, 2)):
            layout = build_layout(n, x)
            leaves = routing_leaves(layout)
            routing = build_routing_subcircuit(layout)
            for fat in fat_configurations(n, x):
                repair = build_repair_subcircuit(layout, fat)
                for a in range(layout.num_logical):
                    state = _basis_state(layout, a)
                    run(state, repair)
                    run(state, routing)
                    location, _ = translate_address(fat, a)
                    expected = {q: int(key == location) for key, q in leaves.items()}
                    self.assertAlmostEqual(marginal_probability(state, expected), 1.0)


class TestReadWrite(unittest.TestCase):
    """Test the read and write paths"""

    def setUp(self):
        """Set up test fixtures"""
        self.layout = build_layout(1, 0)
        self.circuit = build_rw_subcircuit(self.layout)

    def test_gate_structure(self):
        self.assertEqual(len(self.circuit), 4)
        self.assertTrue(all(g.kind is GateKind.MCX and len(g.controls) == 3 for g in self.circuit))

    def test_read_flips_readout_when_cell_holds_one(self):
        layout = self.layout
        leaf = routing_leaves(layout)[0]
        for cell_bit in (0, 1):
            state = _basis_state(layout, 0, {leaf: 1, layout.memory[0]: cell_bit,
                                             layout.one_ancilla: 0})
            run(state, self.circuit)
            self.assertEqual(marginal_probability(state, {layout.readout: cell_bit}), 1.0)

    def test_write_xors_data(self):
        layout = self.layout
        leaf = routing_leaves(layout)[0]
        state = _basis_state(layout, 0, {leaf: 1, layout.rw: 1, layout.dq: 1,
                                         layout.one_ancilla: 0})
        run(state, self.circuit)
        self.assertEqual(marginal_probability(state, {layout.memory[0]: 1, layout.readout: 0}),
                         1.0)


class TestRunQuery(unittest.TestCase):
    """Test end-to-end queries"""

    def setUp(self):
        """Set up test fixtures"""
        self.layout = build_layout(2, 2)
        self.fat = build_fat(DefectMap(2, (2,)), 2)
        # Original cell 10 is broken and reads 0; spare 0 holds its data
        self.memory = [1, 0, 0, 1] + [1, 0]

    def test_basis_read_uses_spare(self):
        outcome = run_query(self.layout, self.memory, self.fat, 2)
        self.assertAlmostEqual(outcome.readout_distribution[1], 1.0, places=9)
        self.assertAlmostEqual(outcome.repair_flags[2], 1.0, places=9)

    def test_basis_read_healthy_cell(self):
        outcome = run_query(self.layout, self.memory, self.fat, 1)
        self.assertAlmostEqual(outcome.readout_distribution[0], 1.0, places=9)
        self.assertAlmostEqual(outcome.repair_flags[1], 0.0, places=9)
        self.assertEqual(outcome.post_memory, tuple(self.memory))

    def test_uniform_read(self):
        outcome = run_query(self.layout, self.memory, self.fat, UNIFORM)
        cells = self.layout.memory + self.layout.spare_memory
        for a in range(4):
            self.assertAlmostEqual(outcome.address_distribution[a], 0.25, places=9)
            location, faulty = translate_address(self.fat, a)
            expected = self.memory[cells.index(self.layout.cell_qubit(location))]
            self.assertAlmostEqual(outcome.conditional_readout[a], expected, places=9)
            self.assertAlmostEqual(outcome.repair_flags[a], float(faulty), places=9)
        self.assertAlmostEqual(sum(outcome.readout_distribution.values()), 1.0, places=9)
        self.assertAlmostEqual(outcome.state.norm(), 1.0, places=10)
        self.assertIsNone(outcome.post_memory)

    def test_basis_write(self):
        memory = [1, 0, 0, 1, 0, 0]
        outcome = run_query(self.layout, memory, self.fat, 1, WRITE, dq=1)
        self.assertEqual(outcome.post_memory, (1, 1, 0, 1, 0, 0))

    def test_write_to_faulty_address_lands_in_spare(self):
        outcome = run_query(self.layout, self.memory, self.fat, 2, WRITE, dq=1)
        self.assertEqual(outcome.post_memory, (1, 0, 0, 1, 0, 0))

    def test_write_then_read_round_trip(self):
        memory = [0] * 6
        for a in range(4):
            written = run_query(self.layout, memory, self.fat, a, WRITE, dq=1).post_memory
            outcome = run_query(self.layout, written, self.fat, a, READ)
            self.assertAlmostEqual(outcome.readout_distribution[1], 1.0, places=9)

    def test_input_validation(self):
        with self.assertRaises(ValueError):
            run_query(self.layout, [0] * 5, self.fat, 0)
        with self.assertRaises(ValueError):
            run_query(self.layout, [0] * 6, self.fat, 4)
        with self.assertRaises(ValueError):
            run_query(self.layout, [0] * 6, self.fat, 0, 'erase')
        with self.assertRaises(ValueError):
            run_query(self.layout, [2] + [0] * 5, self.fat, 0)

    def test_query_circuit_gate_set(self):
        circuit = build_query_circuit(self.layout, self.fat, uniform_address=True)
        kinds = {g.kind for g in circuit}
        self.assertTrue(kinds <= {GateKind.H, GateKind.MCX})
        self.assertEqual(sum(g.kind is GateKind.H for g in circuit), 2)


class TestVerification(unittest.TestCase):
    """Test exhaustive verification against the classical oracle"""

    def test_fat_configurations(self):
        self.assertEqual(len(fat_configurations(1, 0)), 1)
        self.assertEqual(len(fat_configurations(2, 2)), 15)
        for fat in fat_configurations(2, 2):
            self.assertLessEqual(len(fat), 2)

    def test_plain_bucket_brigade(self):
        report = verify_against_classical(1, 0)
        self.assertTrue(report.ok)
        self.assertEqual(report.tables, 1)
        # 2 addresses x 3 modes x 4 memory contents
        self.assertEqual(report.cases, 24)

    def test_small_repaired_layouts(self):
        for n, x in ((1, 1), (2, 1)):
            report = verify_against_classical(n, x)
            self.assertTrue(report.ok, msg=f"n={n} X={x}")
            self.assertEqual(report.passed, report.cases)

    def test_two_spares_with_threads(self):
        report = verify_against_classical(2, 2, threads=2)
        self.assertTrue(report.ok)
        self.assertEqual(report.tables, 15)
        self.assertEqual(report.cases, 15 * 4 * 3 * 64)

    def test_out_of_scope(self):
        with self.assertRaises(ValueError):
            verify_against_classical(3, 0)
        with self.assertRaises(ValueError):
            verify_against_classical(2, 3)

    def test_broken_oracle_is_caught(self):
        """A repair oracle that forgets the spare code must fail"""
        def forgetful(layout, fat):
            circuit = Circuit(layout.num_qubits)
            for fa, _ in fat.entries:
                positive = [q for b, q in enumerate(layout.address) if (fa >> b) & 1]
                negative = [q for b, q in enumerate(layout.address) if not (fa >> b) & 1]
                circuit.append(mcx_gate(layout.rfq, positive, negative))
            circuit.append(mcx_gate(layout.one_ancilla, positive=[layout.rfq]))
            return circuit

        report = verify_against_classical(2, 2, repair_builder=forgetful, strict=False)
        self.assertFalse(report.ok)
        self.assertIsNotNone(report.counterexample)
        with self.assertRaises(VerificationFailed) as ctx:
            verify_against_classical(2, 2, repair_builder=forgetful)
        self.assertIn('address', ctx.exception.counterexample)

    def test_patched_default_builder_is_used(self):
        def no_repair(layout, fat):
            return Circuit(layout.num_qubits, [mcx_gate(layout.one_ancilla, positive=[layout.rfq])])

        with mock.patch.object(qram_circuit, 'build_repair_subcircuit', no_repair):
            report = verify_against_classical(1, 1, strict=False)
        self.assertFalse(report.ok)


if __name__ == '__main__':
    unittest.main()
