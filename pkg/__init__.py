"""
qRAM Repair Workbench package

Monte-Carlo and analytic yield of surface-code qRAM chips with spare-cell
redundancy repair, physical-qubit resource estimates, and a statevector
simulation of the repaired qRAM query circuit.
"""

__version__ = "0.1.0"

# Import core components for easy access
from core.schema import YieldSchema, ResourceSchema, ImprovementSchema
from core.qec_defect import (
    QecParams, FabricationModel, logical_defect_prob, sample_patch
)
from core.yield_engine import (
    ChipSpec, SweepGrid, simulate_yield, analytic_yield,
    sweep, yield_improvement
)
from core.resource_model import (
    mem_qubits, peri_qubits, overhead, additional_qubits
)
from core.repair import (
    DefectMap, FaultAddressTable, build_fat, translate_address
)
from core.qram_circuit import (
    build_layout, build_query_circuit, run_query,
    verify_against_classical
)
from core.ingestion import build_config
from output.csv_export import write_csv
from output.visualisations import create_visualisation
