"""
Physical-qubit resource model of a repaired bucket-brigade qRAM

Memory qubits count every original and spare cell patch; peripheral qubits
count the addressing, routing and read/write logical qubits, all encoded at
the same code distance.
"""

import itertools
import logging
import operator
from dataclasses import dataclass
from typing import List, Sequence

import pandas as pd

from core.errors import NotPowerOfTwo
from core.qec_defect import physical_per_logical
from core.calculation import calculate_overhead_pct
from core.schema import ResourceComparisonSchema, ResourceSchema

logger = logging.getLogger(__name__)

TABLE1_DISTANCES = (3, 5, 7, 9)
TABLE1_LOGICAL_COUNTS = (16, 32, 64, 128, 256, 512, 1024)
TABLE1_SPARE_COUNTS = (0, 1, 2, 4, 8)


@dataclass(frozen=True)
class ResourceBreakdown:
    """Physical-qubit counts of one design and their overhead over X = 0"""
    distance: int
    num_logical: int
    num_spares: int
    mem_qubits: int
    peri_qubits: int
    mem_overhead_pct: float
    peri_overhead_pct: float

    @property
    def total(self) -> int:
        return self.mem_qubits + self.peri_qubits


def _log2_exact(N: int, minimum: int = 2) -> int:
    try:
        value = operator.index(N)
    except TypeError:
        raise NotPowerOfTwo(N, minimum) from None
    if isinstance(N, bool) or value < minimum or value & (value - 1):
        raise NotPowerOfTwo(N, minimum)
    return value.bit_length() - 1


def mem_qubits(d: int, N: int, X: int) -> int:
    """
    Physical qubits in the memory cells: (2d^2 - 1)(N + X)

    Args:
        d: Code distance
        N: Original cells
        X: Spare cells

    Returns:
        Physical qubit count
    """
    if N < 0 or X < 0:
        raise ValueError("Cell counts must be non-negative")
    return physical_per_logical(d) * (N + X)


def mem_qubits_literal(d: int, N: int, X: int) -> int:
    """Literal d * (N + X) reading of the memory equation, for comparison only"""
    physical_per_logical(d)
    return d * (N + X)


def peri_logical_count(N: int, X: int) -> int:
    """
    Peripheral logical qubits

    X = 0 gives log2 N + N + 2 (input address, N - 1 routing nodes, DQ,
    readout, R/W). With repair the spare-address register, repair flag and
    lower routing tree are added: 3 log2 N + N + 4 while X <= 1 + log2 N,
    2 log2 N + N + X + 3 beyond.

    Args:
        N: Original cells, a power of two >= 2
        X: Spare cells

    Returns:
        Logical qubit count
    """
    n = _log2_exact(N)
    if X < 0:
        raise ValueError("Spare count must be non-negative")
    if X == 0:
        return n + N + 2
    if X <= 1 + n:
        return 3 * n + N + 4
    return 2 * n + N + X + 3


def peri_qubits(d: int, N: int, X: int) -> int:
    """Physical qubits in the periphery"""
    return physical_per_logical(d) * peri_logical_count(N, X)


def overhead(d: int, N: int, X: int) -> ResourceBreakdown:
    """
    Counts and overheads relative to the unrepaired design

    Args:
        d: Code distance
        N: Original cells
        X: Spare cells

    Returns:
        ResourceBreakdown
    """
    mem = mem_qubits(d, N, X)
    peri = peri_qubits(d, N, X)
    peri_logical = peri_logical_count(N, X)
    return ResourceBreakdown(
        distance=d,
        num_logical=N,
        num_spares=X,
        mem_qubits=mem,
        peri_qubits=peri,
        mem_overhead_pct=calculate_overhead_pct(N + X, N),
        peri_overhead_pct=calculate_overhead_pct(peri_logical, peri_logical_count(N, 0)),
    )


def additional_qubits(d: int, N: int, X: int) -> int:
    """Physical qubits added by repair on top of the unrepaired design"""
    return overhead(d, N, X).total - overhead(d, N, 0).total


def additional_share_pct(d: int, N: int, X: int) -> float:
    """Repair qubits as a percentage of the unrepaired total"""
    return 100.0 * additional_qubits(d, N, X) / overhead(d, N, 0).total


def resource_rows(distances: Sequence[int], logical_counts: Sequence[int],
                  spare_counts: Sequence[int]) -> List[ResourceBreakdown]:
    """Breakdowns over a grid, in (distance, logical, spares) order"""
    return [overhead(d, n, x)
            for d, n, x in itertools.product(distances, logical_counts, spare_counts)]


def table1() -> List[ResourceBreakdown]:
    """Every row of the resource table: 4 distances x 7 sizes x 5 spare settings"""
    return resource_rows(TABLE1_DISTANCES, TABLE1_LOGICAL_COUNTS, TABLE1_SPARE_COUNTS)


def breakdowns_to_frame(rows: Sequence[ResourceBreakdown],
                        literal_mem: bool = False) -> pd.DataFrame:
    """
    Tabulate breakdowns in the resource CSV schema

    Args:
        rows: Breakdowns
        literal_mem: Append the mem_qubits_literal comparison column

    Returns:
        DataFrame with ResourceSchema (or ResourceComparisonSchema) columns
    """
    frame = pd.DataFrame(
        [{
            ResourceSchema.QEC_DISTANCE: r.distance,
            ResourceSchema.NUM_LOGICAL: r.num_logical,
            ResourceSchema.NUM_SPARES: r.num_spares,
            ResourceSchema.MEM_QUBITS: r.mem_qubits,
            ResourceSchema.PERI_QUBITS: r.peri_qubits,
            ResourceSchema.TOTAL_QUBITS: r.total,
            ResourceSchema.MEM_OVERHEAD_PCT: r.mem_overhead_pct,
            ResourceSchema.PERI_OVERHEAD_PCT: r.peri_overhead_pct,
        } for r in rows],
        columns=ResourceSchema.get_columns(),
    )
    if literal_mem:
        frame[ResourceComparisonSchema.MEM_QUBITS_LITERAL] = [
            mem_qubits_literal(r.distance, r.num_logical, r.num_spares) for r in rows]
    return frame


def table1_frame(literal_mem: bool = False) -> pd.DataFrame:
    """The full resource table as a DataFrame"""
    return breakdowns_to_frame(table1(), literal_mem)
