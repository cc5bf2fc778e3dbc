"""
Data schemas for the qRAM workbench
"""

from typing import List


class YieldSchema:
    """Schema for yield sweep rows"""
    QEC_DISTANCE = 'qec_distance'
    NUM_LOGICAL = 'num_logical'
    NUM_SPARES = 'num_spares'
    ERROR_RATE = 'error_rate'
    CHIPS_PER_REP = 'chips_per_rep'
    REPS = 'reps'
    YIELD_MEAN_PCT = 'yield_mean_pct'
    YIELD_STD_PCT = 'yield_std_pct'
    ANALYTIC_PCT = 'analytic_pct'
    SEED = 'seed'

    @classmethod
    def get_columns(cls) -> List[str]:
        """Return all column names"""
        return [cls.QEC_DISTANCE, cls.NUM_LOGICAL, cls.NUM_SPARES,
                cls.ERROR_RATE, cls.CHIPS_PER_REP, cls.REPS,
                cls.YIELD_MEAN_PCT, cls.YIELD_STD_PCT, cls.ANALYTIC_PCT,
                cls.SEED]

    @classmethod
    def get_percentage_columns(cls) -> List[str]:
        """Columns printed with two decimals"""
        return [cls.YIELD_MEAN_PCT, cls.YIELD_STD_PCT, cls.ANALYTIC_PCT]

    @classmethod
    def get_probability_columns(cls) -> List[str]:
        """Columns printed with six decimals"""
        return [cls.ERROR_RATE]


class ResourceSchema:
    """Schema for physical-qubit resource rows"""
    QEC_DISTANCE = 'qec_distance'
    NUM_LOGICAL = 'num_logical'
    NUM_SPARES = 'num_spares'
    MEM_QUBITS = 'mem_qubits'
    PERI_QUBITS = 'peri_qubits'
    TOTAL_QUBITS = 'total_qubits'
    MEM_OVERHEAD_PCT = 'mem_overhead_pct'
    PERI_OVERHEAD_PCT = 'peri_overhead_pct'

    @classmethod
    def get_columns(cls) -> List[str]:
        """Return all column names"""
        return [cls.QEC_DISTANCE, cls.NUM_LOGICAL, cls.NUM_SPARES,
                cls.MEM_QUBITS, cls.PERI_QUBITS, cls.TOTAL_QUBITS,
                cls.MEM_OVERHEAD_PCT, cls.PERI_OVERHEAD_PCT]

    @classmethod
    def get_percentage_columns(cls) -> List[str]:
        """Columns printed with two decimals"""
        return [cls.MEM_OVERHEAD_PCT, cls.PERI_OVERHEAD_PCT]

    @classmethod
    def get_probability_columns(cls) -> List[str]:
        """Resource rows carry no probabilities"""
        return []


class ResourceComparisonSchema(ResourceSchema):
    """Resource rows with the literal d*(N+X) memory count appended"""
    MEM_QUBITS_LITERAL = 'mem_qubits_literal'

    @classmethod
    def get_columns(cls) -> List[str]:
        """Return all column names"""
        return ResourceSchema.get_columns() + [cls.MEM_QUBITS_LITERAL]


class ImprovementSchema:
    """Schema for the average-improvement series"""
    NUM_LOGICAL = 'num_logical'
    ERROR_RATE = 'error_rate'
    REPAIRED_PCT = 'repaired_pct'
    UNREPAIRED_MEAN_PCT = 'unrepaired_mean_pct'
    IMPROVEMENT_PCT = 'improvement_pct'

    @classmethod
    def get_columns(cls) -> List[str]:
        """Return all column names"""
        return [cls.NUM_LOGICAL, cls.ERROR_RATE, cls.REPAIRED_PCT,
                cls.UNREPAIRED_MEAN_PCT, cls.IMPROVEMENT_PCT]

    @classmethod
    def get_percentage_columns(cls) -> List[str]:
        """Columns printed with two decimals"""
        return [cls.REPAIRED_PCT, cls.UNREPAIRED_MEAN_PCT, cls.IMPROVEMENT_PCT]

    @classmethod
    def get_probability_columns(cls) -> List[str]:
        """Columns printed with six decimals"""
        return [cls.ERROR_RATE]
