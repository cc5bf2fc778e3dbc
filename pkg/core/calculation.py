"""
Yield and overhead calculation functions for the qRAM workbench
"""

import math
from typing import Iterable, Optional


def calculate_yield_pct(defective: int, fabricated: int) -> float:
    """
    Calculate chip yield

    Args:
        defective: Chips left with an unrepaired defective logical qubit
        fabricated: Chips fabricated

    Returns:
        (1 - defective / fabricated) * 100
    """
    if fabricated <= 0:
        raise ValueError("Fabricated chip count must be positive")
    if not 0 <= defective <= fabricated:
        raise ValueError(f"Defective count {defective} outside 0..{fabricated}")
    return (1.0 - defective / fabricated) * 100.0


def calculate_improvement(repaired_pct: float, unrepaired_pcts: Iterable[float]) -> float:
    """
    Calculate the yield improvement of repair in percentage points

    Args:
        repaired_pct: Yield of the repaired design
        unrepaired_pcts: Yields of the unrepaired designs being averaged

    Returns:
        repaired_pct minus the mean of unrepaired_pcts
    """
    values = list(unrepaired_pcts)
    if not values:
        raise ValueError("At least one unrepaired yield is needed")
    return repaired_pct - sum(values) / len(values)


def calculate_overhead_pct(value: float, baseline: float) -> float:
    """
    Calculate relative overhead over a baseline

    Args:
        value: Measured count
        baseline: Reference count

    Returns:
        100 * (value - baseline) / baseline
    """
    if baseline <= 0:
        raise ValueError("Baseline must be positive")
    return 100.0 * (value - baseline) / baseline


def calculate_binomial_stderr_pct(yield_pct: float, total_chips: int) -> float:
    """Standard error of a yield estimated from total_chips independent chips"""
    y = yield_pct / 100.0
    return math.sqrt(max(y * (1.0 - y), 0.0) / total_chips) * 100.0


def within_oracle_band(measured_pct: float, oracle_pct: float, total_chips: int,
                       sigmas: float = 4.0, floor_pct: Optional[float] = None) -> bool:
    """
    Check a Monte-Carlo yield against the analytic value

    Args:
        measured_pct: Monte-Carlo yield
        oracle_pct: Analytic yield
        total_chips: Chips behind the measurement
        sigmas: Allowed deviation in standard errors
        floor_pct: Minimum band width, for oracle values at 0 or 100

    Returns:
        True when |measured - oracle| <= sigmas * stderr
    """
    band = sigmas * calculate_binomial_stderr_pct(oracle_pct, total_chips)
    if floor_pct is not None:
        band = max(band, floor_pct)
    return abs(measured_pct - oracle_pct) <= band
