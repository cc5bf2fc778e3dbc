"""
Yield versus memory size line chart for the qRAM workbench
"""

import logging

import matplotlib.pyplot as plt
import pandas as pd
from matplotlib.ticker import FuncFormatter

from core.aggregation import SERIES_COLUMN, aggregate_by_series
from core.errors import NotPowerOfTwo
from core.resource_model import overhead
from core.schema import YieldSchema
from .constants import (
    PROFESSIONAL_COLORS, QUBITS_GID, YIELD_GID, percent_formatter, qubit_formatter, value_gid
)

logger = logging.getLogger(__name__)


def _physical_qubits(distance: int, num_logical: int, spares: int):
    try:
        return overhead(distance, num_logical, spares).total
    except NotPowerOfTwo:
        return None


def generate_yield_line_chart(yield_data: pd.DataFrame, output_path: str,
                              show_qubits: bool = True) -> pd.DataFrame:
    """
    Generate a line chart of yield against the number of logical qubits

    One line per (distance, spares) series; the right axis shows the total
    physical qubits of each design as dashed lines. Every marker carries its
    value in the SVG element id.

    Args:
        yield_data: DataFrame in the yield schema
        output_path: File to save (format from the extension)
        show_qubits: Draw the physical-qubit axis

    Returns:
        DataFrame with the plotted series
    """
    series_data = aggregate_by_series(yield_data)

    fig, ax = plt.subplots(figsize=(10, 6), facecolor='white')
    ax_qubits = ax.twinx() if show_qubits else None

    for i, (label, group) in enumerate(series_data.groupby(SERIES_COLUMN, sort=False)):
        color = PROFESSIONAL_COLORS[i % len(PROFESSIONAL_COLORS)]
        group = group.sort_values(YieldSchema.NUM_LOGICAL)
        sizes = group[YieldSchema.NUM_LOGICAL].tolist()
        yields = group[YieldSchema.YIELD_MEAN_PCT].tolist()

        ax.plot(sizes, yields, color=color, linewidth=2, label=label)
        for n, y in zip(sizes, yields):
            ax.plot([n], [y], linestyle='none', marker='o', markersize=5,
                    markerfacecolor='white', markeredgecolor=color, markeredgewidth=1.5,
                    gid=value_gid(YIELD_GID, label, n, y))

        if ax_qubits is None:
            continue
        distance = int(group[YieldSchema.QEC_DISTANCE].iloc[0])
        spares = int(group[YieldSchema.NUM_SPARES].iloc[0])
        points = [(n, _physical_qubits(distance, n, spares)) for n in sizes]
        points = [(n, q) for n, q in points if q is not None]
        if not points:
            continue
        ax_qubits.plot([n for n, _ in points], [q for _, q in points], color=color,
                       linewidth=1, linestyle='--', alpha=0.7)
        for n, q in points:
            ax_qubits.plot([n], [q], linestyle='none', marker='s', markersize=3, color=color,
                           alpha=0.7, gid=value_gid(QUBITS_GID, label, n, q))

    ax.set_xscale('log', base=2)
    ax.set_ylim(0, 105)
    ax.set_title('Simulated Yield by Memory Size', fontweight='bold', fontsize=14, pad=15)
    ax.set_xlabel('Number of Logical Qubits', fontweight='bold', fontsize=12, labelpad=10)
    ax.set_ylabel('Yield', fontweight='bold', fontsize=12, labelpad=10)
    ax.yaxis.set_major_formatter(FuncFormatter(percent_formatter))
    ax.grid(axis='y', linestyle='--', alpha=0.3)
    ax.legend(loc='lower left', frameon=True, framealpha=0.9, edgecolor='lightgray')

    if ax_qubits is not None:
        ax_qubits.set_ylabel('Physical Qubits', fontweight='bold', fontsize=12, labelpad=10)
        ax_qubits.yaxis.set_major_formatter(FuncFormatter(qubit_formatter))

    plt.tight_layout()
    plt.savefig(output_path, bbox_inches='tight')
    plt.close(fig)
    logger.info("Saved yield chart to %s", output_path)

    return series_data
