"""
Average yield improvement bar chart for the qRAM workbench
"""

import logging

import matplotlib.pyplot as plt
import pandas as pd
from matplotlib.ticker import FuncFormatter

from core.schema import ImprovementSchema
from .constants import IMPROVEMENT_GID, PROFESSIONAL_COLORS, percent_formatter, value_gid

logger = logging.getLogger(__name__)


def generate_improvement_chart(improvement_data: pd.DataFrame, output_path: str) -> pd.DataFrame:
    """
    Generate a bar chart of the yield improvement per memory size

    Args:
        improvement_data: DataFrame in the improvement schema
        output_path: File to save

    Returns:
        DataFrame with the plotted rows
    """
    rates = sorted(improvement_data[ImprovementSchema.ERROR_RATE].unique())
    sizes = sorted(improvement_data[ImprovementSchema.NUM_LOGICAL].unique())
    width = 0.8 / max(len(rates), 1)

    fig, ax = plt.subplots(figsize=(12, 6), facecolor='white')

    for i, rate in enumerate(rates):
        rows = improvement_data[improvement_data[ImprovementSchema.ERROR_RATE] == rate]
        rows = rows.set_index(ImprovementSchema.NUM_LOGICAL)
        series = f'p={rate * 100:.1f}%'
        for k, n in enumerate(sizes):
            if n not in rows.index:
                continue
            value = float(rows.loc[n, ImprovementSchema.IMPROVEMENT_PCT])
            bar = ax.bar(
                k + (i - (len(rates) - 1) / 2) * width,
                value,
                width=width,
                color=PROFESSIONAL_COLORS[i % len(PROFESSIONAL_COLORS)],
                edgecolor='white',
                linewidth=0.7,
                label=series if k == 0 else '_nolegend_',
                gid=value_gid(IMPROVEMENT_GID, series, int(n), value),
            )[0]
            ax.text(
                bar.get_x() + bar.get_width() / 2,
                value + 1,
                f'{value:.2f}',
                ha='center',
                va='bottom',
                fontsize=8,
                fontweight='bold',
            )

    ax.set_xticks(range(len(sizes)))
    ax.set_xticklabels([str(int(n)) for n in sizes])
    ax.set_title('Average Yield Improvement from Redundant Repair',
                 fontweight='bold', fontsize=14, pad=15)
    ax.set_xlabel('Number of Logical Qubits', fontweight='bold', fontsize=12, labelpad=10)
    ax.set_ylabel('Improvement (percentage points)', fontweight='bold', fontsize=12, labelpad=10)
    ax.yaxis.set_major_formatter(FuncFormatter(percent_formatter))
    ax.grid(axis='y', linestyle='--', alpha=0.3)
    if len(rates) > 1:
        ax.legend(frameon=True, framealpha=0.9, edgecolor='lightgray')

    plt.tight_layout()
    plt.savefig(output_path, bbox_inches='tight')
    plt.close(fig)
    logger.info("Saved improvement chart to %s", output_path)

    return improvement_data
