"""
Yield heatmap over memory size and error rate for the qRAM workbench
"""

import logging
from typing import Optional

import matplotlib.pyplot as plt
import pandas as pd
import seaborn as sns

from core.aggregation import pivot_yield_grid, series_label
from core.schema import YieldSchema
from .constants import HEATMAP_CMAP, YIELD_GID, value_gid

logger = logging.getLogger(__name__)


def generate_yield_heatmap(yield_data: pd.DataFrame, output_path: str,
                           title: Optional[str] = None) -> Optional[pd.DataFrame]:
    """
    Generate a heatmap of yield with memory sizes as rows and error rates as columns

    Each annotation is its own text element whose id reads
    `yield|<series>@<rate>|<N>|<value>`.

    Args:
        yield_data: DataFrame in the yield schema for one (distance, spares) setting
        output_path: File to save
        title: Chart title; defaults to the series label

    Returns:
        Pivot of the plotted values, or None when there is nothing to plot
    """
    if yield_data.empty:
        logger.warning("Cannot create heatmap: no yield rows")
        return None

    settings = yield_data[[YieldSchema.QEC_DISTANCE, YieldSchema.NUM_SPARES]].drop_duplicates()
    if len(settings) > 1:
        logger.warning("Heatmap mixes %d distance/spare settings; cells show their mean",
                       len(settings))
    distance, spares = (int(v) for v in settings.iloc[0])
    label = series_label(distance, spares)

    pivot = pivot_yield_grid(yield_data)

    fig, ax = plt.subplots(figsize=(10, 7), facecolor='white')
    sns.heatmap(
        pivot,
        ax=ax,
        cmap=HEATMAP_CMAP,
        vmin=0,
        vmax=100,
        annot=False,
        xticklabels=True,
        yticklabels=True,
        linewidths=0.5,
        linecolor='white',
        cbar_kws={'label': 'Yield (%)'},
    )

    for i, n in enumerate(pivot.index):
        for j, rate in enumerate(pivot.columns):
            value = pivot.iloc[i, j]
            if pd.isna(value):
                continue
            ax.text(
                j + 0.5,
                i + 0.5,
                f'{value:.2f}',
                ha='center',
                va='center',
                fontsize=8,
                fontweight='bold',
                color='white' if value < 60 else 'black',
                gid=value_gid(YIELD_GID, f"{label}@{rate:.6f}", int(n), value),
            )

    ax.set_xticklabels([f'{rate * 100:.1f}%' for rate in pivot.columns], rotation=0)
    ax.set_yticklabels([str(int(n)) for n in pivot.index], rotation=0)
    ax.set_title(title or f'Yield of {label}', fontweight='bold', fontsize=14, pad=15)
    ax.set_xlabel('Physical Qubit Error Rate', fontweight='bold', fontsize=12, labelpad=10)
    ax.set_ylabel('Number of Logical Qubits', fontweight='bold', fontsize=12, labelpad=10)

    plt.tight_layout()
    plt.savefig(output_path, bbox_inches='tight')
    plt.close(fig)
    logger.info("Saved yield heatmap to %s", output_path)

    return pivot
