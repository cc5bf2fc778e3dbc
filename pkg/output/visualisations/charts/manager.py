"""
Main chart management functions for the qRAM workbench
"""

import logging
from typing import Optional

import matplotlib

matplotlib.use('Agg')

import matplotlib.pyplot as plt  # noqa: E402
import pandas as pd  # noqa: E402
import seaborn as sns  # noqa: E402

from utils.helpers import ensure_parent_directory  # noqa: E402
from .constants import PROFESSIONAL_COLORS  # noqa: E402
from .improvement_chart import generate_improvement_chart  # noqa: E402
from .yield_heatmap import generate_yield_heatmap  # noqa: E402
from .yield_line_chart import generate_yield_line_chart  # noqa: E402

logger = logging.getLogger(__name__)

CHART_TYPES = ('yield_line', 'yield_heatmap', 'improvement')


def set_professional_style():
    """Configure matplotlib for professional/academic visualisations"""
    plt.rcParams.update({
        'font.family': 'serif',
        'font.serif': ['Times New Roman', 'DejaVu Serif', 'Liberation Serif'],
        'font.size': 10,
        'axes.titlesize': 12,
        'axes.labelsize': 10,
        'xtick.labelsize': 9,
        'ytick.labelsize': 9,
        'legend.fontsize': 9,
        'figure.titlesize': 14,
        'figure.figsize': (8, 6),
        'figure.dpi': 100,
        'axes.grid': True,
        'grid.alpha': 0.3,
        'axes.axisbelow': True,
        'axes.spines.top': False,
        'axes.spines.right': False,
        'svg.fonttype': 'none',
        'svg.hashsalt': 'qram-workbench',
    })

    sns.set_style("whitegrid")
    sns.set_palette(PROFESSIONAL_COLORS)


def create_visualisation(chart_type: str, data: pd.DataFrame,
                         output_path: str) -> Optional[pd.DataFrame]:
    """
    Create one chart and save it

    Args:
        chart_type: One of CHART_TYPES
        data: Yield-schema rows for the yield charts, improvement rows otherwise
        output_path: File to save; the extension selects SVG or PNG

    Returns:
        The data the chart plotted, or None if the type is unknown
    """
    all_charts = {
        'yield_line': lambda: generate_yield_line_chart(data, output_path),
        'yield_heatmap': lambda: generate_yield_heatmap(data, output_path),
        'improvement': lambda: generate_improvement_chart(data, output_path),
    }

    if chart_type not in all_charts:
        logger.warning("Chart type '%s' not recognized", chart_type)
        return None

    ensure_parent_directory(output_path)
    set_professional_style()
    logger.info("Generating %s chart...", chart_type)
    return all_charts[chart_type]()
