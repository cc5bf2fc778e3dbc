"""
Charts module for the qRAM workbench
"""

from .manager import (
    CHART_TYPES,
    create_visualisation,
    set_professional_style,
)
from .constants import PROFESSIONAL_COLORS
from .yield_line_chart import generate_yield_line_chart
from .yield_heatmap import generate_yield_heatmap
from .improvement_chart import generate_improvement_chart

__all__ = ['CHART_TYPES',
           'create_visualisation',
           'PROFESSIONAL_COLORS',
           'set_professional_style',
           'generate_yield_line_chart',
           'generate_yield_heatmap',
           'generate_improvement_chart',
]
