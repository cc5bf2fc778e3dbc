# output/visualisations/charts/constants.py
"""
Constants for chart generation in the qRAM workbench
"""

# Set up styling constants
PROFESSIONAL_COLORS = [
    '#4c72b0',  # blue
    '#55a868',  # green
    '#c44e52',  # red
    '#8172b3',  # purple
    '#ccb974',  # yellow
    '#64b5cd',  # light blue
    '#a9b5ae',  # gray-green
    '#dd8452',  # orange
]

HEATMAP_CMAP = 'viridis'

# Prefixes of the SVG element ids that carry plotted values
YIELD_GID = 'yield'
QUBITS_GID = 'qubits'
IMPROVEMENT_GID = 'improvement'


def percent_formatter(x, pos):
    """Format axis ticks as percentages"""
    return f'{x:.0f}%'


def qubit_formatter(x, pos):
    """Format axis ticks as qubit counts"""
    return f'{x:,.0f}'


def value_gid(prefix: str, series: str, num_logical: int, value: float) -> str:
    """Element id `<prefix>|<series>|<N>|<value>` with the value to two decimals"""
    return f"{prefix}|{series}|{num_logical}|{value:.2f}"
