"""
Visualization package for the qRAM workbench
"""

from .charts import CHART_TYPES, create_visualisation

__all__ = ['CHART_TYPES', 'create_visualisation']
