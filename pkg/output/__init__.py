"""
Output generation modules for the qRAM workbench

This package contains modules for writing CSV tables, Excel workbooks and
charts from yield sweeps and resource estimates.
"""

# Import key functions for easier access
from output.csv_export import format_frame, frame_to_csv_text, write_csv
from output.excel import (
    create_excel_workbook,
    populate_improvement_sheet,
    populate_resource_sheet,
    populate_yield_sheet,
    save_workbook,
)

from output.visualisations import create_visualisation
