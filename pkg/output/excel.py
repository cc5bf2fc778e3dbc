"""
Excel output generation functions for the qRAM workbench
"""

import logging
from typing import Sequence, Type

import pandas as pd
from openpyxl import Workbook
from openpyxl.chart import BarChart, Reference
from openpyxl.formatting.rule import ColorScaleRule
from openpyxl.styles import Alignment, Font, PatternFill
from openpyxl.utils import get_column_letter
from openpyxl.utils.dataframe import dataframe_to_rows

from core.schema import (
    ImprovementSchema, ResourceComparisonSchema, ResourceSchema, YieldSchema
)
from utils.helpers import ensure_parent_directory

logger = logging.getLogger(__name__)

YIELD_SHEET = "Yield Sweep"
RESOURCE_SHEET = "Resources"
IMPROVEMENT_SHEET = "Improvement"

_HEADER_FILL = PatternFill(fgColor="DDEBF7", fill_type="solid")


def create_excel_workbook(sheet_names: Sequence[str]) -> Workbook:
    """
    Create an Excel workbook with the given sheets

    Args:
        sheet_names: Sheet titles in order

    Returns:
        Openpyxl Workbook
    """
    if not sheet_names:
        raise ValueError("A workbook needs at least one sheet")
    wb = Workbook()

    # Rename default sheet
    ws = wb.active
    ws.title = sheet_names[0]

    for name in sheet_names[1:]:
        wb.create_sheet(name)

    return wb


def _write_frame(ws, df: pd.DataFrame, schema: Type) -> None:
    """Header plus rows with two-decimal percentages and six-decimal probabilities"""
    columns = schema.get_columns()
    for r_idx, row in enumerate(dataframe_to_rows(df[columns], index=False, header=True), 1):
        for c_idx, value in enumerate(row, 1):
            ws.cell(row=r_idx, column=c_idx, value=value)

    # Format headers
    for col in range(1, len(columns) + 1):
        cell = ws.cell(row=1, column=col)
        cell.font = Font(bold=True)
        cell.fill = _HEADER_FILL
        cell.alignment = Alignment(horizontal='center')
        ws.column_dimensions[get_column_letter(col)].width = max(14, len(columns[col - 1]) + 2)

    formats = {c: '0.00' for c in schema.get_percentage_columns()}
    formats.update({c: '0.000000' for c in schema.get_probability_columns()})
    for column, number_format in formats.items():
        col = columns.index(column) + 1
        for row in range(2, len(df) + 2):
            ws.cell(row=row, column=col).number_format = number_format

    ws.freeze_panes = 'A2'


def populate_yield_sheet(wb: Workbook, yield_data: pd.DataFrame) -> None:
    """
    Populate the yield sweep sheet

    Args:
        wb: Openpyxl Workbook
        yield_data: DataFrame in the yield schema
    """
    ws = wb[YIELD_SHEET]
    _write_frame(ws, yield_data, YieldSchema)

    if len(yield_data) > 0:
        col = get_column_letter(YieldSchema.get_columns().index(YieldSchema.YIELD_MEAN_PCT) + 1)
        ws.conditional_formatting.add(
            f"{col}2:{col}{len(yield_data) + 1}",
            ColorScaleRule(start_type='num', start_value=0, start_color='F8696B',
                           mid_type='num', mid_value=50, mid_color='FFEB84',
                           end_type='num', end_value=100, end_color='63BE7B'))


def populate_resource_sheet(wb: Workbook, resource_data: pd.DataFrame,
                            schema: Type[ResourceSchema] = ResourceSchema) -> None:
    """
    Populate the resource sheet

    Args:
        wb: Openpyxl Workbook
        resource_data: DataFrame in the resource schema
        schema: ResourceSchema or ResourceComparisonSchema
    """
    ws = wb[RESOURCE_SHEET]
    _write_frame(ws, resource_data, schema)

    count_columns = [ResourceSchema.MEM_QUBITS, ResourceSchema.PERI_QUBITS,
                     ResourceSchema.TOTAL_QUBITS]
    if schema is ResourceComparisonSchema:
        count_columns.append(ResourceComparisonSchema.MEM_QUBITS_LITERAL)
    for column in count_columns:
        col = schema.get_columns().index(column) + 1
        for row in range(2, len(resource_data) + 2):
            ws.cell(row=row, column=col).number_format = '#,##0'


def populate_improvement_sheet(wb: Workbook, improvement_data: pd.DataFrame) -> None:
    """
    Populate the improvement sheet and chart it

    Args:
        wb: Openpyxl Workbook
        improvement_data: DataFrame in the improvement schema
    """
    ws = wb[IMPROVEMENT_SHEET]
    _write_frame(ws, improvement_data, ImprovementSchema)

    if improvement_data.empty:
        return

    columns = ImprovementSchema.get_columns()
    last_row = len(improvement_data) + 1
    cats = Reference(ws, min_col=columns.index(ImprovementSchema.NUM_LOGICAL) + 1,
                     min_row=2, max_row=last_row)
    values = Reference(ws, min_col=columns.index(ImprovementSchema.IMPROVEMENT_PCT) + 1,
                       min_row=1, max_row=last_row)

    bar_chart = BarChart()
    bar_chart.title = "Average Yield Improvement"
    bar_chart.style = 10
    bar_chart.x_axis.title = "Logical Qubits"
    bar_chart.y_axis.title = "Percentage Points"
    bar_chart.add_data(values, titles_from_data=True)
    bar_chart.set_categories(cats)

    ws.add_chart(bar_chart, f"{get_column_letter(len(columns) + 2)}2")


def save_workbook(wb: Workbook, file_path: str) -> str:
    """Save a workbook, creating the parent directory"""
    ensure_parent_directory(file_path)
    logger.info("Saving workbook to %s...", file_path)
    wb.save(file_path)
    return file_path
