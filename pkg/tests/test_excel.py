"""
Unit tests for Excel output functions
"""

import os
import tempfile
import unittest
from pathlib import Path
import sys

from openpyxl import load_workbook

# Add parent directory to path to import package
sys.path.append(str(Path(__file__).parent.parent))

from core.aggregation import improvement_to_frame, reports_to_frame
from core.resource_model import breakdowns_to_frame, resource_rows
from core.schema import (
    ImprovementSchema, ResourceComparisonSchema, ResourceSchema, YieldSchema
)
from core.yield_engine import SweepGrid, improvement_series, sweep
from output.excel import (
    IMPROVEMENT_SHEET, RESOURCE_SHEET, YIELD_SHEET, create_excel_workbook,
    populate_improvement_sheet, populate_resource_sheet, populate_yield_sheet, save_workbook
)


class TestExcel(unittest.TestCase):
    """Test Excel output functions"""

    def setUp(self):
        """Set up test fixtures"""
        self.temp_dir = tempfile.TemporaryDirectory()
        self.excel_filename = os.path.join(self.temp_dir.name, 'out', 'workbench.xlsx')

        grid = SweepGrid((3,), (16, 32), (0,), (0.005,), chips_per_rep=20, reps=2)
        self.yield_data = reports_to_frame(sweep(grid))
        self.resource_data = breakdowns_to_frame(resource_rows((3,), (16,), (0, 8)))
        self.improvement_data = improvement_to_frame(improvement_series((16, 32), 0.005, (3,), 8))

    def tearDown(self):
        """Tear down test fixtures"""
        self.temp_dir.cleanup()

    def test_create_excel_workbook(self):
        """Test creating an Excel workbook"""
        wb = create_excel_workbook([YIELD_SHEET, RESOURCE_SHEET, IMPROVEMENT_SHEET])
        self.assertEqual(wb.sheetnames, [YIELD_SHEET, RESOURCE_SHEET, IMPROVEMENT_SHEET])
        with self.assertRaises(ValueError):
            create_excel_workbook([])

    def test_populate_and_save(self):
        """Test every sheet round-trips through a saved file"""
        wb = create_excel_workbook([YIELD_SHEET, RESOURCE_SHEET, IMPROVEMENT_SHEET])
        populate_yield_sheet(wb, self.yield_data)
        populate_resource_sheet(wb, self.resource_data)
        populate_improvement_sheet(wb, self.improvement_data)
        self.assertEqual(save_workbook(wb, self.excel_filename), self.excel_filename)
        self.assertTrue(os.path.exists(self.excel_filename))

        loaded = load_workbook(self.excel_filename)

        ws = loaded[YIELD_SHEET]
        header = [cell.value for cell in ws[1]]
        self.assertEqual(header, YieldSchema.get_columns())
        self.assertEqual(ws.max_row, 3)
        self.assertEqual(ws.freeze_panes, 'A2')
        mean_col = YieldSchema.get_columns().index(YieldSchema.YIELD_MEAN_PCT) + 1
        self.assertEqual(ws.cell(row=2, column=mean_col).number_format, '0.00')
        rate_col = YieldSchema.get_columns().index(YieldSchema.ERROR_RATE) + 1
        self.assertEqual(ws.cell(row=2, column=rate_col).number_format, '0.000000')

        ws = loaded[RESOURCE_SHEET]
        self.assertEqual([cell.value for cell in ws[1]], ResourceSchema.get_columns())
        total_col = ResourceSchema.get_columns().index(ResourceSchema.TOTAL_QUBITS) + 1
        self.assertEqual(ws.cell(row=3, column=total_col).value, 408 + 595)
        self.assertEqual(ws.cell(row=3, column=total_col).number_format, '#,##0')

        ws = loaded[IMPROVEMENT_SHEET]
        self.assertEqual([cell.value for cell in ws[1]], ImprovementSchema.get_columns())
        self.assertEqual(ws.cell(row=2, column=1).value, 16)
    def test_resource_sheet_with_literal_column(self):
        data = breakdowns_to_frame(resource_rows((3,), (16,), (0, 8)), literal_mem=True)
        wb = create_excel_workbook([RESOURCE_SHEET])
        populate_resource_sheet(wb, data, ResourceComparisonSchema)
        ws = wb[RESOURCE_SHEET]
        self.assertEqual([cell.value for cell in ws[1]], ResourceComparisonSchema.get_columns())
        col = len(ResourceComparisonSchema.get_columns())
        self.assertEqual(ws.cell(row=2, column=col).value, 48)
        self.assertEqual(ws.cell(row=3, column=col).value, 72)
        self.assertEqual(ws.cell(row=3, column=col).number_format, '#,##0')


    def test_improvement_chart_added(self):
        wb = create_excel_workbook([IMPROVEMENT_SHEET])
        populate_improvement_sheet(wb, self.improvement_data)
        self.assertEqual(len(wb[IMPROVEMENT_SHEET]._charts), 1)

    def test_empty_improvement_sheet_has_no_chart(self):
        wb = create_excel_workbook([IMPROVEMENT_SHEET])
        populate_improvement_sheet(wb, self.improvement_data.iloc[0:0])
        self.assertEqual(len(wb[IMPROVEMENT_SHEET]._charts), 0)


if __name__ == '__main__':
    unittest.main()
