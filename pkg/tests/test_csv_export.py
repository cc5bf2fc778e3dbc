"""
Unit tests for CSV output
"""

import io
import os
import tempfile
import unittest
from contextlib import redirect_stdout
from pathlib import Path
import sys

# Add parent directory to path to import package
sys.path.append(str(Path(__file__).parent.parent))

from core.aggregation import reports_to_frame
from core.resource_model import breakdowns_to_frame, resource_rows
from core.schema import ResourceSchema, YieldSchema
from core.yield_engine import SweepGrid, sweep
from output.csv_export import format_frame, frame_to_csv_text, write_csv


class TestCsvExport(unittest.TestCase):
    """Test number formats and destinations"""

    def setUp(self):
        """Set up test fixtures"""
        grid = SweepGrid((3,), (16,), (0,), (0.0, 0.0075), chips_per_rep=10, reps=2,
                         master_seed=3)
        self.yield_data = reports_to_frame(sweep(grid))

    def test_yield_header_and_formats(self):
        lines = frame_to_csv_text(self.yield_data, YieldSchema).splitlines()
        self.assertEqual(lines[0], ','.join(YieldSchema.get_columns()))
        self.assertEqual(lines[1].split(','),
                         ['3', '16', '0', '0.000000', '10', '2', '100.00', '0.00', '100.00', '3'])
        self.assertEqual(lines[2].split(',')[3], '0.007500')
        self.assertEqual(len(lines), 3)

    def test_resource_formats(self):
        frame = breakdowns_to_frame(resource_rows((3,), (16,), (0, 1)))
        lines = frame_to_csv_text(frame, ResourceSchema).splitlines()
        self.assertEqual(lines[0], ','.join(ResourceSchema.get_columns()))
        self.assertEqual(lines[1], '3,16,0,272,374,646,0.00,0.00')
        self.assertEqual(lines[2], '3,16,1,289,544,833,6.25,45.45')

    def test_format_frame_is_text(self):
        formatted = format_frame(self.yield_data, YieldSchema)
        self.assertEqual(list(formatted.columns), YieldSchema.get_columns())
        self.assertTrue(all(isinstance(v, str) for v in formatted.iloc[0]))

    def test_unix_line_endings(self):
        text = frame_to_csv_text(self.yield_data, YieldSchema)
        self.assertNotIn('\r', text)
        self.assertTrue(text.endswith('\n'))

    def test_write_to_stdout(self):
        buffer = io.StringIO()
        with redirect_stdout(buffer):
            text = write_csv(self.yield_data, YieldSchema)
        self.assertEqual(buffer.getvalue(), text)

    def test_write_to_file(self):
        with tempfile.TemporaryDirectory() as temp_dir:
            path = os.path.join(temp_dir, 'nested', 'yield.csv')
            text = write_csv(self.yield_data, YieldSchema, path)
            with open(path, 'r', encoding='utf-8', newline='') as fh:
                self.assertEqual(fh.read(), text)


if __name__ == '__main__':
    unittest.main()
