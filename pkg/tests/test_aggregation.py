"""
Unit tests for yield aggregation functions
"""

import unittest
import sys
from pathlib import Path

# Add parent directory to path to import package
sys.path.append(str(Path(__file__).parent.parent))

from core.aggregation import (
    SERIES_COLUMN, aggregate_by_series, improvement_to_frame, pivot_yield_grid,
    reports_to_frame, series_label
)
from core.schema import ImprovementSchema, YieldSchema
from core.yield_engine import SweepGrid, improvement_series, sweep


class TestAggregation(unittest.TestCase):
    """Test yield aggregation functions"""

    def setUp(self):
        """Set up test fixtures"""
        grid = SweepGrid((3,), (16, 64), (0, 2), (0.005, 0.01), chips_per_rep=40, reps=2)
        self.reports = sweep(grid)
        self.yield_data = reports_to_frame(self.reports)

    def test_reports_to_frame(self):
        """Test tabulating reports in sweep order"""
        self.assertEqual(list(self.yield_data.columns), YieldSchema.get_columns())
        self.assertEqual(len(self.yield_data), 8)
        first = self.yield_data.iloc[0]
        self.assertEqual(first[YieldSchema.NUM_LOGICAL], 16)
        self.assertEqual(first[YieldSchema.NUM_SPARES], 0)
        self.assertEqual(first[YieldSchema.ERROR_RATE], 0.005)
        self.assertEqual(first[YieldSchema.CHIPS_PER_REP], 40)
        self.assertEqual(first[YieldSchema.YIELD_MEAN_PCT], self.reports[0].yield_mean_pct)

    def test_series_label(self):
        self.assertEqual(series_label(3, 0), 'QEC3')
        self.assertEqual(series_label(3, 8), 'QEC3+RR8')

    def test_aggregate_by_series(self):
        """Test one row per series, rate and memory size"""
        series = aggregate_by_series(self.yield_data)
        self.assertEqual(set(series[SERIES_COLUMN]), {'QEC3', 'QEC3+RR2'})
        self.assertEqual(len(series), 8)

    def test_pivot_yield_grid(self):
        """Test memory size by error rate grid"""
        no_spares = self.yield_data[self.yield_data[YieldSchema.NUM_SPARES] == 0]
        grid = pivot_yield_grid(no_spares, YieldSchema.ANALYTIC_PCT)
        self.assertEqual(list(grid.index), [16, 64])
        self.assertEqual(list(grid.columns), [0.005, 0.01])
        self.assertGreater(grid.loc[16, 0.005], grid.loc[64, 0.01])

    def test_improvement_to_frame(self):
        points = improvement_series((16, 32), 0.005, (3, 5), 8)
        frame = improvement_to_frame(points)
        self.assertEqual(list(frame.columns), ImprovementSchema.get_columns())
        self.assertEqual(frame[ImprovementSchema.NUM_LOGICAL].tolist(), [16, 32])
        self.assertAlmostEqual(frame[ImprovementSchema.UNREPAIRED_MEAN_PCT].iloc[0],
                               points[0].unrepaired_mean_pct)


if __name__ == '__main__':
    unittest.main()
