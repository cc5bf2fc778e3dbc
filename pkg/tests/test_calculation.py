"""
Unit tests for yield and overhead calculation functions
"""

import unittest
import sys
from pathlib import Path

# Add parent directory to path to import package
sys.path.append(str(Path(__file__).parent.parent))

from core.calculation import (
    calculate_binomial_stderr_pct, calculate_improvement, calculate_overhead_pct,
    calculate_yield_pct, within_oracle_band
)


class TestCalculation(unittest.TestCase):
    """Test yield and overhead calculation functions"""

    def test_calculate_yield_pct(self):
        """Test yield from defective and fabricated counts"""
        self.assertEqual(calculate_yield_pct(0, 1000), 100.0)
        self.assertEqual(calculate_yield_pct(1000, 1000), 0.0)
        self.assertAlmostEqual(calculate_yield_pct(180, 1000), 82.0)

    def test_calculate_yield_pct_invalid(self):
        with self.assertRaises(ValueError):
            calculate_yield_pct(0, 0)
        with self.assertRaises(ValueError):
            calculate_yield_pct(11, 10)
        with self.assertRaises(ValueError):
            calculate_yield_pct(-1, 10)

    def test_calculate_improvement(self):
        """Test repaired yield minus the unrepaired mean"""
        self.assertAlmostEqual(calculate_improvement(99.0, [90.0, 94.0]), 7.0)
        self.assertEqual(calculate_improvement(50.0, [50.0]), 0.0)
        with self.assertRaises(ValueError):
            calculate_improvement(50.0, [])

    def test_calculate_overhead_pct(self):
        """Test relative overhead"""
        self.assertAlmostEqual(calculate_overhead_pct(32, 22), 45.4545, places=3)
        self.assertEqual(calculate_overhead_pct(22, 22), 0.0)
        with self.assertRaises(ValueError):
            calculate_overhead_pct(10, 0)

    def test_binomial_stderr(self):
        self.assertAlmostEqual(calculate_binomial_stderr_pct(50.0, 10000), 0.5)
        self.assertEqual(calculate_binomial_stderr_pct(100.0, 10000), 0.0)

    def test_within_oracle_band(self):
        self.assertTrue(within_oracle_band(51.9, 50.0, 10000))
        self.assertFalse(within_oracle_band(52.1, 50.0, 10000))
        self.assertFalse(within_oracle_band(99.9, 100.0, 1000))
        self.assertTrue(within_oracle_band(99.9, 100.0, 1000, floor_pct=0.5))


if __name__ == '__main__':
    unittest.main()
