"""
Unit tests for the surface-code defect model
"""

import unittest
import sys
from pathlib import Path

import numpy as np

# Add parent directory to path to import package
sys.path.append(str(Path(__file__).parent.parent))

from core.errors import InvalidDistance
from core.qec_defect import (
    FabricationModel, QecParams, build_surface_layout, disabled_components,
    layout_from_sample, logical_defect_prob, physical_per_logical, render_layout,
    sample_patch, sample_patch_counts, summarize_layout
)


class TestPatchModel(unittest.TestCase):
    """Test patch sizes and defect probabilities"""

    def test_physical_per_logical(self):
        """2d^2 - 1 qubits per patch"""
        self.assertEqual(physical_per_logical(3), 17)
        self.assertEqual(physical_per_logical(5), 49)
        self.assertEqual(physical_per_logical(9), 161)

    def test_invalid_distance(self):
        """Even, small and non-integer distances are rejected"""
        for d in (1, 2, 4, 0, -3, 3.0, True):
            with self.assertRaises(InvalidDistance):
                QecParams(d)

    def test_correctable_budget(self):
        self.assertEqual(QecParams(3).correctable, 1)
        self.assertEqual(QecParams(9).correctable, 4)

    def test_invalid_error_rate(self):
        with self.assertRaises(ValueError):
            FabricationModel(1.5)
        with self.assertRaises(ValueError):
            FabricationModel(-0.1)

    def test_logical_defect_prob_reference_values(self):
        """Closed-form values for d=3 at 0.5% and 1%"""
        q = logical_defect_prob(QecParams(3), FabricationModel(0.005))
        self.assertAlmostEqual(q, 0.0032372, places=6)
        q = logical_defect_prob(QecParams(3), FabricationModel(0.01))
        self.assertAlmostEqual(q, 0.012313, places=5)

    def test_logical_defect_prob_limits(self):
        self.assertEqual(logical_defect_prob(QecParams(5), FabricationModel(0.0)), 0.0)
        self.assertEqual(logical_defect_prob(QecParams(5), FabricationModel(1.0)), 1.0)

    def test_logical_defect_prob_decreases_with_distance(self):
        """Larger codes tolerate more defects at a low error rate"""
        model = FabricationModel(0.005)
        values = [logical_defect_prob(QecParams(d), model) for d in (3, 5, 7, 9)]
        self.assertEqual(values, sorted(values, reverse=True))

    def test_log_space_branch_matches_direct_sum(self):
        """d=9 patches (161 qubits) go through log-gamma terms"""
        params = QecParams(9)
        p = 0.01
        n, t = params.physical_per_logical, params.correctable
        # Complement of the lower tail, built term by term
        term = (1.0 - p) ** n
        lower = term
        for k in range(1, t + 1):
            term *= (n - k + 1) / k * p / (1.0 - p)
            lower += term
        self.assertAlmostEqual(logical_defect_prob(params, FabricationModel(p)),
                               1.0 - lower, places=10)


class TestPatchSampling(unittest.TestCase):
    """Test Monte-Carlo patch fabrication"""

    def setUp(self):
        """Set up test fixtures"""
        self.params = QecParams(3)

    def test_sample_patch_is_reproducible(self):
        model = FabricationModel(0.2)
        first = sample_patch(self.params, model, np.random.default_rng(7))
        second = sample_patch(self.params, model, np.random.default_rng(7))
        self.assertEqual(first, second)
        self.assertEqual(first.defect_count, len(first.defect_sites))
        self.assertEqual(first.defective, first.defect_count > 1)

    def test_sample_patch_extremes(self):
        rng = np.random.default_rng(1)
        clean = sample_patch(self.params, FabricationModel(0.0), rng)
        self.assertEqual(clean.defect_count, 0)
        self.assertFalse(clean.defective)
        broken = sample_patch(self.params, FabricationModel(1.0), rng)
        self.assertEqual(broken.defect_count, 17)
        self.assertTrue(broken.defective)

    def test_sample_patch_counts_rate(self):
        """Defective fraction over many patches tracks the closed form"""
        model = FabricationModel(0.02)
        counts = sample_patch_counts(self.params, model, np.random.default_rng(11), 200000)
        observed = float((counts > self.params.correctable).mean())
        expected = logical_defect_prob(self.params, model)
        stderr = (expected * (1 - expected) / 200000) ** 0.5
        self.assertLess(abs(observed - expected), 5 * stderr)

    def test_sample_patch_counts_empty(self):
        counts = sample_patch_counts(self.params, FabricationModel(0.5),
                                     np.random.default_rng(0), 0)
        self.assertEqual(counts.size, 0)

    def test_sample_patch_bernoulli_mean(self):
        """Each site breaks with probability p, independently of its position"""
        params = QecParams(5)
        model = FabricationModel(0.1)
        rng = np.random.default_rng(23)
        draws = 5000
        hits = np.zeros(params.physical_per_logical)
        total = 0
        for _ in range(draws):
            sample = sample_patch(params, model, rng)
            total += sample.defect_count
            hits[list(sample.defect_sites)] += 1

        n = params.physical_per_logical
        mean_stderr = (0.1 * 0.9 / (draws * n)) ** 0.5
        self.assertLess(abs(total / (draws * n) - 0.1), 4 * mean_stderr)
        site_stderr = (0.1 * 0.9 / draws) ** 0.5
        self.assertLess(float(np.max(np.abs(hits / draws - 0.1))), 5 * site_stderr)

    def test_block_counts_follow_single_patch_draws(self):
        """A block draw consumes the stream like repeated single-patch draws"""
        params = QecParams(5)
        model = FabricationModel(0.08)
        block = sample_patch_counts(params, model, np.random.default_rng(31), 40)
        rng = np.random.default_rng(31)
        single = [sample_patch(params, model, rng).defect_count for _ in range(40)]
        self.assertEqual(block.tolist(), single)


class TestDefectProbabilityGrid(unittest.TestCase):
    """Closed-form defect probability against sampling over the reference grid"""

    PATCHES = 200000
    CHUNK = 20000

    def _sampled_fraction(self, params, model, seed):
        rng = np.random.default_rng(seed)
        defective = 0
        for _ in range(self.PATCHES // self.CHUNK):
            counts = sample_patch_counts(params, model, rng, self.CHUNK)
            defective += int((counts > params.correctable).sum())
        return defective / self.PATCHES

    def test_sampling_within_four_sigma(self):
        for i, (d, p) in enumerate((d, p) for d in (3, 5, 7, 9) for p in (0.005, 0.01)):
            params, model = QecParams(d), FabricationModel(p)
            expected = logical_defect_prob(params, model)
            observed = self._sampled_fraction(params, model, 100 + i)
            stderr = (expected * (1 - expected) / self.PATCHES) ** 0.5
            self.assertLess(abs(observed - expected), 4 * stderr, msg=f"d={d} p={p}")

    def test_monotone_in_error_rate(self):
        rates = (0.0, 0.001, 0.0025, 0.005, 0.0075, 0.01, 0.02, 0.05)
        for d in (3, 5, 7, 9):
            values = [logical_defect_prob(QecParams(d), FabricationModel(p)) for p in rates]
            for low, high in zip(values, values[1:]):
                self.assertLess(low, high, msg=f"d={d}")


class TestSurfaceLayout(unittest.TestCase):
    """Test the lattice used for defect reports"""

    def test_stabilizer_count(self):
        """d^2 - 1 stabilizers, one ancilla each"""
        for d in (3, 5, 7):
            layout = build_surface_layout(QecParams(d))
            self.assertEqual(len(layout.stabilizers), d * d - 1)
            self.assertEqual(layout.num_sites, 2 * d * d - 1)
            self.assertEqual(len(set(layout.ancilla_sites)), d * d - 1)

    def test_mask_length_checked(self):
        with self.assertRaises(ValueError):
            build_surface_layout(QecParams(3), [False] * 5)

    def test_clean_patch_has_nothing_disabled(self):
        layout = build_surface_layout(QecParams(3))
        self.assertEqual(disabled_components(layout), frozenset())
        summary = summarize_layout(layout)
        self.assertEqual(summary['broken_sites'], 0)
        self.assertEqual(summary['disabled_stabilizers'], 0)

    def test_broken_centre_data_qubit(self):
        """The centre of a d=3 patch touches four weight-4 plaquettes"""
        mask = [False] * 17
        mask[4] = True
        layout = build_surface_layout(QecParams(3), mask)
        disabled = disabled_components(layout)
        self.assertIn('site:4', disabled)
        self.assertEqual(len(layout.disabled_stabilizers), 4)

    def test_broken_ancilla_disables_its_plaquette(self):
        params = QecParams(3)
        layout = build_surface_layout(params)
        stabilizer = layout.stabilizers[0]
        mask = [False] * 17
        mask[stabilizer.ancilla_site] = True
        layout = build_surface_layout(params, mask)
        self.assertEqual(layout.disabled_stabilizers, frozenset({stabilizer.label}))
        self.assertIn('#', render_layout(layout))

    def test_render_marks_broken_data(self):
        params = QecParams(3)
        sample = sample_patch(params, FabricationModel(1.0), np.random.default_rng(0))
        picture = render_layout(layout_from_sample(params, sample))
        self.assertEqual(picture.count('x'), 9)
        self.assertNotIn('o', picture)


if __name__ == '__main__':
    unittest.main()
