"""
Monte-Carlo fabrication yield of qRAM chips with spare repair

A chip holds N original memory patches and X spares. Each patch is
fabricated through the count-based defect model of core.qec_defect; a chip is
good when every defective original can be swapped for a healthy spare.
Yield per repetition is (1 - defective/fabricated) * 100.

Every chip draws from its own stream derived from
(master_seed, point_index, rep_index, chip_index), so reports do not depend
on how many worker threads ran the chips.
"""

import itertools
import logging
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Iterable, List, Optional, Sequence, Tuple

import numpy as np
from scipy.stats import binom

from core.calculation import (
    calculate_binomial_stderr_pct, calculate_improvement, calculate_yield_pct
)
from core.qec_defect import (
    FabricationModel, QecParams, logical_defect_prob, sample_patch_counts
)

logger = logging.getLogger(__name__)

DEFAULT_CHIPS_PER_REP = 1000
DEFAULT_REPS = 10
DEFAULT_MASTER_SEED = 20240517
THREADS_ENV_VAR = 'QRAM_THREADS'

# Chips handed to one worker task
_CHUNK_SIZE = 250


def _check_count(name: str, value, minimum: int) -> int:
    if isinstance(value, bool) or not isinstance(value, (int, np.integer)):
        raise ValueError(f"{name} must be an integer, got {value!r}")
    if value < minimum:
        raise ValueError(f"{name} must be >= {minimum}, got {value}")
    return int(value)


@dataclass(frozen=True)
class ChipSpec:
    """A qRAM design: originals, spares, code and fabrication model"""
    num_logical: int
    num_spares: int
    qec: QecParams
    fab: FabricationModel
    spares_fallible: bool = True

    def __post_init__(self):
        object.__setattr__(self, 'num_logical', _check_count('num_logical', self.num_logical, 1))
        object.__setattr__(self, 'num_spares', _check_count('num_spares', self.num_spares, 0))

    @classmethod
    def create(cls, num_logical: int, num_spares: int, distance: int,
               error_rate: float, spares_fallible: bool = True) -> 'ChipSpec':
        """Build a spec from plain numbers"""
        return cls(num_logical, num_spares, QecParams(distance),
                   FabricationModel(error_rate), spares_fallible)


@dataclass(frozen=True)
class ChipOutcome:
    """Sampled defect state of one fabricated chip"""
    defective_originals: int
    defective_spares: int
    repairable: bool
    defective_original_indices: Optional[Tuple[int, ...]] = None
    defective_spare_indices: Optional[Tuple[int, ...]] = None


@dataclass(frozen=True)
class YieldReport:
    """Yield of one sweep point across repetitions"""
    spec: ChipSpec
    chips_per_rep: int
    reps: int
    rep_yields_pct: Tuple[float, ...]
    defective_counts: Tuple[int, ...]
    yield_mean_pct: float
    yield_std_pct: float
    analytic_pct: float
    master_seed: int
    point_index: int = 0

    @property
    def total_chips(self) -> int:
        return self.chips_per_rep * self.reps

    @property
    def defective_fraction(self) -> float:
        return sum(self.defective_counts) / self.total_chips

    @property
    def binomial_stderr_pct(self) -> float:
        """Per-chip binomial standard error of the mean yield, from the oracle"""
        return calculate_binomial_stderr_pct(self.analytic_pct, self.total_chips)


@dataclass(frozen=True)
class SweepGrid:
    """Axes of a yield experiment"""
    distances: Tuple[int, ...]
    logical_counts: Tuple[int, ...]
    spare_counts: Tuple[int, ...]
    error_rates: Tuple[float, ...]
    chips_per_rep: int = DEFAULT_CHIPS_PER_REP
    reps: int = DEFAULT_REPS
    master_seed: int = DEFAULT_MASTER_SEED
    spares_fallible: bool = True

    def __post_init__(self):
        for name in ('distances', 'logical_counts', 'spare_counts', 'error_rates'):
            values = tuple(getattr(self, name))
            if not values:
                raise ValueError(f"Sweep axis '{name}' must not be empty")
            object.__setattr__(self, name, values)
        if any(not 0.0 <= float(p) <= 1.0 for p in self.error_rates):
            raise ValueError("Sweep error rates must lie in [0, 1]")

    def points(self) -> List[ChipSpec]:
        """Cartesian product in (distance, logical, spares, rate) order"""
        return [
            ChipSpec.create(n, x, d, p, self.spares_fallible)
            for d, n, x, p in itertools.product(
                self.distances, self.logical_counts,
                self.spare_counts, self.error_rates)
        ]


def resolve_threads(threads: Optional[int] = None) -> int:
    """Worker count: explicit value, else QRAM_THREADS, else 1"""
    if threads is None:
        raw = os.environ.get(THREADS_ENV_VAR, '').strip()
        if raw:
            try:
                threads = int(raw)
            except ValueError:
                logger.warning("Ignoring non-integer %s=%r", THREADS_ENV_VAR, raw)
                threads = 1
        else:
            threads = 1
    return max(1, int(threads))


def chip_stream(master_seed: int, point_index: int, rep_index: int,
                chip_index: int) -> np.random.Generator:
    """Independent random stream for one chip"""
    seq = np.random.SeedSequence([int(master_seed), int(point_index),
                                  int(rep_index), int(chip_index)])
    return np.random.Generator(np.random.PCG64(seq))


def simulate_chip(spec: ChipSpec, rng: np.random.Generator,
                  keep_defects: bool = False) -> ChipOutcome:
    """
    Fabricate one chip and apply the spare-repair rule

    Args:
        spec: Chip design
        rng: Caller-owned random stream
        keep_defects: Also record which originals/spares are defective

    Returns:
        ChipOutcome

    Patches are drawn in one block through sample_patch_counts, which applies
    the per-qubit Bernoulli rule of sample_patch row by row and consumes the
    stream in the same order as repeated sample_patch calls.
    """
    t = spec.qec.correctable
    original_bad = sample_patch_counts(spec.qec, spec.fab, rng, spec.num_logical) > t
    j = int(original_bad.sum())

    if spec.spares_fallible and spec.num_spares > 0:
        spare_bad = sample_patch_counts(spec.qec, spec.fab, rng, spec.num_spares) > t
    else:
        spare_bad = np.zeros(spec.num_spares, dtype=bool)
    s = int(spare_bad.sum())

    budget = spec.num_spares - s if spec.spares_fallible else spec.num_spares
    if not keep_defects:
        return ChipOutcome(j, s, j <= budget)
    return ChipOutcome(
        j, s, j <= budget,
        defective_original_indices=tuple(int(i) for i in np.flatnonzero(original_bad)),
        defective_spare_indices=tuple(int(i) for i in np.flatnonzero(spare_bad)),
    )


def _repairable_flags(spec: ChipSpec, master_seed: int, point_index: int,
                      rep_index: int, chip_indices: Sequence[int]) -> np.ndarray:
    return np.fromiter(
        (simulate_chip(spec, chip_stream(master_seed, point_index, rep_index, c)).repairable
         for c in chip_indices),
        dtype=bool, count=len(chip_indices))


def _run_rep(spec: ChipSpec, chips: int, master_seed: int, point_index: int,
             rep_index: int, pool: Optional[ThreadPoolExecutor]) -> int:
    """Defective chip count of one repetition"""
    chunks = [range(start, min(start + _CHUNK_SIZE, chips))
              for start in range(0, chips, _CHUNK_SIZE)]
    if pool is None:
        flags = [_repairable_flags(spec, master_seed, point_index, rep_index, c) for c in chunks]
    else:
        futures = [pool.submit(_repairable_flags, spec, master_seed, point_index, rep_index, c)
                   for c in chunks]
        flags = [f.result() for f in futures]
    good = int(sum(int(f.sum()) for f in flags))
    return chips - good


def simulate_yield(spec: ChipSpec, chips_per_rep: int = DEFAULT_CHIPS_PER_REP,
                   reps: int = DEFAULT_REPS, master_seed: int = DEFAULT_MASTER_SEED,
                   point_index: int = 0, threads: Optional[int] = None) -> YieldReport:
    """
    Monte-Carlo yield of one design

    Args:
        spec: Chip design
        chips_per_rep: Chips fabricated per repetition
        reps: Number of repetitions
        master_seed: Root of every chip stream
        point_index: Position of this design inside a sweep
        threads: Worker threads (None reads QRAM_THREADS)

    Returns:
        YieldReport with the mean and standard deviation across repetitions
    """
    if chips_per_rep < 1 or reps < 1:
        raise ValueError("chips_per_rep and reps must both be >= 1")

    workers = resolve_threads(threads)
    logger.debug("Simulating N=%d X=%d d=%d p=%.4f (%d x %d chips, %d thread(s))",
                 spec.num_logical, spec.num_spares, spec.qec.distance,
                 spec.fab.error_rate, chips_per_rep, reps, workers)

    pool = ThreadPoolExecutor(max_workers=workers) if workers > 1 else None
    try:
        defective = tuple(
            _run_rep(spec, chips_per_rep, master_seed, point_index, r, pool)
            for r in range(reps)
        )
    finally:
        if pool is not None:
            pool.shutdown()

    rep_yields = tuple(calculate_yield_pct(d, chips_per_rep) for d in defective)
    std = float(np.std(rep_yields, ddof=1)) if reps > 1 else 0.0

    return YieldReport(
        spec=spec,
        chips_per_rep=chips_per_rep,
        reps=reps,
        rep_yields_pct=rep_yields,
        defective_counts=defective,
        yield_mean_pct=float(np.mean(rep_yields)),
        yield_std_pct=std,
        analytic_pct=analytic_yield(spec) * 100.0,
        master_seed=master_seed,
        point_index=point_index,
    )


def analytic_yield(spec: ChipSpec) -> float:
    """
    Closed-form yield of a design

    With q the logical defect probability: fallible spares give
    P(defects among N+X <= X); infallible spares give P(defects among N <= X).

    Args:
        spec: Chip design

    Returns:
        Probability in [0, 1]
    """
    q = logical_defect_prob(spec.qec, spec.fab)
    n, x = spec.num_logical, spec.num_spares

    if q == 0.0:
        return 1.0
    if spec.spares_fallible:
        return float(binom.cdf(x, n + x, q))
    if x >= n:
        return 1.0
    return float(binom.cdf(x, n, q))


def sweep(grid: SweepGrid, threads: Optional[int] = None,
          point_offset: int = 0) -> List[YieldReport]:
    """
    Run every point of a grid

    Args:
        grid: Sweep axes and run sizes
        threads: Worker threads (None reads QRAM_THREADS)
        point_offset: Index of the first point, so several grids of one
            experiment draw from distinct streams

    Returns:
        One YieldReport per point, in lexicographic axis order
    """
    points = grid.points()
    logger.info("Running sweep over %d point(s)...", len(points))
    reports = []
    for index, spec in enumerate(points):
        reports.append(simulate_yield(spec, grid.chips_per_rep, grid.reps,
                                      grid.master_seed, point_index=point_offset + index,
                                      threads=threads))
    return reports


@dataclass(frozen=True)
class ImprovementPoint:
    """Repaired yield against the unrepaired average at one memory size"""
    num_logical: int
    error_rate: float
    repaired_pct: float
    unrepaired_pcts: Tuple[float, ...]
    improvement_pct: float

    @property
    def unrepaired_mean_pct(self) -> float:
        return float(np.mean(self.unrepaired_pcts))


def improvement_breakdown(N: int, p: float, distances: Iterable[int], rr_spares: int,
                          method: str = 'analytic',
                          chips_per_rep: int = DEFAULT_CHIPS_PER_REP,
                          reps: int = DEFAULT_REPS, master_seed: int = DEFAULT_MASTER_SEED,
                          spares_fallible: bool = True,
                          threads: Optional[int] = None) -> ImprovementPoint:
    """
    Yield of (d=3, X=rr_spares) against the X=0 yields at `distances`

    Args:
        N: Original memory cells
        p: Fabrication error rate
        distances: Code distances averaged without repair
        rr_spares: Spares used by the repaired d=3 design
        method: 'analytic' or 'monte_carlo'
        chips_per_rep, reps, master_seed, spares_fallible, threads: Monte-Carlo settings

    Returns:
        ImprovementPoint
    """
    distances = tuple(distances)
    if not distances:
        raise ValueError("yield_improvement needs at least one distance")
    if method not in ('analytic', 'monte_carlo'):
        raise ValueError(f"Unknown method '{method}'")

    def _yield_pct(spec: ChipSpec, index: int) -> float:
        if method == 'analytic':
            return analytic_yield(spec) * 100.0
        return simulate_yield(spec, chips_per_rep, reps, master_seed,
                              point_index=index, threads=threads).yield_mean_pct

    repaired = _yield_pct(ChipSpec.create(N, rr_spares, 3, p, spares_fallible), 0)
    unrepaired = tuple(
        _yield_pct(ChipSpec.create(N, 0, d, p, spares_fallible), i + 1)
        for i, d in enumerate(distances)
    )
    return ImprovementPoint(N, float(p), repaired, unrepaired,
                            calculate_improvement(repaired, unrepaired))


def yield_improvement(N: int, p: float, distances: Iterable[int], rr_spares: int,
                      **kwargs) -> float:
    """Average yield improvement of repair, in percentage points"""
    return improvement_breakdown(N, p, distances, rr_spares, **kwargs).improvement_pct


def improvement_series(logical_counts: Iterable[int], p: float, distances: Iterable[int],
                       rr_spares: int, **kwargs) -> List[ImprovementPoint]:
    """improvement_breakdown over several memory sizes"""
    distances = tuple(distances)
    return [improvement_breakdown(n, p, distances, rr_spares, **kwargs)
            for n in logical_counts]
