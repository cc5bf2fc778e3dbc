"""
Data aggregation functions for yield sweeps
"""

from typing import Sequence

import pandas as pd

from core.schema import ImprovementSchema, YieldSchema

SERIES_COLUMN = 'series'


def reports_to_frame(reports: Sequence) -> pd.DataFrame:
    """
    Tabulate yield reports in the yield CSV schema

    Args:
        reports: YieldReport objects in sweep order

    Returns:
        DataFrame with YieldSchema columns
    """
    return pd.DataFrame(
        [{
            YieldSchema.QEC_DISTANCE: r.spec.qec.distance,
            YieldSchema.NUM_LOGICAL: r.spec.num_logical,
            YieldSchema.NUM_SPARES: r.spec.num_spares,
            YieldSchema.ERROR_RATE: r.spec.fab.error_rate,
            YieldSchema.CHIPS_PER_REP: r.chips_per_rep,
            YieldSchema.REPS: r.reps,
            YieldSchema.YIELD_MEAN_PCT: r.yield_mean_pct,
            YieldSchema.YIELD_STD_PCT: r.yield_std_pct,
            YieldSchema.ANALYTIC_PCT: r.analytic_pct,
            YieldSchema.SEED: r.master_seed,
        } for r in reports],
        columns=YieldSchema.get_columns(),
    )


def series_label(distance: int, spares: int) -> str:
    """Legend label of one (distance, spares) series, e.g. 'QEC3' or 'QEC3+RR8'"""
    return f"QEC{distance}" if spares == 0 else f"QEC{distance}+RR{spares}"


def aggregate_by_series(df: pd.DataFrame) -> pd.DataFrame:
    """
    Mean yield per series and memory size

    Args:
        df: DataFrame in the yield schema

    Returns:
        DataFrame with series, num_logical, error_rate and the mean yields
    """
    labelled = df.copy()
    labelled[SERIES_COLUMN] = [
        series_label(d, x) for d, x in zip(labelled[YieldSchema.QEC_DISTANCE],
                                           labelled[YieldSchema.NUM_SPARES])
    ]
    return labelled.groupby(
        [SERIES_COLUMN, YieldSchema.QEC_DISTANCE, YieldSchema.NUM_SPARES,
         YieldSchema.ERROR_RATE, YieldSchema.NUM_LOGICAL],
        sort=False,
    )[[YieldSchema.YIELD_MEAN_PCT, YieldSchema.ANALYTIC_PCT]].mean().reset_index()


def pivot_yield_grid(df: pd.DataFrame, value: str = YieldSchema.YIELD_MEAN_PCT) -> pd.DataFrame:
    """
    Memory size by error rate grid of one yield column

    Args:
        df: DataFrame in the yield schema, one spare/distance setting
        value: Column to place in the cells

    Returns:
        Pivot with num_logical rows (ascending) and error_rate columns
    """
    return pd.pivot_table(
        df,
        index=YieldSchema.NUM_LOGICAL,
        columns=YieldSchema.ERROR_RATE,
        values=value,
        aggfunc='mean',
    ).sort_index()


def improvement_to_frame(points: Sequence) -> pd.DataFrame:
    """
    Tabulate improvement points

    Args:
        points: ImprovementPoint objects

    Returns:
        DataFrame with ImprovementSchema columns
    """
    return pd.DataFrame(
        [{
            ImprovementSchema.NUM_LOGICAL: p.num_logical,
            ImprovementSchema.ERROR_RATE: p.error_rate,
            ImprovementSchema.REPAIRED_PCT: p.repaired_pct,
            ImprovementSchema.UNREPAIRED_MEAN_PCT: p.unrepaired_mean_pct,
            ImprovementSchema.IMPROVEMENT_PCT: p.improvement_pct,
        } for p in points],
        columns=ImprovementSchema.get_columns(),
    )
