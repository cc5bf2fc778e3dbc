"""
CSV output for yield, resource and improvement tables
"""

import logging
import sys
from typing import Optional, Type

import pandas as pd

from utils.helpers import ensure_parent_directory, format_percentage, format_probability

logger = logging.getLogger(__name__)


def format_frame(df: pd.DataFrame, schema: Type) -> pd.DataFrame:
    """
    Render every cell as text with the fixed CSV number formats

    Percentages get two decimals, probabilities six, everything else its
    plain string form.

    Args:
        df: DataFrame with the schema's columns
        schema: Schema class providing get_columns and the format groups

    Returns:
        DataFrame of strings in schema column order
    """
    percentage = set(schema.get_percentage_columns())
    probability = set(schema.get_probability_columns())
    formatted = pd.DataFrame(index=df.index)
    for column in schema.get_columns():
        if column in percentage:
            formatted[column] = [format_percentage(v) for v in df[column]]
        elif column in probability:
            formatted[column] = [format_probability(v) for v in df[column]]
        else:
            formatted[column] = [str(v) for v in df[column]]
    return formatted


def frame_to_csv_text(df: pd.DataFrame, schema: Type) -> str:
    """CSV text with a header row and '\\n' line endings"""
    return format_frame(df, schema).to_csv(index=False, lineterminator='\n')


def write_csv(df: pd.DataFrame, schema: Type, file_path: Optional[str] = None) -> str:
    """
    Write a table as CSV

    Args:
        df: DataFrame with the schema's columns
        schema: Schema class
        file_path: Destination; None writes to standard output

    Returns:
        The CSV text
    """
    text = frame_to_csv_text(df, schema)
    if file_path is None:
        sys.stdout.write(text)
        sys.stdout.flush()
        return text

    ensure_parent_directory(file_path)
    logger.info("Saving %d row(s) to %s...", len(df), file_path)
    with open(file_path, 'w', encoding='utf-8', newline='') as fh:
        fh.write(text)
    return text
