"""
Helper functions for the qRAM workbench
"""

import math
import os
from typing import Iterable, Optional, Tuple, Union


def ensure_directory_exists(directory_path: str) -> None:
    """
    Ensure that a directory exists, creating it if necessary

    Args:
        directory_path: Path to the directory
    """
    if directory_path and not os.path.exists(directory_path):
        os.makedirs(directory_path)


def ensure_parent_directory(file_path: str) -> None:
    """Create the directory a file will be written into"""
    ensure_directory_exists(os.path.dirname(os.path.abspath(file_path)))


def format_percentage(value: Union[float, int]) -> str:
    """
    Format a percentage for CSV output

    Args:
        value: Numeric value to format (0-100)

    Returns:
        Two-decimal string, empty for NaN
    """
    if value is None or (isinstance(value, float) and math.isnan(value)):
        return ''
    return f"{value:.2f}"


def format_probability(value: Union[float, int]) -> str:
    """Six-decimal string for probabilities and error rates"""
    if value is None or (isinstance(value, float) and math.isnan(value)):
        return ''
    return f"{value:.6f}"


def parse_bits(text: str, width: Optional[int] = None) -> Tuple[int, ...]:
    """
    Parse a bitstring such as '1011' into a tuple of ints, first character first

    Args:
        text: String of 0/1 characters
        width: Required length, if any

    Returns:
        Tuple of 0/1 ints
    """
    text = text.strip()
    if set(text) - {'0', '1'}:
        raise ValueError(f"'{text}' is not a bitstring")
    if width is not None and len(text) != width:
        raise ValueError(f"Expected {width} bits, got '{text}'")
    return tuple(int(c) for c in text)


def format_bits(bits: Iterable[int]) -> str:
    """Inverse of parse_bits"""
    return ''.join(str(int(b)) for b in bits)
