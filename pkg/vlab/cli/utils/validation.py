"""
validation.py
#############

CLI input validation utilities.
"""

import math
import os
import re
from typing import List, Optional

from ...core.catalog import available_presets

# "1.5", "-2e-3", "0.3+0.2j", "0.3+0.2i"
_NUMBER = r"[+-]?(\d+\.?\d*|\.\d+)([eE][+-]?\d+)?"
_COMPLEX_PATTERN = re.compile(rf"^({_NUMBER})?([+-](\d+\.?\d*|\.\d+)([eE][+-]?\d+)?[ij])?$|^{_NUMBER}[ij]$")


def validate_preset_name(name: str) -> bool:
    """
    Check that a preset name is in the catalog.

    Args:
        name: Preset name to validate

    Returns:
        bool: True if the preset exists
    """
    return name in available_presets()


def validate_positive(value: float) -> bool:
    """
    Check that a number is finite and strictly positive.

    Args:
        value: Number to validate

    Returns:
        bool: True if value is a positive finite number
    """
    return math.isfinite(value) and value > 0.0


def validate_complex_literal(text: str) -> bool:
    """
    Check that a string is a real or complex literal like "2.5", "1+2j" or "0.3+0.2i".

    Args:
        text: Literal to validate

    Returns:
        bool: True if the literal parses
    """
    text = text.replace(" ", "")
    if not text:
        return False
    return bool(_COMPLEX_PATTERN.match(text))


def parse_complex(text: str) -> complex:
    """
    Parse a complex literal, accepting "i" for the imaginary unit.

    Args:
        text: Literal such as "0.3+0.2i"

    Returns:
        complex: The parsed number

    Raises:
        ValueError: If the literal is malformed.
    """
    if not validate_complex_literal(text):
        raise ValueError(f"Invalid number: {text!r}")
    return complex(text.replace(" ", "").replace("i", "j"))


def parse_number_list(values: List[str]) -> List[complex]:
    """
    Parse a list of command-line literals, splitting comma-separated entries.

    Args:
        values: Literals from argparse, e.g. ["0.5,0.5", "0"]

    Returns:
        List[complex]: Parsed numbers in order
    """
    parsed = []
    for value in values:
        for part in value.split(","):
            if part.strip():
                parsed.append(parse_complex(part))
    return parsed


def validate_output_path(path: Optional[str]) -> bool:
    """
    Check that an output file can be created: its directory exists and is writable.

    Args:
        path: Output path, or None for stdout

    Returns:
        bool: True if path is None or writable
    """
    if path is None:
        return True
    directory = os.path.dirname(os.path.abspath(path))
    return os.path.isdir(directory) and os.access(directory, os.W_OK)
