"""Input validation utilities"""
import math
import re
from typing import Sequence

from src.exceptions import InvalidArgumentError


def require_finite(name: str, value: float) -> float:
    """
    Check that a scalar is a finite real number.

    Args:
        name: Argument name used in the error message
        value: Value to check

    Returns:
        The value as a float

    Raises:
        InvalidArgumentError: If the value is NaN or infinite
    """
    try:
        number = float(value)
    except (TypeError, ValueError) as e:
        raise InvalidArgumentError(f"{name} must be a number, got {value!r}") from e

    if not math.isfinite(number):
        raise InvalidArgumentError(f"{name} must be finite, got {value!r}")
    return number


def require_non_negative(name: str, value: float) -> float:
    """Check that a scalar is finite and >= 0."""
    number = require_finite(name, value)
    if number < 0:
        raise InvalidArgumentError(f"{name} must be non-negative, got {value!r}")
    return number


def require_positive(name: str, value: float) -> float:
    """Check that a scalar is finite and > 0."""
    number = require_finite(name, value)
    if number <= 0:
        raise InvalidArgumentError(f"{name} must be positive, got {value!r}")
    return number


def validate_point(point: Sequence[float]) -> bool:
    """
    Validate a Cartesian point in meters.

    Args:
        point: Sequence of 2 or 3 coordinates

    Returns:
        True if valid, False otherwise
    """
    if len(point) not in (2, 3):
        return False
    return all(isinstance(c, (int, float)) and math.isfinite(c) for c in point)


def sanitize_filename(filename: str) -> str:
    """
    Sanitize filename by removing invalid characters.

    Args:
        filename: Filename to sanitize

    Returns:
        Sanitized filename
    """
    # Replace invalid filename characters with underscores
    return re.sub(r'[<>:"/\\|?*\s]', '_', filename)
