"""Utility helpers: logging and input validation"""
from src.utils.logger import setup_logger
from src.utils.validators import require_finite, require_non_negative, require_positive, sanitize_filename

__all__ = [
    "setup_logger",
    "require_finite",
    "require_non_negative",
    "require_positive",
    "sanitize_filename",
]
