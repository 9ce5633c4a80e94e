"""Logging configuration for the application"""
import logging
import os
import sys
from typing import Optional, Union


def _resolve_level(level: Optional[Union[int, str]]) -> int:
    if level is None:
        level = os.getenv("LINEPATROL_LOG_LEVEL", "INFO")
    if isinstance(level, str):
        resolved = getattr(logging, level.upper(), None)
        return resolved if isinstance(resolved, int) else logging.INFO
    return level


def setup_logger(
    name: str = "linepatrol",
    level: Optional[Union[int, str]] = None,
    log_file: Optional[str] = None
) -> logging.Logger:
    """
    Set up and configure a logger.

    Console output goes to stderr so that stdout stays free for
    Solution JSON and CSV documents.

    Args:
        name: Logger name
        level: Logging level (default: LINEPATROL_LOG_LEVEL or INFO)
        log_file: Optional file path to write logs to

    Returns:
        Configured logger instance
    """
    logger = logging.getLogger(name)
    resolved = _resolve_level(level)
    logger.setLevel(resolved)

    # Prevent duplicate handlers
    if logger.handlers:
        return logger

    formatter = logging.Formatter(
        '%(asctime)s - %(name)s - %(levelname)s - %(message)s',
        datefmt='%Y-%m-%d %H:%M:%S'
    )

    console_handler = logging.StreamHandler(sys.stderr)
    console_handler.setLevel(logging.DEBUG)
    console_handler.setFormatter(formatter)
    logger.addHandler(console_handler)

    if log_file:
        attach_file_handler(logger, log_file)

    return logger


def attach_file_handler(logger: logging.Logger, log_file: str) -> None:
    """Mirror a logger's records into a file."""
    formatter = logging.Formatter(
        '%(asctime)s - %(name)s - %(levelname)s - %(message)s',
        datefmt='%Y-%m-%d %H:%M:%S'
    )
    file_handler = logging.FileHandler(log_file)
    file_handler.setLevel(logging.DEBUG)
    file_handler.setFormatter(formatter)
    logger.addHandler(file_handler)


def _package_loggers():
    for name, candidate in logging.Logger.manager.loggerDict.items():
        if isinstance(candidate, logging.Logger) and (name == "linepatrol" or name.startswith("src")):
            yield candidate


def set_package_level(level: Union[int, str]) -> None:
    """Apply a level to every logger created by setup_logger in this package."""
    resolved = _resolve_level(level)
    for candidate in _package_loggers():
        candidate.setLevel(resolved)


def attach_package_file_handler(log_file: str) -> None:
    """Mirror every package logger into one file."""
    for candidate in list(_package_loggers()):
        attach_file_handler(candidate, log_file)


# Default logger instance
logger = setup_logger()
