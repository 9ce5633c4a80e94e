"""Configuration module"""
from src.config.settings import RuntimeSettings, Settings, SolverDefaults, get_settings

__all__ = ["RuntimeSettings", "Settings", "SolverDefaults", "get_settings"]
