"""Oracle module: exhaustive reference solver"""
from src.oracle.exact import OracleLimits, OracleResult, exact_min_tours, exact_solve

__all__ = ["OracleLimits", "OracleResult", "exact_min_tours", "exact_solve"]
