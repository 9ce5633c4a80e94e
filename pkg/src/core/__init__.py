"""Core module: instance generation and planner orchestration"""
from src.core.generator import sample_instance, select_segments, suggest_budget, synthetic_instance
from src.core.planner import InspectionPlanner, build_grasp_config

__all__ = [
    "sample_instance",
    "select_segments",
    "suggest_budget",
    "synthetic_instance",
    "InspectionPlanner",
    "build_grasp_config",
]
