"""Geometry module: kinematic timing, instances and the cost matrix"""
from src.geometry.kinematics import travel_time, travel_times
from src.geometry.instance import Instance, KinematicLimits, Pylon, Segment
from src.geometry.cost_matrix import (
    UNUSABLE,
    CostMatrix,
    build_cost_matrix,
    segment_of,
    validate_coverable,
    vertex_of,
    workload_lower_bound,
)

__all__ = [
    "travel_time",
    "travel_times",
    "Instance",
    "KinematicLimits",
    "Pylon",
    "Segment",
    "UNUSABLE",
    "CostMatrix",
    "build_cost_matrix",
    "segment_of",
    "validate_coverable",
    "vertex_of",
    "workload_lower_bound",
]
