"""Model module: solutions, costing, feasibility and metrics"""
from src.model.solution import Solution, Tour, Visit, canonical_key, covers_all
from src.model.costing import (
    Evaluator,
    PenaltyConfig,
    constrained_cost,
    constrained_costs,
    route_cost,
    tour_cost,
)
from src.model.feasibility import FeasibilityReport, Violation, check_feasible, feasibility_violations
from src.model.metrics import pdb, pdm

__all__ = [
    "Solution",
    "Tour",
    "Visit",
    "canonical_key",
    "covers_all",
    "Evaluator",
    "PenaltyConfig",
    "constrained_cost",
    "constrained_costs",
    "route_cost",
    "tour_cost",
    "FeasibilityReport",
    "Violation",
    "check_feasible",
    "feasibility_violations",
    "pdb",
    "pdm",
]
