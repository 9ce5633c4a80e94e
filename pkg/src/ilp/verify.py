"""Constraint audit of (X, T) assignments"""
from dataclasses import dataclass
from typing import List, Optional

import numpy as np

from src.config.constants import ROW_TOLERANCE
from src.exceptions import InvalidArgumentError
from src.ilp.encoding import Assignment, check_dimensions, decode_assignment
from src.ilp.model import IlpModel
from src.model.costing import Evaluator
from src.model.feasibility import feasibility_violations
from src.utils.logger import setup_logger

logger = setup_logger(__name__)

DOMAIN_GROUP = "domain"
CONSISTENCY_GROUP = "consistency"


@dataclass(frozen=True)
class RowViolation:
    """A violated row (or variable domain) with the amount it is off by"""
    group: str
    name: str
    activity: float
    rhs: float
    amount: float

    def describe(self) -> str:
        return f"{self.group}/{self.name}: activity {self.activity:g} vs rhs {self.rhs:g} (off by {self.amount:g})"

    def to_dict(self) -> dict:
        return {
            "group": self.group,
            "row": self.name,
            "activity": self.activity,
            "rhs": self.rhs,
            "amount": self.amount,
        }


def _domain_violations(model: IlpModel, assignment: Assignment) -> List[RowViolation]:
    violations: List[RowViolation] = []

    x = assignment.x
    for m, i, j in np.argwhere((x != 0) & (x != 1)):
        value = float(x[m, i, j])
        violations.append(RowViolation(DOMAIN_GROUP, f"x_{m}_{i}_{j}", value, 1.0, min(abs(value), abs(value - 1))))

    for var in sorted(model.fixed_zero):
        value = assignment.value(var)
        if value != 0:
            violations.append(RowViolation(DOMAIN_GROUP, var.name, value, 0.0, abs(value)))

    t = assignment.t
    upper = model.t_upper
    for m, i in np.argwhere((t < 0) | (t > upper) | (t != np.round(t))):
        value = float(t[m, i])
        amount = max(-value, value - upper, abs(value - round(value)))
        violations.append(RowViolation(DOMAIN_GROUP, f"t_{m}_{i}", value, float(upper), amount))
    return violations


def _consistency_violation(model: IlpModel, assignment: Assignment) -> Optional[RowViolation]:
    """Decode tours from an ILP-feasible assignment and re-check them with the solution model."""
    try:
        routes = decode_assignment(assignment)
    except InvalidArgumentError as e:
        logger.warning(f"ILP-feasible assignment does not decode into tours: {e}")
        return RowViolation(CONSISTENCY_GROUP, "decode", 0.0, 0.0, 1.0)

    evaluator = Evaluator(model.matrix, model.c_max)
    solution = evaluator.solution([r for r in routes if r])
    problems = feasibility_violations(solution, model.n_segments, model.c_max)
    if problems:
        logger.warning(f"ILP-feasible assignment decodes to an infeasible plan: {[p.describe() for p in problems]}")
        return RowViolation(CONSISTENCY_GROUP, "check_feasible", float(len(problems)), 0.0, float(len(problems)))
    return None


def verify(model: IlpModel, assignment: Assignment) -> List[RowViolation]:
    """
    Check an assignment against every row and variable domain of the model.

    When all rows hold, the tours are decoded and re-checked with the
    solution-level feasibility test; a disagreement is reported as a
    ``consistency`` violation.

    Args:
        model: Model from build_model
        assignment: Values for X and T

    Returns:
        Violations in group order; empty iff the assignment is ILP-feasible

    Raises:
        InvalidArgumentError: If the assignment dimensions do not match the model
    """
    check_dimensions(model, assignment)

    violations = _domain_violations(model, assignment)
    for tag, row in model.rows():
        activity = row.activity(assignment.value)
        amount = row.violation(activity)
        if amount > ROW_TOLERANCE:
            violations.append(RowViolation(tag.value, row.name, activity, row.rhs, amount))

    if not violations:
        mismatch = _consistency_violation(model, assignment)
        if mismatch is not None:
            violations.append(mismatch)

    logger.debug(f"Verified assignment: {len(violations)} violation(s)")
    return violations
