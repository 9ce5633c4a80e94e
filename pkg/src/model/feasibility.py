"""Feasibility checks against the multi-tour set TSP constraints"""
from collections import Counter
from dataclasses import dataclass, field
from typing import List, Optional

from src.config.constants import COST_TOLERANCE, ViolationKind
from src.geometry.instance import Instance
from src.model.solution import Solution


@dataclass(frozen=True)
class Violation:
    """One broken constraint of a solution"""
    kind: ViolationKind
    segment_id: Optional[int] = None
    tour_index: Optional[int] = None
    overshoot: Optional[float] = None

    def describe(self) -> str:
        if self.kind is ViolationKind.OVER_BUDGET:
            return f"tour {self.tour_index} exceeds the budget by {self.overshoot:.6f} s"
        if self.kind is ViolationKind.DUPLICATED:
            return f"segment {self.segment_id} is visited more than once"
        if self.kind is ViolationKind.UNKNOWN_SEGMENT:
            return f"segment {self.segment_id} does not exist in the instance"
        return f"segment {self.segment_id} is not visited"

    def to_dict(self) -> dict:
        data = {"kind": self.kind.value}
        if self.segment_id is not None:
            data["segment"] = self.segment_id
        if self.tour_index is not None:
            data["tour"] = self.tour_index
        if self.overshoot is not None:
            data["overshoot"] = self.overshoot
        return data


@dataclass
class FeasibilityReport:
    """Violations found in a solution; empty means feasible"""
    violations: List[Violation] = field(default_factory=list)

    @property
    def feasible(self) -> bool:
        return not self.violations

    def count(self, kind: ViolationKind) -> int:
        return sum(1 for v in self.violations if v.kind is kind)

    def to_dict(self) -> dict:
        return {
            "feasible": self.feasible,
            "violations": [v.to_dict() for v in self.violations],
        }


def feasibility_violations(solution: Solution, n_segments: int, c_max: float) -> List[Violation]:
    """List coverage and budget violations of a solution."""
    violations: List[Violation] = []
    counts = Counter(solution.segment_ids())

    for segment_id in range(1, n_segments + 1):
        seen = counts.get(segment_id, 0)
        if seen == 0:
            violations.append(Violation(ViolationKind.MISSING, segment_id=segment_id))
        elif seen > 1:
            violations.append(Violation(ViolationKind.DUPLICATED, segment_id=segment_id))

    for segment_id in sorted(s for s in counts if not 1 <= s <= n_segments):
        violations.append(Violation(ViolationKind.UNKNOWN_SEGMENT, segment_id=segment_id))

    for index, tour in enumerate(solution.tours):
        overshoot = tour.cached_cost - c_max
        if overshoot > COST_TOLERANCE:
            violations.append(Violation(ViolationKind.OVER_BUDGET, tour_index=index, overshoot=overshoot))

    return violations


def check_feasible(solution: Solution, instance: Instance) -> FeasibilityReport:
    """
    Check a solution against an instance.

    Args:
        solution: Solution whose tour costs were computed on this instance's matrix
        instance: The instance providing n_s and c_max

    Returns:
        FeasibilityReport listing every violation
    """
    return FeasibilityReport(feasibility_violations(solution, instance.n_segments, instance.c_max))
