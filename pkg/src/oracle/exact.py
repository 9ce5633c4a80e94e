"""
Exhaustive reference solver for desk-scale instances.

Depth-first search over "append an unvisited segment in either direction to
the open tour, or close it and open the next one". A tour may close only
once it holds the smallest segment that was unvisited when it opened, so
every partition is enumerated in a single tour order.
"""
from dataclasses import dataclass
from typing import List, Optional, Tuple

import numpy as np

from src.config.constants import (
    COST_TOLERANCE,
    DEFAULT_ORACLE_MAX_SEGMENTS,
    DEFAULT_ORACLE_MAX_TOURS,
    DEFAULT_ORACLE_NODE_BUDGET,
    END_DEPOT,
    START_DEPOT,
)
from src.exceptions import InvalidArgumentError, OracleLimitError
from src.geometry.cost_matrix import CostMatrix, validate_coverable, workload_lower_bound
from src.geometry.instance import Instance
from src.model.costing import Evaluator
from src.model.solution import CanonicalKey, Route, Solution, canonical_key
from src.utils.logger import setup_logger

logger = setup_logger(__name__)


@dataclass(frozen=True)
class OracleLimits:
    """Largest problem the oracle agrees to enumerate"""
    max_segments: int = DEFAULT_ORACLE_MAX_SEGMENTS
    max_tours: int = DEFAULT_ORACLE_MAX_TOURS
    node_budget: int = DEFAULT_ORACLE_NODE_BUDGET

    def __post_init__(self):
        for name in ("max_segments", "max_tours", "node_budget"):
            if getattr(self, name) < 1:
                raise InvalidArgumentError(f"{name} must be positive, got {getattr(self, name)}")

    def check(self, n_segments: int, n_t: int) -> None:
        if n_segments > self.max_segments:
            raise OracleLimitError("max_segments", n_segments, self.max_segments)
        if n_t > self.max_tours:
            raise OracleLimitError("max_tours", n_t, self.max_tours)


@dataclass(frozen=True)
class OracleResult:
    n_t: int
    solution: Optional[Solution]
    explored: int

    @property
    def feasible(self) -> bool:
        return self.solution is not None


class _Search:
    def __init__(self, matrix: CostMatrix, c_max: float, n_t: int, node_budget: int):
        self.costs = matrix.costs
        self.min_entry = matrix.min_entry_costs()
        self.min_return = float(np.min(self.costs[2:, END_DEPOT]))
        self.c_max = c_max
        self.n_t = n_t
        self.node_budget = node_budget
        self.explored = 0
        self.best_cost = np.inf
        self.best_key: Optional[CanonicalKey] = None
        self.best_routes: Optional[List[Route]] = None

    def _offer(self, routes: List[Route], total: float) -> None:
        key = canonical_key(routes)
        if total < self.best_cost - COST_TOLERANCE or (
            abs(total - self.best_cost) <= COST_TOLERANCE and key < self.best_key
        ):
            self.best_cost, self.best_key, self.best_routes = total, key, list(routes)

    def visit(
        self,
        closed: List[Route],
        closed_total: float,
        route: List[int],
        partial: float,
        anchor: int,
        remaining: Tuple[int, ...],
    ) -> None:
        self.explored += 1
        if self.explored > self.node_budget:
            raise OracleLimitError("node_budget", self.explored, self.node_budget)

        bound = closed_total + partial + sum(self.min_entry[s - 1] for s in remaining) + self.min_return
        if bound > self.best_cost + COST_TOLERANCE:
            return

        costs = self.costs
        last = route[-1] if route else START_DEPOT

        if route and anchor not in remaining:
            tours = closed + [tuple(route)]
            total = closed_total + partial + costs[last, END_DEPOT]
            if not remaining:
                self._offer(tours, float(total))
            elif len(tours) < self.n_t:
                self.visit(tours, total, [], 0.0, remaining[0], remaining)

        for s in remaining:
            rest = tuple(x for x in remaining if x != s)
            for v in (2 * s, 2 * s + 1):
                step = partial + costs[last, v]
                # Returning only gets dearer as visits are appended
                if step + costs[v, END_DEPOT] > self.c_max + COST_TOLERANCE:
                    continue
                route.append(v)
                self.visit(closed, closed_total, route, step, anchor, rest)
                route.pop()


def exact_solve(
    instance: Instance,
    matrix: CostMatrix,
    n_t: int,
    limits: Optional[OracleLimits] = None,
) -> OracleResult:
    """
    Minimum-cost feasible plan with at most n_t tours.

    Args:
        instance: Instance to solve
        matrix: Its cost matrix
        n_t: Maximum number of tours
        limits: Refusal thresholds (defaults when omitted)

    Returns:
        OracleResult whose solution is None when no plan fits the budget

    Raises:
        OracleLimitError: If the instance or the search exceeds the limits
    """
    limits = limits or OracleLimits()
    if n_t < 1:
        raise InvalidArgumentError(f"n_t must be at least 1, got {n_t}")
    limits.check(instance.n_segments, n_t)

    search = _Search(matrix, instance.c_max, n_t, limits.node_budget)
    remaining = tuple(range(1, instance.n_segments + 1))
    search.visit([], 0.0, [], 0.0, remaining[0], remaining)

    solution = None
    if search.best_routes is not None:
        solution = Evaluator(matrix, instance.c_max).solution(search.best_routes)
    logger.debug(f"Oracle n_t={n_t}: explored {search.explored} nodes, best {search.best_cost}")
    return OracleResult(n_t=n_t, solution=solution, explored=search.explored)


def exact_min_tours(
    instance: Instance,
    matrix: CostMatrix,
    limits: Optional[OracleLimits] = None,
) -> Tuple[int, Solution]:
    """
    Smallest tour count admitting a feasible plan, with its optimal plan.

    Raises:
        InfeasibleInstanceError: If some segment fits no tour
        OracleLimitError: If the limits are exceeded before a feasible count is found
    """
    limits = limits or OracleLimits()
    limits.check(instance.n_segments, 1)
    validate_coverable(instance, matrix)

    start = min(workload_lower_bound(instance, matrix), instance.n_segments)
    for n_t in range(start, instance.n_segments + 1):
        if n_t > limits.max_tours:
            raise OracleLimitError("max_tours", n_t, limits.max_tours)
        result = exact_solve(instance, matrix, n_t, limits)
        if result.feasible:
            logger.info(f"Oracle optimum: n_t={n_t}, cost {result.solution.total_cost:.3f}s")
            return n_t, result.solution
    raise AssertionError("one tour per segment is always feasible for a coverable instance")
