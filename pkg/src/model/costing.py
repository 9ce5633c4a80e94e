"""Tour costing and the soft budget penalty"""
from dataclasses import dataclass
from typing import Dict, Iterable, Sequence, Union

import numpy as np

from src.config.constants import DEFAULT_K_C, END_DEPOT, START_DEPOT
from src.exceptions import InvalidArgumentError
from src.geometry.cost_matrix import CostMatrix
from src.model.solution import Route, Solution, Tour, Visit


@dataclass(frozen=True)
class PenaltyConfig:
    """Multiplier applied to budget overshoot"""
    k_c: float = DEFAULT_K_C

    def __post_init__(self):
        if not self.k_c > 0:
            raise InvalidArgumentError(f"k_c must be positive, got {self.k_c}")


def _k(penalty: Union[PenaltyConfig, float]) -> float:
    return penalty.k_c if isinstance(penalty, PenaltyConfig) else float(penalty)


def constrained_cost(c: float, c_max: float, k: Union[PenaltyConfig, float] = DEFAULT_K_C) -> float:
    """
    Penalized tour cost c_con.

    Returns c within budget, otherwise c + (c - c_max) * k_c.
    """
    if c <= c_max:
        return c
    return c + (c - c_max) * _k(k)


def constrained_costs(c: np.ndarray, c_max: float, k_c: float) -> np.ndarray:
    """Vectorized constrained_cost."""
    return np.where(c <= c_max, c, c + (c - c_max) * k_c)


def route_cost(vertices: Sequence[int], costs: np.ndarray) -> float:
    """c(T) of a vertex sequence, depots implied at both ends."""
    if not len(vertices):
        return float(costs[START_DEPOT, END_DEPOT])
    total = costs[START_DEPOT, vertices[0]]
    for a, b in zip(vertices, vertices[1:]):
        total += costs[a, b]
    total += costs[vertices[-1], END_DEPOT]
    return float(total)


def tour_cost(tour: Union[Tour, Sequence[Visit], Sequence[int]], matrix: CostMatrix) -> float:
    """
    Recompute c(T) from the cost matrix.

    Args:
        tour: A Tour, a sequence of Visits or a sequence of vertex indices
        matrix: Cost matrix of the instance

    Returns:
        Tour duration in seconds
    """
    if isinstance(tour, Tour):
        vertices = tour.vertices
    else:
        vertices = tuple(v.vertex if isinstance(v, Visit) else int(v) for v in tour)
    return route_cost(vertices, matrix.costs)


class Evaluator:
    """
    Builds Tours and Solutions with cached costs for one instance.

    Holds the matrix, the budget and the penalty so that every solver prices
    plans the same way.
    """

    def __init__(self, matrix: CostMatrix, c_max: float, penalty: Union[PenaltyConfig, float] = DEFAULT_K_C):
        if not c_max > 0:
            raise InvalidArgumentError(f"c_max must be positive, got {c_max}")
        self.matrix = matrix
        self.costs = matrix.costs
        self.c_max = float(c_max)
        self.k_c = _k(penalty)

    def penalize(self, c: float) -> float:
        return constrained_cost(c, self.c_max, self.k_c)

    def tour(self, vertices: Iterable[int]) -> Tour:
        route = tuple(int(v) for v in vertices)
        c = route_cost(route, self.costs)
        return Tour(vertices=route, cached_cost=c, penalized_cost=self.penalize(c))

    def solution(self, routes: Iterable[Iterable[int]]) -> Solution:
        return self.assemble([self.tour(r) for r in routes])

    def replace(self, solution: Solution, changes: Dict[int, Route]) -> Solution:
        """Re-price only the tours listed in ``changes``; other Tour objects are shared."""
        tours = list(solution.tours)
        for index, route in changes.items():
            tours[index] = self.tour(route)
        return self.assemble(tours)

    @staticmethod
    def assemble(tours: Sequence[Tour]) -> Solution:
        return Solution(
            tours=tuple(tours),
            total_cost=sum(t.cached_cost for t in tours),
            total_penalized_cost=sum(t.penalized_cost for t in tours),
        )
