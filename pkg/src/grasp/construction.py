"""Greedy Random search Procedure: randomized cheapest insertion with an RCL"""
import math
from dataclasses import dataclass
from typing import List, Optional, Sequence

import numpy as np

from src.config.constants import END_DEPOT, START_DEPOT, Direction
from src.exceptions import InvalidArgumentError
from src.geometry.cost_matrix import CostMatrix
from src.geometry.instance import Instance
from src.grasp.config import GraspConfig
from src.model.costing import Evaluator, constrained_costs, route_cost
from src.model.solution import Solution


@dataclass(frozen=True)
class Insertion:
    """Placing a segment into tour m before slot p, in direction d"""
    segment_id: int
    tour_index: int
    position: int
    direction: Direction
    resulting_cost: float


@dataclass
class _InsertionTable:
    cost: np.ndarray
    tour: np.ndarray
    position: np.ndarray
    direction: np.ndarray
    segment: np.ndarray

    def __len__(self) -> int:
        return len(self.cost)

    def ranked(self) -> np.ndarray:
        """Ascending by resulting cost; ties toward lowest (tour, position, AB, segment)."""
        return np.lexsort((self.segment, self.direction, self.position, self.tour, np.round(self.cost, 9)))


def _insertion_table(
    routes: Sequence[Sequence[int]],
    tour_costs: np.ndarray,
    segments: np.ndarray,
    evaluator: Evaluator,
) -> _InsertionTable:
    costs = evaluator.costs
    candidates = np.empty(2 * len(segments), dtype=np.intp)
    candidates[0::2] = 2 * segments
    candidates[1::2] = 2 * segments + 1

    parts = []
    for m, route in enumerate(routes):
        seq = np.array([START_DEPOT, *route, END_DEPOT], dtype=np.intp)
        a, b = seq[:-1], seq[1:]
        added = costs[np.ix_(a, candidates)] + costs[np.ix_(candidates, b)].T - costs[a, b][:, None]
        penalized = constrained_costs(tour_costs[m] + added, evaluator.c_max, evaluator.k_c)
        positions, columns = np.indices(added.shape)
        parts.append((
            penalized.ravel(),
            np.full(added.size, m),
            positions.ravel(),
            (candidates[columns] & 1).ravel(),
            (candidates[columns] >> 1).ravel(),
        ))

    return _InsertionTable(*(np.concatenate(column) for column in zip(*parts)))


def enumerate_insertions(
    routes: Sequence[Sequence[int]],
    unused_segments: Sequence[int],
    evaluator: Evaluator,
) -> List[Insertion]:
    """
    All insertions of the unused segments into the given routes, ranked.

    Args:
        routes: Current tours as vertex sequences
        unused_segments: Segment ids still to place
        evaluator: Pricing context of the instance

    Returns:
        Insertions sorted by resulting penalized tour cost
    """
    tour_costs = np.array([route_cost(r, evaluator.costs) for r in routes])
    table = _insertion_table(routes, tour_costs, np.asarray(unused_segments, dtype=np.intp), evaluator)
    return [
        Insertion(
            segment_id=int(table.segment[i]),
            tour_index=int(table.tour[i]),
            position=int(table.position[i]),
            direction=Direction.AB if table.direction[i] == 0 else Direction.BA,
            resulting_cost=float(table.cost[i]),
        )
        for i in table.ranked()
    ]


def rcl_size(proposed: int, rcl_fraction: float) -> int:
    return max(1, math.ceil(rcl_fraction * proposed - 1e-12))


def grp_construct(
    instance: Instance,
    matrix: CostMatrix,
    n_t: int,
    config: GraspConfig,
    rng: np.random.Generator,
    evaluator: Optional[Evaluator] = None,
) -> Solution:
    """
    Build a covering (not necessarily feasible) solution with n_t tours.

    Each step ranks every insertion of every unused segment, keeps the
    cheapest ceil(rcl_fraction * |I|) as the restricted candidate list and
    applies one of them uniformly at random.
    """
    if n_t < 1:
        raise InvalidArgumentError(f"n_t must be at least 1, got {n_t}")

    evaluator = evaluator or Evaluator(matrix, instance.c_max, config.k_c)
    routes: List[List[int]] = [[] for _ in range(n_t)]
    tour_costs = np.full(n_t, route_cost((), evaluator.costs))
    unused = np.arange(1, instance.n_segments + 1, dtype=np.intp)

    while unused.size:
        table = _insertion_table(routes, tour_costs, unused, evaluator)
        order = table.ranked()
        pick = order[rng.integers(rcl_size(len(order), config.rcl_fraction))]

        m = int(table.tour[pick])
        segment_id = int(table.segment[pick])
        routes[m].insert(int(table.position[pick]), 2 * segment_id + int(table.direction[pick]))
        tour_costs[m] = route_cost(routes[m], evaluator.costs)
        unused = unused[unused != segment_id]

    return evaluator.solution(routes)
