"""Edge-cost matrix over the direction-expanded vertex set"""
from dataclasses import dataclass
from typing import Optional, Tuple

import numpy as np

from src.config.constants import END_DEPOT, START_DEPOT, Direction
from src.exceptions import InfeasibleInstanceError, InvalidArgumentError
from src.geometry.instance import Instance, as_xyz
from src.geometry.kinematics import travel_times
from src.utils.logger import setup_logger

logger = setup_logger(__name__)

# Reserved value for arcs that no tour may use
UNUSABLE = np.inf


def vertex_of(segment_id: int, direction: Direction, n_segments: Optional[int] = None) -> int:
    """
    Vertex index of a segment visit: 2*id for AB, 2*id + 1 for BA.

    Args:
        segment_id: Segment id, 1-based
        direction: Traversal direction
        n_segments: Segment count; when given, the id is range-checked

    Raises:
        InvalidArgumentError: If the id is out of range
    """
    if segment_id < 1 or (n_segments is not None and segment_id > n_segments):
        raise InvalidArgumentError(f"segment id {segment_id} out of range")
    return 2 * segment_id + Direction(direction).offset


def segment_of(vertex: int) -> Tuple[int, Direction]:
    """Inverse of vertex_of: recover (segment id, direction) from a vertex."""
    if vertex < 2:
        raise InvalidArgumentError(f"vertex {vertex} is a depot, not a segment visit")
    return vertex // 2, Direction.AB if vertex % 2 == 0 else Direction.BA


@dataclass(frozen=True, eq=False)
class CostMatrix:
    """
    Dense asymmetric travel-plus-inspection times (s).

    ``costs[i, j]`` prices flying from the exit of vertex i to the entry of
    vertex j and then inspecting j's segment. ``approach`` and ``inspection``
    keep the two components apart: ``costs = approach + inspection[None, :]``
    on every usable entry. Unusable entries hold ``UNUSABLE`` (inf).
    """
    costs: np.ndarray
    approach: np.ndarray
    inspection: np.ndarray

    def __post_init__(self):
        for array in (self.costs, self.approach, self.inspection):
            array.setflags(write=False)

    @property
    def n(self) -> int:
        return self.costs.shape[0]

    @property
    def n_segments(self) -> int:
        return (self.n - 2) // 2

    def __getitem__(self, key):
        return self.costs[key]

    def single_tour_cost(self, vertex: int) -> float:
        """Cost of the tour depot -> vertex -> depot."""
        return float(self.costs[START_DEPOT, vertex] + self.costs[vertex, END_DEPOT])

    def single_segment_tour_costs(self) -> np.ndarray:
        """Cheaper direction of the one-segment tour, per segment (index 0 is segment 1)."""
        verts = np.arange(2, self.n)
        tours = self.costs[START_DEPOT, verts] + self.costs[verts, END_DEPOT]
        return np.minimum(tours[0::2], tours[1::2])

    def min_entry_costs(self) -> np.ndarray:
        """Cheapest usable arc into either vertex of each segment."""
        incoming = self.costs[:, 2:].min(axis=0)
        return np.minimum(incoming[0::2], incoming[1::2])


def _exits_and_entries(instance: Instance) -> Tuple[np.ndarray, np.ndarray]:
    n = 2 + 2 * instance.n_segments
    exits = np.zeros((n, 3))
    entries = np.zeros((n, 3))
    exits[START_DEPOT] = as_xyz(instance.depot_start)
    entries[END_DEPOT] = as_xyz(instance.end_point)
    # The start depot is never entered and the end depot never left
    entries[START_DEPOT] = exits[START_DEPOT]
    exits[END_DEPOT] = entries[END_DEPOT]

    for segment in instance.segments:
        a, b = instance.endpoints(segment.id)
        ab = vertex_of(segment.id, Direction.AB)
        entries[ab], exits[ab] = a, b
        entries[ab + 1], exits[ab + 1] = b, a
    return exits, entries


def build_cost_matrix(instance: Instance) -> CostMatrix:
    """
    Price every arc of the direction-expanded graph.

    cost(i -> j) = travel(|exit(i) - entry(j)|, v_max) + travel(length(j), v_insp)
    for segment vertices j, and travel only for the terminal depot.
    """
    limits = instance.limits
    n = 2 + 2 * instance.n_segments
    exits, entries = _exits_and_entries(instance)

    gaps = np.linalg.norm(exits[:, None, :] - entries[None, :, :], axis=2)
    approach = travel_times(gaps, limits.v_max, limits.a_max)

    lengths = np.zeros(n)
    lengths[2:] = np.repeat([instance.segment_length(s) for s in range(1, instance.n_segments + 1)], 2)
    inspection = travel_times(lengths, limits.v_insp, limits.a_max)

    costs = approach + inspection[None, :]

    costs[:, START_DEPOT] = UNUSABLE
    costs[END_DEPOT, :] = UNUSABLE
    np.fill_diagonal(costs, UNUSABLE)
    verts = np.arange(2, n)
    costs[verts, verts ^ 1] = UNUSABLE

    approach = approach.copy()
    approach[~np.isfinite(costs)] = UNUSABLE

    logger.debug(f"Built {n}x{n} cost matrix for {instance.n_segments} segments")
    return CostMatrix(costs=costs, approach=approach, inspection=inspection)


def validate_coverable(instance: Instance, matrix: CostMatrix) -> None:
    """
    Reject instances where some segment alone already breaks the budget.

    Raises:
        InfeasibleInstanceError: Naming the uncoverable segment ids
    """
    singles = matrix.single_segment_tour_costs()
    over = np.flatnonzero(singles > instance.c_max)
    if over.size:
        ids = [int(i) + 1 for i in over]
        worst = float(singles[over].max())
        raise InfeasibleInstanceError(
            f"segments {ids} cannot be covered within c_max={instance.c_max:g} s "
            f"(cheapest single-segment tour up to {worst:.3f} s)",
            segment_ids=ids,
        )


def workload_lower_bound(instance: Instance, matrix: CostMatrix) -> int:
    """Smallest tour count that the cheapest-entry workload allows, at least 1."""
    workload = float(matrix.min_entry_costs().sum())
    return max(1, int(np.ceil(workload / instance.c_max - 1e-12)))
