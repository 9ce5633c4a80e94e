"""Solution representation: visits, tours and multi-tour plans"""
from dataclasses import dataclass
from typing import Tuple

from src.config.constants import Direction
from src.geometry.cost_matrix import segment_of, vertex_of

Route = Tuple[int, ...]
CanonicalKey = Tuple[Route, ...]


@dataclass(frozen=True)
class Visit:
    """Inspection of one segment in one direction"""
    segment_id: int
    direction: Direction

    @property
    def vertex(self) -> int:
        return vertex_of(self.segment_id, self.direction)

    @classmethod
    def from_vertex(cls, vertex: int) -> "Visit":
        segment_id, direction = segment_of(vertex)
        return cls(segment_id, direction)

    def flipped(self) -> "Visit":
        return Visit(self.segment_id, self.direction.flipped())


@dataclass(frozen=True)
class Tour:
    """
    One depot-to-depot flight.

    The visit order is kept as vertex indices; ``cached_cost`` is c(T) and
    ``penalized_cost`` is c_con(T) under the budget it was evaluated with.
    """
    vertices: Route
    cached_cost: float
    penalized_cost: float

    @property
    def visits(self) -> Tuple[Visit, ...]:
        return tuple(Visit.from_vertex(v) for v in self.vertices)

    @property
    def is_empty(self) -> bool:
        return not self.vertices

    def segment_ids(self) -> Tuple[int, ...]:
        return tuple(v // 2 for v in self.vertices)

    def __len__(self) -> int:
        return len(self.vertices)


@dataclass(frozen=True)
class Solution:
    """An ordered set of tours with cached totals"""
    tours: Tuple[Tour, ...]
    total_cost: float
    total_penalized_cost: float

    @property
    def routes(self) -> Tuple[Route, ...]:
        return tuple(t.vertices for t in self.tours)

    @property
    def n_tours(self) -> int:
        """Count of non-empty tours"""
        return sum(1 for t in self.tours if not t.is_empty)

    @property
    def is_penalized(self) -> bool:
        return self.total_penalized_cost > self.total_cost

    def segment_ids(self) -> Tuple[int, ...]:
        return tuple(v // 2 for tour in self.tours for v in tour.vertices)

    def canonical_key(self) -> CanonicalKey:
        """Tours sorted by their visit sequences, empty tours dropped."""
        return canonical_key(self.routes)

    def canonical_hash(self) -> int:
        return hash(self.canonical_key())

    def pruned(self) -> "Solution":
        """The same plan without empty tours."""
        kept = tuple(t for t in self.tours if not t.is_empty)
        if len(kept) == len(self.tours):
            return self
        return Solution(
            tours=kept,
            total_cost=sum(t.cached_cost for t in kept),
            total_penalized_cost=sum(t.penalized_cost for t in kept),
        )


def canonical_key(routes) -> CanonicalKey:
    return tuple(sorted(tuple(r) for r in routes if len(r)))


def covers_all(routes, n_segments: int) -> bool:
    """Every segment 1..n_segments appears exactly once across the routes."""
    seen = [v // 2 for route in routes for v in route]
    return len(seen) == n_segments and set(seen) == set(range(1, n_segments + 1))
