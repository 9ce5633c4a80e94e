"""
Tabu search neighborhood moves.

Each move works on a ``PlanView`` of the current solution and returns a
``Candidate``: the tours it rewrites and the resulting penalized total,
priced incrementally. Only the accepted candidate is materialized into a
Solution.
"""
from dataclasses import dataclass
from typing import Dict, List, Optional, Tuple

import numpy as np

from src.config.constants import COST_TOLERANCE, END_DEPOT, START_DEPOT, MoveKind
from src.model.costing import Evaluator, constrained_costs
from src.model.solution import Route, Solution, canonical_key


@dataclass(frozen=True)
class Candidate:
    """A neighbor of the current solution"""
    move: MoveKind
    changes: Dict[int, Route]
    penalized_total: float


class PlanView:
    """Array views of one solution, shared by every move of an iteration"""

    def __init__(self, solution: Solution, evaluator: Evaluator):
        self.solution = solution
        self.evaluator = evaluator
        self.costs = evaluator.costs
        self.routes: List[Route] = list(solution.routes)
        self.seqs = [np.array([START_DEPOT, *r, END_DEPOT], dtype=np.intp) for r in self.routes]
        self.tour_costs = np.array([t.cached_cost for t in solution.tours])
        self.tour_penalized = np.array([t.penalized_cost for t in solution.tours])
        self.total_penalized = solution.total_penalized_cost
        self.slots: List[Tuple[int, int]] = [(m, p) for m, r in enumerate(self.routes) for p in range(len(r))]

    @property
    def n_tours(self) -> int:
        return len(self.routes)

    def penalize(self, c):
        return constrained_costs(c, self.evaluator.c_max, self.evaluator.k_c)

    def random_slot(self, rng: np.random.Generator) -> Tuple[int, int]:
        return self.slots[int(rng.integers(len(self.slots)))]

    def removal_cost(self, m: int, p: int) -> float:
        """Cost of tour m once its visit at p is taken out."""
        seq = self.seqs[m]
        prev, v, nxt = seq[p], seq[p + 1], seq[p + 2]
        return float(self.tour_costs[m] - self.costs[prev, v] - self.costs[v, nxt] + self.costs[prev, nxt])

    def key_after(self, changes: Dict[int, Route]):
        routes = list(self.routes)
        for m, route in changes.items():
            routes[m] = route
        return canonical_key(routes)


def _pair(vertex: int) -> np.ndarray:
    return np.array([vertex & ~1, vertex | 1], dtype=np.intp)


def _insert(route: Route, position: int, vertex: int) -> Route:
    return route[:position] + (vertex,) + route[position:]


def _reinsertion_deltas(view: PlanView, m0: int, p0: int):
    """
    Penalized-total change of every reinsertion of the visit at (m0, p0).

    Yields (tour m, reduced sequence of m, delta array of shape (P, 2)) with
    column 0 for AB and column 1 for BA.
    """
    costs = view.costs
    v = view.routes[m0][p0]
    pair = _pair(v)
    reduced_route = view.routes[m0][:p0] + view.routes[m0][p0 + 1:]
    removed = view.removal_cost(m0, p0)
    removed_change = float(view.penalize(removed)) - view.tour_penalized[m0]

    for m in range(view.n_tours):
        if m == m0:
            seq = np.array([START_DEPOT, *reduced_route, END_DEPOT], dtype=np.intp)
            base, extra = removed, 0.0
        else:
            seq = view.seqs[m]
            base, extra = view.tour_costs[m], removed_change
        a, b = seq[:-1], seq[1:]
        added = costs[np.ix_(a, pair)] + costs[np.ix_(pair, b)].T - costs[a, b][:, None]
        delta = view.penalize(base + added) - view.tour_penalized[m] + extra
        yield m, reduced_route, delta


def _reinsertion_changes(view: PlanView, m0: int, reduced_route: Route, m: int, p: int, vertex: int) -> Dict[int, Route]:
    if m == m0:
        return {m0: _insert(reduced_route, p, vertex)}
    return {m0: reduced_route, m: _insert(view.routes[m], p, vertex)}


def _target_slots(view: PlanView, m0: int, p0: int) -> List[Tuple[int, int]]:
    """
    Reinsertion slots of the visit at (m0, p0) that change the plan.

    The origin slot is excluded, and a visit alone in its tour skips the
    other empty tours.
    """
    lone = len(view.routes[m0]) == 1
    slots = []
    for m, route in enumerate(view.routes):
        if m == m0:
            slots.extend((m0, p) for p in range(len(route)) if p != p0)
        elif not (lone and not route):
            slots.extend((m, p) for p in range(len(route) + 1))
    return slots


def random_shift(view: PlanView, rng: np.random.Generator) -> Optional[Candidate]:
    """Move a random visit to a random other slot, keeping the cheaper direction there."""
    if not view.slots:
        return None
    m0, p0 = view.random_slot(rng)
    targets = _target_slots(view, m0, p0)
    if not targets:
        return None
    m, p = targets[int(rng.integers(len(targets)))]

    for tour, reduced_route, delta in _reinsertion_deltas(view, m0, p0):
        if tour != m:
            continue
        column = int(np.argmin(delta[p]))
        vertex = int(_pair(view.routes[m0][p0])[column])
        return Candidate(
            move=MoveKind.RANDOM_SHIFT,
            changes=_reinsertion_changes(view, m0, reduced_route, m, p, vertex),
            penalized_total=view.total_penalized + float(delta[p, column]),
        )
    return None


def best_shift_from(view: PlanView, m0: int, p0: int) -> Optional[Candidate]:
    """Reinsert the visit at (m0, p0) at its cheapest slot and direction, origin excluded."""
    v = view.routes[m0][p0]
    lone = len(view.routes[m0]) == 1
    best: Optional[Tuple[float, int, int, int, Route]] = None

    for m, reduced_route, delta in _reinsertion_deltas(view, m0, p0):
        if lone and m != m0 and not view.routes[m]:
            continue
        if m == m0:
            delta = delta.copy()
            delta[p0, v & 1] = np.inf
        flat = int(np.argmin(delta))
        value = float(delta.flat[flat])
        if not np.isfinite(value):
            continue
        if best is None or value < best[0] - COST_TOLERANCE:
            p, column = divmod(flat, 2)
            best = (value, m, p, column, reduced_route)

    if best is None:
        return None
    value, m, p, column, reduced_route = best
    vertex = int(_pair(v)[column])
    return Candidate(
        move=MoveKind.BEST_SHIFT,
        changes=_reinsertion_changes(view, m0, reduced_route, m, p, vertex),
        penalized_total=view.total_penalized + value,
    )


def best_shift(view: PlanView, rng: np.random.Generator) -> Optional[Candidate]:
    if not view.slots:
        return None
    return best_shift_from(view, *view.random_slot(rng))


def _put(route: Route, placements: Dict[int, int]) -> Route:
    updated = list(route)
    for position, vertex in placements.items():
        updated[position] = vertex
    return tuple(updated)


def best_swap_from(view: PlanView, m0: int, p0: int) -> Optional[Candidate]:
    """Swap the visit at (m0, p0) with the partner and directions that minimize the penalized total."""
    costs = view.costs
    seq0 = view.seqs[m0]
    a = int(seq0[p0 + 1])
    a_prev, a_next = int(seq0[p0]), int(seq0[p0 + 2])
    a_pair = _pair(a)
    a_out = costs[a_prev, a] + costs[a, a_next]
    best: Optional[Tuple[float, int, int, int, int]] = None

    for m in range(view.n_tours):
        seq = view.seqs[m]
        if len(seq) <= 2:
            continue
        b = seq[1:-1]
        b_prev, b_next = seq[:-2], seq[2:]
        b_pairs = np.stack([b & ~1, b | 1], axis=1)
        b_out = costs[b_prev, b] + costs[b, b_next]
        # b' placed in a's slot, a' placed in b's slot
        b_in = costs[a_prev, b_pairs] + costs[b_pairs, a_next]
        a_in = costs[np.ix_(b_prev, a_pair)] + costs[np.ix_(a_pair, b_next)].T

        if m != m0:
            new_a_tour = view.tour_costs[m0] - a_out + b_in
            new_b_tour = view.tour_costs[m] - b_out[:, None] + a_in
            delta = (
                (view.penalize(new_a_tour) - view.tour_penalized[m0])[:, :, None]
                + (view.penalize(new_b_tour) - view.tour_penalized[m])[:, None, :]
            )
        else:
            new_tour = (view.tour_costs[m0] - a_out - b_out)[:, None, None] + b_in[:, :, None] + a_in[:, None, :]
            for j in (p0 - 1, p0 + 1):
                if 0 <= j < len(b):
                    adjacent = _adjacent_swap_costs(view, m0, min(p0, j))
                    new_tour[j] = adjacent if j > p0 else adjacent.T
            new_tour[p0] = np.inf
            delta = view.penalize(new_tour) - view.tour_penalized[m0]

        flat = int(np.argmin(delta))
        value = float(delta.flat[flat])
        if not np.isfinite(value):
            continue
        if best is None or value < best[0] - COST_TOLERANCE:
            j, rest = divmod(flat, 4)
            b_dir, a_dir = divmod(rest, 2)
            best = (value, m, j, b_dir, a_dir)

    if best is None:
        return None
    value, m, j, b_dir, a_dir = best
    b_vertex = int(_pair(view.routes[m][j])[b_dir])
    a_vertex = int(a_pair[a_dir])
    if m == m0:
        changes = {m0: _put(view.routes[m0], {p0: b_vertex, j: a_vertex})}
    else:
        changes = {m0: _put(view.routes[m0], {p0: b_vertex}), m: _put(view.routes[m], {j: a_vertex})}
    return Candidate(move=MoveKind.BEST_SWAP, changes=changes, penalized_total=view.total_penalized + value)


def _adjacent_swap_costs(view: PlanView, m: int, i: int) -> np.ndarray:
    """
    New costs of tour m after swapping its neighbors at i and i + 1.

    Indexed [direction of the visit that was at i+1, direction of the visit
    that was at i].
    """
    costs = view.costs
    seq = view.seqs[m]
    prev, x, y, nxt = seq[i], seq[i + 1], seq[i + 2], seq[i + 3]
    old = costs[prev, x] + costs[x, y] + costs[y, nxt]
    out = np.empty((2, 2))
    for dy, y2 in enumerate(_pair(int(y))):
        for dx, x2 in enumerate(_pair(int(x))):
            out[dy, dx] = view.tour_costs[m] - old + costs[prev, y2] + costs[y2, x2] + costs[x2, nxt]
    return out


def best_direction_switch(view: PlanView, rng: Optional[np.random.Generator] = None) -> Optional[Candidate]:
    """Flip the single visit whose reversal yields the lowest penalized total."""
    costs = view.costs
    best: Optional[Tuple[float, int, int]] = None

    for m in range(view.n_tours):
        seq = view.seqs[m]
        if len(seq) <= 2:
            continue
        verts, prev, nxt = seq[1:-1], seq[:-2], seq[2:]
        flipped = verts ^ 1
        new = view.tour_costs[m] - costs[prev, verts] - costs[verts, nxt] + costs[prev, flipped] + costs[flipped, nxt]
        delta = view.penalize(new) - view.tour_penalized[m]
        p = int(np.argmin(delta))
        value = float(delta[p])
        if best is None or value < best[0] - COST_TOLERANCE:
            best = (value, m, p)

    if best is None:
        return None
    value, m, p = best
    route = view.routes[m]
    flipped_route = route[:p] + (route[p] ^ 1,) + route[p + 1:]
    return Candidate(
        move=MoveKind.BEST_DIRECTION_SWITCH,
        changes={m: flipped_route},
        penalized_total=view.total_penalized + value,
    )


def best_swap(view: PlanView, rng: np.random.Generator) -> Optional[Candidate]:
    if len(view.slots) < 2:
        return None
    return best_swap_from(view, *view.random_slot(rng))


MOVES = {
    MoveKind.RANDOM_SHIFT: random_shift,
    MoveKind.BEST_SHIFT: best_shift,
    MoveKind.BEST_SWAP: best_swap,
    MoveKind.BEST_DIRECTION_SWITCH: best_direction_switch,
}


def propose_move(view: PlanView, kind: MoveKind, rng: np.random.Generator) -> Optional[Candidate]:
    """Run one move on the view; None means the move has no legal target."""
    return MOVES[MoveKind(kind)](view, rng)
