"""Adaptive tabu search over the four neighborhood moves"""
import time
from collections import deque
from dataclasses import dataclass, field
from typing import Deque, List, Optional, Set

import numpy as np

from src.config.constants import COST_TOLERANCE, MoveKind
from src.exceptions import InvalidArgumentError
from src.geometry.cost_matrix import CostMatrix
from src.geometry.instance import Instance
from src.grasp.config import GraspConfig, MoveWeights
from src.grasp.moves import Candidate, PlanView, propose_move
from src.model.costing import Evaluator
from src.model.solution import Solution, covers_all
from src.utils.logger import setup_logger

logger = setup_logger(__name__)


@dataclass
class SearchState:
    """Mutable state of one tabu search run"""
    current: Solution
    best: Solution
    weights: MoveWeights
    tabu: Deque[int]
    evaluator: Evaluator
    n_segments: int
    rng: np.random.Generator
    non_improving: int = 0
    iterations: int = 0
    history: List[float] = field(default_factory=list)

    @property
    def tabu_capacity(self) -> int:
        return self.tabu.maxlen or 0

    def view(self) -> PlanView:
        return PlanView(self.current, self.evaluator)


def apply_move(state: SearchState, move_id: int, rng: Optional[np.random.Generator] = None) -> Optional[Solution]:
    """
    Apply move ``move_id`` (1..4) to the current solution.

    Returns the candidate Solution, or None when the move has no legal
    non-identity target (for example a single visit in a single tour).
    """
    try:
        kind = MoveKind(move_id)
    except ValueError:
        raise InvalidArgumentError(f"move_id must be in 1..4, got {move_id}")

    candidate = propose_move(state.view(), kind, rng if rng is not None else state.rng)
    if candidate is None:
        return None
    solution = state.evaluator.replace(state.current, candidate.changes)
    assert covers_all(solution.routes, state.n_segments), f"move {kind.name} broke coverage"
    return solution


def _neighborhood(state: SearchState, view: PlanView, size: int) -> List[Candidate]:
    candidates: List[Candidate] = []
    for _ in range(size):
        excluded: Set[MoveKind] = set()
        while True:
            kind = state.weights.spin(state.rng, exclude=excluded)
            if kind is None:
                break
            candidate = propose_move(view, kind, state.rng)
            if candidate is not None:
                candidates.append(candidate)
                break
            excluded.add(kind)
    return candidates


def _initial_state(initial: Solution, evaluator: Evaluator, config: GraspConfig,
                   n_segments: int, rng: np.random.Generator) -> SearchState:
    return SearchState(
        current=initial,
        best=initial,
        weights=MoveWeights.from_config(config),
        tabu=deque([initial.canonical_hash()], maxlen=config.tabu_capacity_for(n_segments)),
        evaluator=evaluator,
        n_segments=n_segments,
        rng=rng,
        history=[initial.total_penalized_cost],
    )


def run_tabu_search(
    initial: Solution,
    instance: Instance,
    matrix: CostMatrix,
    config: GraspConfig,
    rng: np.random.Generator,
    evaluator: Optional[Evaluator] = None,
) -> SearchState:
    """
    Improve ``initial`` with the adaptive tabu search and return the final state.

    Each iteration samples ``neighborhood_size`` candidates by roulette wheel,
    accepts the cheapest one whose canonical hash is not tabu (or the cheapest
    overall when all are tabu) and adapts the move weights.
    """
    n_segments = instance.n_segments
    if not covers_all(initial.routes, n_segments):
        raise InvalidArgumentError("initial solution must cover every segment exactly once")

    evaluator = evaluator or Evaluator(matrix, instance.c_max, config.k_c)
    state = _initial_state(initial, evaluator, config, n_segments, rng)
    size = config.neighborhood_for(n_segments)
    deadline = time.monotonic() + config.time_limit if config.time_limit else None

    while state.non_improving < config.stop_after:
        if deadline is not None and time.monotonic() >= deadline:
            logger.debug(f"Tabu search hit its time limit after {state.iterations} iterations")
            break

        view = state.view()
        candidates = _neighborhood(state, view, size)
        if not candidates:
            logger.debug("No move has a legal target; stopping")
            break

        ranked = sorted(candidates, key=lambda c: c.penalized_total)
        chosen = next(
            (c for c in ranked if hash(view.key_after(c.changes)) not in state.tabu),
            ranked[0],
        )

        state.current = evaluator.replace(state.current, chosen.changes)
        assert covers_all(state.current.routes, n_segments), f"move {chosen.move.name} broke coverage"
        state.tabu.append(state.current.canonical_hash())
        state.iterations += 1

        state.weights.reward(ranked[0].move, config.p1)
        if state.current.total_penalized_cost < state.best.total_penalized_cost - COST_TOLERANCE:
            state.best = state.current
            state.non_improving = 0
            state.weights.reward(chosen.move, config.p2)
        else:
            state.non_improving += 1
        state.weights.reward(MoveKind.RANDOM_SHIFT, config.p1)

        if state.iterations % config.reset_period == 0:
            state.weights.reset()
        state.history.append(state.best.total_penalized_cost)

    return state


def tabu_search(
    initial: Solution,
    instance: Instance,
    matrix: CostMatrix,
    config: GraspConfig,
    rng: np.random.Generator,
) -> Solution:
    """Best solution found from ``initial``; never worse than ``initial``."""
    return run_tabu_search(initial, instance, matrix, config, rng).best
