"""Conversion between Solutions and (X, T) variable assignments"""
from dataclasses import dataclass
from typing import List

import numpy as np

from src.config.constants import END_DEPOT, START_DEPOT
from src.exceptions import InvalidArgumentError
from src.ilp.model import IlpModel, Variable, XVar
from src.model.solution import Route, Solution


@dataclass(frozen=True)
class Assignment:
    """Values of X (n_t x n x n) and T (n_t x n)"""
    x: np.ndarray
    t: np.ndarray

    @property
    def n_t(self) -> int:
        return self.x.shape[0]

    @property
    def n(self) -> int:
        return self.x.shape[1]

    def value(self, var: Variable) -> float:
        if isinstance(var, XVar):
            return float(self.x[var.m, var.i, var.j])
        return float(self.t[var.m, var.i])

    @classmethod
    def zeros(cls, n_t: int, n: int) -> "Assignment":
        return cls(x=np.zeros((n_t, n, n), dtype=np.int64), t=np.zeros((n_t, n), dtype=np.int64))


def encode_solution(solution: Solution, n_t: int, n_segments: int, allow_empty_tours: bool = False) -> Assignment:
    """
    Encode the non-empty tours of ``solution`` as tour rows 0..k-1.

    Remaining rows stay unused, or take the direct depot arc when
    ``allow_empty_tours`` is set. t holds the 1-based position of each
    visited vertex, 0 elsewhere.

    Raises:
        InvalidArgumentError: If the solution has more non-empty tours than n_t
    """
    routes = [r for r in solution.routes if r]
    if len(routes) > n_t:
        raise InvalidArgumentError(f"solution has {len(routes)} tours but the model has n_t={n_t}")

    n = 2 + 2 * n_segments
    assignment = Assignment.zeros(n_t, n)
    for m, route in enumerate(routes):
        if any(not 2 <= v < n for v in route):
            raise InvalidArgumentError(f"tour {m} visits a vertex outside 2..{n - 1}")
        seq = [START_DEPOT, *route, END_DEPOT]
        for a, b in zip(seq, seq[1:]):
            assignment.x[m, a, b] = 1
        for position, vertex in enumerate(route, start=1):
            assignment.t[m, vertex] = position

    if allow_empty_tours:
        for m in range(len(routes), n_t):
            assignment.x[m, START_DEPOT, END_DEPOT] = 1
    return assignment


def decode_assignment(assignment: Assignment) -> List[Route]:
    """
    Follow the selected arcs of each tour from v_0 to v_1.

    Raises:
        InvalidArgumentError: If a tour row is not a single depot-to-depot path
    """
    routes: List[Route] = []
    n = assignment.n
    for m in range(assignment.n_t):
        x = assignment.x[m]
        if not x.any():
            routes.append(())
            continue

        route: List[int] = []
        current = START_DEPOT
        for _ in range(n):
            successors = np.flatnonzero(x[current] > 0.5)
            if len(successors) != 1:
                raise InvalidArgumentError(f"tour {m}: vertex {current} has {len(successors)} successors")
            current = int(successors[0])
            if current == END_DEPOT:
                break
            route.append(current)
        else:
            raise InvalidArgumentError(f"tour {m} does not reach the end depot")

        if int((x > 0.5).sum()) != len(route) + 1:
            raise InvalidArgumentError(f"tour {m} selects arcs off its depot path")
        routes.append(tuple(route))
    return routes


def objective_value(model: IlpModel, assignment: Assignment) -> float:
    """Value of the objective sum of c_ij x_mij."""
    return float(sum(coef * assignment.value(var) for coef, var in model.objective))


def check_dimensions(model: IlpModel, assignment: Assignment) -> None:
    if assignment.x.shape != (model.n_t, model.n, model.n) or assignment.t.shape != (model.n_t, model.n):
        raise InvalidArgumentError(
            f"assignment shapes {assignment.x.shape}/{assignment.t.shape} do not match "
            f"model n_t={model.n_t}, n={model.n}"
        )
