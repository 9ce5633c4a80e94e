"""
Integer linear program of the multi-tour set TSP.

Binary x_{m,i,j} selects arc i -> j in tour m; integer t_{m,i} orders the
vertices of tour m for sub-tour elimination. Costs do not depend on m.
"""
from dataclasses import dataclass
from typing import Callable, Dict, FrozenSet, Iterator, List, Tuple, Union

import numpy as np

from src.config.constants import END_DEPOT, START_DEPOT, ConstraintTag, RowSense
from src.exceptions import InvalidArgumentError
from src.geometry.cost_matrix import CostMatrix
from src.geometry.instance import Instance
from src.utils.logger import setup_logger

logger = setup_logger(__name__)


@dataclass(frozen=True, order=True)
class XVar:
    m: int
    i: int
    j: int

    @property
    def name(self) -> str:
        return f"x_{self.m}_{self.i}_{self.j}"


@dataclass(frozen=True, order=True)
class TVar:
    m: int
    i: int

    @property
    def name(self) -> str:
        return f"t_{self.m}_{self.i}"


Variable = Union[XVar, TVar]
Term = Tuple[float, Variable]


@dataclass(frozen=True)
class LinearRow:
    """sum(coef * var) <sense> rhs"""
    name: str
    terms: Tuple[Term, ...]
    sense: RowSense
    rhs: float

    def activity(self, value: Callable[[Variable], float]) -> float:
        return float(sum(coef * value(var) for coef, var in self.terms))

    def violation(self, activity: float) -> float:
        """Amount by which ``activity`` breaks the row; 0 when it holds."""
        if self.sense is RowSense.LE:
            return max(0.0, activity - self.rhs)
        if self.sense is RowSense.GE:
            return max(0.0, self.rhs - activity)
        return abs(activity - self.rhs)


@dataclass(frozen=True)
class ConstraintGroup:
    tag: ConstraintTag
    rows: Tuple[LinearRow, ...]

    def __len__(self) -> int:
        return len(self.rows)


@dataclass(frozen=True)
class IlpModel:
    """A fully materialized model, immutable after build_model"""
    n_t: int
    n: int
    c_max: float
    matrix: CostMatrix
    objective: Tuple[Term, ...]
    groups: Dict[ConstraintTag, ConstraintGroup]
    fixed_zero: FrozenSet[XVar]
    allow_empty_tours: bool = False
    name: str = "mstsp"

    @property
    def t_upper(self) -> int:
        return self.n - 1

    @property
    def n_segments(self) -> int:
        return (self.n - 2) // 2

    def x_vars(self) -> Iterator[XVar]:
        for m in range(self.n_t):
            for i in range(self.n):
                for j in range(self.n):
                    yield XVar(m, i, j)

    def t_vars(self) -> Iterator[TVar]:
        for m in range(self.n_t):
            for i in range(self.n):
                yield TVar(m, i)

    @property
    def n_binaries(self) -> int:
        return self.n_t * self.n * self.n

    @property
    def n_integers(self) -> int:
        return self.n_t * self.n

    def rows(self) -> Iterator[Tuple[ConstraintTag, LinearRow]]:
        for tag in ConstraintTag:
            for row in self.groups[tag].rows:
                yield tag, row

    def row_counts(self) -> Dict[str, int]:
        return {tag.value: len(group) for tag, group in self.groups.items()}


def expected_row_counts(n_segments: int, n_t: int) -> Dict[ConstraintTag, int]:
    """Closed-form row counts of every constraint group."""
    n = 2 + 2 * n_segments
    return {
        ConstraintTag.START: n_t,
        ConstraintTag.END: n_t,
        ConstraintTag.SET_IN: n_segments,
        ConstraintTag.SET_OUT: n_segments,
        ConstraintTag.FLOW: n_t * (n - 2),
        ConstraintTag.BUDGET: n_t,
        ConstraintTag.MTZ: n_t * (n - 2) * (n - 3),
    }


def _usable_arcs(costs: np.ndarray, allow_empty_tours: bool) -> np.ndarray:
    usable = np.isfinite(costs)
    usable[START_DEPOT, END_DEPOT] = allow_empty_tours
    return usable


def build_model(instance: Instance, matrix: CostMatrix, n_t: int, allow_empty_tours: bool = False) -> IlpModel:
    """
    Materialize objective, constraint groups and fixed arcs for n_t tours.

    Args:
        instance: Instance providing c_max
        matrix: Its cost matrix
        n_t: Number of tours (each must depart unless allow_empty_tours)
        allow_empty_tours: Permit the direct v_0 -> v_1 arc at cost 0

    Returns:
        IlpModel with n_t*n^2 binaries and n_t*n integers
    """
    if n_t < 1:
        raise InvalidArgumentError(f"n_t must be at least 1, got {n_t}")

    n = matrix.n
    n_s = matrix.n_segments
    usable = _usable_arcs(matrix.costs, allow_empty_tours)
    arc_cost = np.where(usable, matrix.costs, 0.0)
    arc_cost[START_DEPOT, END_DEPOT] = 0.0
    vertices = range(2, n)

    def arcs_into(targets) -> List[Tuple[int, int]]:
        return [(i, j) for j in targets for i in range(n) if usable[i, j]]

    def arcs_out_of(sources) -> List[Tuple[int, int]]:
        return [(i, j) for i in sources for j in range(n) if usable[i, j]]

    objective = tuple(
        (float(arc_cost[i, j]), XVar(m, i, j))
        for m in range(n_t)
        for i in range(n)
        for j in range(n)
        if usable[i, j] and arc_cost[i, j] != 0.0
    )

    start_targets = [*vertices, END_DEPOT] if allow_empty_tours else list(vertices)
    end_sources = [START_DEPOT, *vertices] if allow_empty_tours else list(vertices)

    start = tuple(
        LinearRow(f"start_{m}", tuple((1.0, XVar(m, START_DEPOT, j)) for j in start_targets), RowSense.EQ, 1.0)
        for m in range(n_t)
    )
    end = tuple(
        LinearRow(f"end_{m}", tuple((1.0, XVar(m, i, END_DEPOT)) for i in end_sources), RowSense.EQ, 1.0)
        for m in range(n_t)
    )
    set_in = tuple(
        LinearRow(
            f"set_in_{s}",
            tuple((1.0, XVar(m, i, j)) for m in range(n_t) for i, j in arcs_into((2 * s, 2 * s + 1))),
            RowSense.EQ,
            1.0,
        )
        for s in range(1, n_s + 1)
    )
    set_out = tuple(
        LinearRow(
            f"set_out_{s}",
            tuple((1.0, XVar(m, i, j)) for m in range(n_t) for i, j in arcs_out_of((2 * s, 2 * s + 1))),
            RowSense.EQ,
            1.0,
        )
        for s in range(1, n_s + 1)
    )
    flow = tuple(
        LinearRow(
            f"flow_{m}_{v}",
            tuple((1.0, XVar(m, i, j)) for i, j in arcs_into((v,)))
            + tuple((-1.0, XVar(m, i, j)) for i, j in arcs_out_of((v,))),
            RowSense.EQ,
            0.0,
        )
        for m in range(n_t)
        for v in vertices
    )
    budget = tuple(
        LinearRow(
            f"budget_{m}",
            tuple((float(arc_cost[i, j]), XVar(m, i, j)) for i in range(n) for j in range(n)
                  if usable[i, j] and arc_cost[i, j] != 0.0),
            RowSense.LE,
            float(instance.c_max),
        )
        for m in range(n_t)
    )
    # t_i - t_j + n x_ij <= n - 1 over ordered pairs of segment vertices
    mtz = tuple(
        LinearRow(
            f"mtz_{m}_{i}_{j}",
            ((1.0, TVar(m, i)), (-1.0, TVar(m, j)), (float(n), XVar(m, i, j))),
            RowSense.LE,
            float(n - 1),
        )
        for m in range(n_t)
        for i in vertices
        for j in vertices
        if i != j
    )

    fixed_zero = frozenset(
        XVar(m, int(i), int(j)) for m in range(n_t) for i, j in zip(*np.nonzero(~usable))
    )
    groups = {
        ConstraintTag.START: ConstraintGroup(ConstraintTag.START, start),
        ConstraintTag.END: ConstraintGroup(ConstraintTag.END, end),
        ConstraintTag.SET_IN: ConstraintGroup(ConstraintTag.SET_IN, set_in),
        ConstraintTag.SET_OUT: ConstraintGroup(ConstraintTag.SET_OUT, set_out),
        ConstraintTag.FLOW: ConstraintGroup(ConstraintTag.FLOW, flow),
        ConstraintTag.BUDGET: ConstraintGroup(ConstraintTag.BUDGET, budget),
        ConstraintTag.MTZ: ConstraintGroup(ConstraintTag.MTZ, mtz),
    }

    model = IlpModel(
        n_t=n_t,
        n=n,
        c_max=float(instance.c_max),
        matrix=matrix,
        objective=objective,
        groups=groups,
        fixed_zero=fixed_zero,
        allow_empty_tours=allow_empty_tours,
        name=instance.name or "mstsp",
    )
    logger.debug(f"Built ILP: n_t={n_t}, n={n}, rows={model.row_counts()}")
    return model
