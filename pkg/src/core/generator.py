"""Instance generation: sampling pylon data around a depot and synthetic layouts"""
import math
from typing import List, Optional, Sequence, Tuple

import numpy as np
import pandas as pd

from src.config.constants import DEFAULT_SPAN_RANGE, DEFAULT_TARGET_TOURS, Topology
from src.exceptions import EmptySelectionError, InvalidArgumentError
from src.geometry.cost_matrix import build_cost_matrix
from src.geometry.instance import Instance, KinematicLimits, Point, Pylon, Segment, as_xyz
from src.utils.logger import setup_logger
from src.utils.validators import require_positive

logger = setup_logger(__name__)

# Placeholder budget while the real one is derived from the cost matrix
_PROVISIONAL_C_MAX = 1.0


def suggest_budget(instance: Instance, target_tours: int = DEFAULT_TARGET_TOURS) -> float:
    """
    Budget under which ``target_tours`` tours always suffice.

    Returns sum(single-segment tour costs) / k + max(single-segment tour cost).
    Chaining segments never costs more than flying back to a shared depot in
    between, so list scheduling of the single tours onto k tours stays within
    this budget.
    """
    if target_tours < 1:
        raise InvalidArgumentError(f"target_tours must be at least 1, got {target_tours}")
    singles = build_cost_matrix(instance).single_segment_tour_costs()
    return float(singles.sum() / target_tours + singles.max())


def _with_budget(instance: Instance, c_max: Optional[float], target_tours: int) -> Instance:
    budget = c_max if c_max is not None else suggest_budget(instance, target_tours)
    return instance.model_copy(update={"c_max": float(require_positive("c_max", budget))})


def select_segments(
    pylons: pd.DataFrame,
    pairs: Sequence[Tuple[int, int]],
    depot: Point,
    d_max: float,
    both_endpoints: bool = False,
) -> List[Tuple[int, int]]:
    """
    Keep the spans with one endpoint (or both) within d_max of the depot.

    Distances are Euclidean in the pylon frame.
    """
    require_positive("d_max", d_max)
    coordinates = pylons.set_index("id")
    axes = [c for c in ("x", "y", "z") if c in coordinates.columns]
    origin = as_xyz(depot)[: len(axes)]

    def within(pylon_id: int) -> bool:
        if pylon_id not in coordinates.index:
            raise InvalidArgumentError(f"segment references unknown pylon {pylon_id}")
        position = coordinates.loc[pylon_id, axes].to_numpy(dtype=float)
        return bool(np.linalg.norm(position - origin) <= d_max)

    rule = all if both_endpoints else any
    return [(a, b) for a, b in pairs if rule((within(a), within(b)))]


def sample_instance(
    pylons: pd.DataFrame,
    d_max: float,
    pairs: Optional[Sequence[Tuple[int, int]]] = None,
    depot: Optional[Point] = None,
    limits: Optional[KinematicLimits] = None,
    c_max: Optional[float] = None,
    both_endpoints: bool = False,
    target_tours: int = DEFAULT_TARGET_TOURS,
    name: Optional[str] = None,
) -> Instance:
    """
    Build an instance from the spans of a pylon table that lie around a depot.

    Args:
        pylons: Frame with columns id, x, y and optionally z
        d_max: Selection radius around the depot (m)
        pairs: Spans as pylon id pairs; consecutive rows form the line when omitted
        depot: Depot position, the origin when omitted
        limits: Kinematic limits
        c_max: Budget (s); derived with suggest_budget when omitted
        both_endpoints: Require both endpoints within d_max
        target_tours: Tour count the derived budget is sized for
        name: Instance name

    Raises:
        EmptySelectionError: If no span lies within d_max
    """
    depot = list(depot) if depot is not None else [0.0, 0.0]
    if pairs is None:
        ids = pylons["id"].tolist()
        pairs = list(zip(ids[:-1], ids[1:]))

    selected = select_segments(pylons, pairs, depot, d_max, both_endpoints)
    if not selected:
        raise EmptySelectionError(f"no segment within d_max={d_max:g} m of the depot")

    used = sorted({p for pair in selected for p in pair})
    axes = [c for c in ("x", "y", "z") if c in pylons.columns]
    rows = pylons.set_index("id").loc[used, axes]
    instance = Instance(
        depot=depot,
        pylons=[Pylon(id=int(i), pos=[float(v) for v in row]) for i, row in zip(rows.index, rows.to_numpy())],
        segments=[Segment(id=k, a=int(a), b=int(b)) for k, (a, b) in enumerate(selected, start=1)],
        limits=limits or KinematicLimits(),
        c_max=_PROVISIONAL_C_MAX,
        d_max=d_max,
        name=name,
    )
    instance = _with_budget(instance, c_max, target_tours)
    logger.info(f"Selected {instance.n_segments} of {len(pairs)} segments within {d_max:g} m, c_max={instance.c_max:.1f}s")
    return instance


def _polyline(rng: np.random.Generator, start: np.ndarray, heading: float, count: int,
              span_range: Tuple[float, float]) -> List[np.ndarray]:
    """``count`` pylons after ``start``, wandering slightly around ``heading``."""
    points, current = [], start
    for _ in range(count):
        heading += rng.normal(0.0, 0.25)
        span = rng.uniform(*span_range)
        current = current + span * np.array([math.cos(heading), math.sin(heading)])
        points.append(current)
    return points


def synthetic_instance(
    n_segments: int,
    topology: Topology = Topology.LINE,
    seed: int = 0,
    limits: Optional[KinematicLimits] = None,
    c_max: Optional[float] = None,
    span_range: Tuple[float, float] = DEFAULT_SPAN_RANGE,
    branches: int = 3,
    target_tours: int = DEFAULT_TARGET_TOURS,
    name: Optional[str] = None,
) -> Instance:
    """
    Random instance with a power line around a depot at the origin.

    ``line`` lays one polyline of n_segments spans starting near the depot;
    ``star`` spreads the spans over up to ``branches`` lines radiating from it.
    The same arguments always give the same instance.
    """
    if n_segments < 1:
        raise InvalidArgumentError(f"n_segments must be at least 1, got {n_segments}")
    low, high = span_range
    if not 0 < low <= high:
        raise InvalidArgumentError(f"span range must satisfy 0 < low <= high, got {span_range}")

    rng = np.random.default_rng(seed)
    topology = Topology(topology)
    n_branches = 1 if topology is Topology.LINE else max(1, min(branches, n_segments))
    per_branch = [n_segments // n_branches + (1 if b < n_segments % n_branches else 0) for b in range(n_branches)]
    base_heading = rng.uniform(0.0, 2 * math.pi)

    pylons: List[Pylon] = []
    segments: List[Segment] = []
    for b, count in enumerate(per_branch):
        heading = base_heading + 2 * math.pi * b / n_branches
        root = rng.uniform(0.1, 0.3) * low * np.array([math.cos(heading), math.sin(heading)])
        points = [root, *_polyline(rng, root, heading, count, span_range)]
        first_pylon, first_segment = len(pylons) + 1, len(segments) + 1
        pylons.extend(
            Pylon(id=first_pylon + k, pos=[round(float(p[0]), 3), round(float(p[1]), 3)])
            for k, p in enumerate(points)
        )
        segments.extend(
            Segment(id=first_segment + k, a=first_pylon + k, b=first_pylon + k + 1) for k in range(count)
        )

    instance = Instance(
        depot=[0.0, 0.0],
        pylons=pylons,
        segments=segments,
        limits=limits or KinematicLimits(),
        c_max=_PROVISIONAL_C_MAX,
        name=name or f"{topology.value}-{n_segments}-s{seed}",
    )
    return _with_budget(instance, c_max, target_tours)
