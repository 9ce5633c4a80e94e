"""Shared fixtures: small hand-built instances with known costs"""
import sys
from pathlib import Path

import pytest

# Add repository root to Python path
src_path = Path(__file__).parent.parent
sys.path.insert(0, str(src_path))

from src.geometry.cost_matrix import build_cost_matrix
from src.geometry.instance import Instance, KinematicLimits, Pylon, Segment
from src.model.costing import Evaluator


def make_instance(pylons, pairs, c_max=10_000.0, depot=(0.0, 0.0), depot_end=None, name="test", limits=None):
    """Instance from [(id, (x, y))] pylons and [(a, b)] spans, ids from 1."""
    return Instance(
        depot=list(depot),
        depot_end=list(depot_end) if depot_end is not None else None,
        pylons=[Pylon(id=i, pos=list(p)) for i, p in pylons],
        segments=[Segment(id=k, a=a, b=b) for k, (a, b) in enumerate(pairs, start=1)],
        limits=limits or KinematicLimits(v_max=5.0, v_insp=1.0, a_max=2.5),
        c_max=c_max,
        name=name,
    )


@pytest.fixture
def single_segment():
    """One 100 m span collinear with the depot, 10 m from endpoint A"""
    return make_instance([(1, (10.0, 0.0)), (2, (110.0, 0.0))], [(1, 2)])


@pytest.fixture
def three_in_line():
    """Three consecutive 20 m spans heading away from the depot"""
    return make_instance(
        [(1, (5.0, 0.0)), (2, (25.0, 0.0)), (3, (45.0, 0.0)), (4, (65.0, 0.0))],
        [(1, 2), (2, 3), (3, 4)],
        name="three-in-line",
    )


@pytest.fixture
def two_clusters():
    """Two 20 m spans on opposite sides of the depot; each fits the budget alone but not together"""
    instance = make_instance(
        [(1, (100.0, 0.0)), (2, (120.0, 0.0)), (3, (-100.0, 0.0)), (4, (-120.0, 0.0))],
        [(1, 2), (3, 4)],
        name="two-clusters",
    )
    single = build_cost_matrix(instance).single_segment_tour_costs()
    # Room for either single tour but not for both spans in one tour
    return instance.model_copy(update={"c_max": float(single.max()) + 1.0})


@pytest.fixture
def evaluator_for():
    def build(instance, k_c=1000.0):
        return Evaluator(build_cost_matrix(instance), instance.c_max, k_c)
    return build
