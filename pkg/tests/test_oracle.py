"""Tests for the exhaustive reference solver"""
import numpy as np
import pytest

from src.core.generator import synthetic_instance
from src.exceptions import InfeasibleInstanceError, OracleLimitError
from src.geometry.cost_matrix import build_cost_matrix
from src.geometry.instance import Instance
from src.ilp.encoding import encode_solution, objective_value
from src.ilp.model import build_model
from src.ilp.verify import verify
from src.model.costing import Evaluator
from src.model.feasibility import check_feasible
from src.oracle.exact import OracleLimits, exact_min_tours, exact_solve
from tests.conftest import make_instance


def random_feasible_costs(instance, matrix, n_t, rng, count):
    """Costs of random covering plans with at most n_t tours that respect the budget."""
    evaluator = Evaluator(matrix, instance.c_max)
    n_s = instance.n_segments
    costs = []
    for _ in range(count):
        order = rng.permutation(np.arange(1, n_s + 1))
        cuts = np.sort(rng.choice(np.arange(1, n_s), size=min(n_t - 1, n_s - 1), replace=False)) if n_s > 1 else []
        routes = [tuple(2 * int(s) + int(rng.integers(2)) for s in part) for part in np.split(order, cuts)]
        solution = evaluator.solution([r for r in routes if r])
        if check_feasible(solution, instance).feasible:
            costs.append(solution.total_cost)
    return costs


def test_single_segment_optimum_is_cheaper_direction(single_segment):
    matrix = build_cost_matrix(single_segment)
    result = exact_solve(single_segment, matrix, 1)
    assert result.solution.total_cost == pytest.approx(min(matrix.single_tour_cost(2), matrix.single_tour_cost(3)))


def test_symmetric_directions_tie_and_resolve_to_smallest_key():
    instance = make_instance([(1, (-50.0, 30.0)), (2, (50.0, 30.0))], [(1, 2)])
    matrix = build_cost_matrix(instance)
    assert abs(matrix.single_tour_cost(2) - matrix.single_tour_cost(3)) <= 1e-9
    result = exact_solve(instance, matrix, 1)
    assert result.solution.routes == ((2,),)


def test_oracle_beats_random_plans():
    instance = synthetic_instance(4, seed=12, target_tours=2)
    matrix = build_cost_matrix(instance)
    result = exact_solve(instance, matrix, 2)
    costs = random_feasible_costs(instance, matrix, 2, np.random.default_rng(0), 1000)
    assert costs
    assert all(result.solution.total_cost <= c + 1e-9 for c in costs)


def test_oracle_solutions_pass_both_checks():
    for seed in range(4):
        instance = synthetic_instance(3, seed=seed, target_tours=2)
        matrix = build_cost_matrix(instance)
        n_t, solution = exact_min_tours(instance, matrix)
        assert check_feasible(solution, instance).feasible
        model = build_model(instance, matrix, n_t)
        assignment = encode_solution(solution, n_t, instance.n_segments)
        assert verify(model, assignment) == []
        assert objective_value(model, assignment) == pytest.approx(solution.total_cost, abs=1e-6)


def test_all_segments_in_one_tour(three_in_line):
    n_t, solution = exact_min_tours(three_in_line, build_cost_matrix(three_in_line))
    assert n_t == 1
    assert solution.n_tours == 1


def test_two_clusters_need_two_tours(two_clusters):
    matrix = build_cost_matrix(two_clusters)
    assert not exact_solve(two_clusters, matrix, 1).feasible
    n_t, solution = exact_min_tours(two_clusters, matrix)
    assert n_t == 2
    assert solution.n_tours == 2


def test_larger_budget_never_needs_more_tours():
    instance = synthetic_instance(5, seed=2, target_tours=3)
    matrix = build_cost_matrix(instance)
    previous = None
    for factor in (1.0, 1.3, 1.8, 3.0):
        scaled = instance.model_copy(update={"c_max": instance.c_max * factor})
        n_t, _ = exact_min_tours(scaled, matrix)
        if previous is not None:
            assert n_t <= previous
        previous = n_t


def test_optimum_does_not_depend_on_segment_numbering():
    instance = synthetic_instance(4, seed=5, target_tours=2)
    document = instance.model_dump(by_alias=True)
    document["segments"] = sorted(
        ({**s, "id": instance.n_segments + 1 - s["id"]} for s in document["segments"]), key=lambda s: s["id"]
    )
    mirrored = Instance.model_validate(document)
    a = exact_solve(instance, build_cost_matrix(instance), 2)
    b = exact_solve(mirrored, build_cost_matrix(mirrored), 2)
    assert a.solution.total_cost == pytest.approx(b.solution.total_cost, abs=1e-9)


def test_limits_refuse_large_problems(three_in_line):
    matrix = build_cost_matrix(three_in_line)
    with pytest.raises(OracleLimitError) as excinfo:
        exact_solve(three_in_line, matrix, 1, OracleLimits(max_segments=2))
    assert excinfo.value.limit == "max_segments"
    with pytest.raises(OracleLimitError):
        exact_solve(three_in_line, matrix, 3, OracleLimits(max_tours=2))
    with pytest.raises(OracleLimitError) as excinfo:
        exact_solve(three_in_line, matrix, 2, OracleLimits(node_budget=3))
    assert excinfo.value.limit == "node_budget"


def test_min_tours_refuses_when_tour_limit_is_too_small(two_clusters):
    with pytest.raises(OracleLimitError):
        exact_min_tours(two_clusters, build_cost_matrix(two_clusters), OracleLimits(max_tours=1))


def test_min_tours_rejects_uncoverable_instance(single_segment):
    tight = single_segment.model_copy(update={"c_max": 10.0})
    with pytest.raises(InfeasibleInstanceError):
        exact_min_tours(tight, build_cost_matrix(tight))
