"""Tests for tour costing, the budget penalty, feasibility reports and metrics"""
import numpy as np
import pytest

from src.config.constants import Direction, ViolationKind
from src.exceptions import InvalidArgumentError
from src.geometry.cost_matrix import build_cost_matrix
from src.model.costing import Evaluator, PenaltyConfig, constrained_cost, constrained_costs, tour_cost
from src.model.feasibility import check_feasible
from src.model.metrics import pdb, pdm
from src.model.solution import Solution, Tour, Visit, canonical_key, covers_all


def test_single_segment_tour_cost(single_segment):
    matrix = build_cost_matrix(single_segment)
    cost = tour_cost([Visit(1, Direction.AB)], matrix)
    assert cost == pytest.approx(104.4 + matrix[2, 1])
    assert tour_cost([2], matrix) == cost


def test_empty_tour_with_coincident_depots_is_free(single_segment):
    matrix = build_cost_matrix(single_segment)
    assert tour_cost([], matrix) == 0.0


def test_reversing_a_visit_changes_approach_legs_only(three_in_line):
    matrix = build_cost_matrix(three_in_line)
    forward = [2, 4, 6]
    flipped = [2, 5, 6]
    expected = (
        matrix.approach[2, 5] + matrix.approach[5, 6] - matrix.approach[2, 4] - matrix.approach[4, 6]
    )
    assert tour_cost(flipped, matrix) - tour_cost(forward, matrix) == pytest.approx(expected)


@pytest.mark.parametrize("c,expected", [(900, 900), (1000, 1000), (1001, 2001)])
def test_constrained_cost_examples(c, expected):
    assert constrained_cost(c, 1000, PenaltyConfig(k_c=1000)) == expected


def test_constrained_cost_sweep():
    c_max, k_c = 1000.0, 1000.0
    sweep = np.linspace(900.0, 1100.0, 1000)
    vectorized = constrained_costs(sweep, c_max, k_c)
    for c, value in zip(sweep, vectorized):
        scalar = constrained_cost(float(c), c_max, k_c)
        if c <= c_max:
            assert scalar == c
            assert value == c
        else:
            assert scalar == pytest.approx(c + (c - c_max) * k_c, abs=1e-9)
            assert scalar > c
        assert scalar == pytest.approx(value, abs=1e-9)


def test_penalty_config_rejects_non_positive():
    with pytest.raises(InvalidArgumentError):
        PenaltyConfig(k_c=0)


def test_evaluator_totals(three_in_line, evaluator_for):
    evaluator = evaluator_for(three_in_line)
    solution = evaluator.solution([(2, 4), (6,)])
    assert solution.total_cost == pytest.approx(sum(t.cached_cost for t in solution.tours))
    assert solution.total_penalized_cost == pytest.approx(solution.total_cost)
    assert not solution.is_penalized

    replaced = evaluator.replace(solution, {1: (7,)})
    assert replaced.tours[0] is solution.tours[0]
    assert replaced.tours[1].vertices == (7,)


def test_canonical_key_ignores_tour_order_and_empties():
    assert canonical_key([(6,), (), (2, 4)]) == canonical_key([(2, 4), (6,)])
    assert covers_all([(2, 4), (7,)], 3)
    assert not covers_all([(2, 3), (6,)], 3)
    assert not covers_all([(2,), (6,)], 3)


def test_pruned_drops_empty_tours(three_in_line, evaluator_for):
    evaluator = evaluator_for(three_in_line)
    solution = evaluator.solution([(2, 4, 6), ()])
    pruned = solution.pruned()
    assert len(pruned.tours) == 1
    assert pruned.n_tours == solution.n_tours == 1
    assert pruned.total_cost == pytest.approx(solution.total_cost)


def test_feasible_solution_has_empty_report(three_in_line, evaluator_for):
    evaluator = evaluator_for(three_in_line)
    report = check_feasible(evaluator.solution([(2, 4, 6)]), three_in_line)
    assert report.feasible
    assert report.to_dict() == {"feasible": True, "violations": []}


def test_missing_segment_reported_once(three_in_line, evaluator_for):
    evaluator = evaluator_for(three_in_line)
    report = check_feasible(evaluator.solution([(2, 6)]), three_in_line)
    assert [v.kind for v in report.violations] == [ViolationKind.MISSING]
    assert report.violations[0].segment_id == 2


def test_duplicated_segment_reported(three_in_line, evaluator_for):
    evaluator = evaluator_for(three_in_line)
    report = check_feasible(evaluator.solution([(2, 4, 6), (5,)]), three_in_line)
    assert report.count(ViolationKind.DUPLICATED) == 1


def test_over_budget_overshoot(three_in_line, evaluator_for):
    evaluator = evaluator_for(three_in_line)
    tour = evaluator.tour((2, 4, 6))
    tight = three_in_line.model_copy(update={"c_max": tour.cached_cost - 1.0})
    solution = Solution(tours=(tour,), total_cost=tour.cached_cost, total_penalized_cost=tour.cached_cost)
    report = check_feasible(solution, tight)
    assert report.count(ViolationKind.OVER_BUDGET) == 1
    assert report.violations[0].overshoot == pytest.approx(1.0)
    assert report.violations[0].tour_index == 0


def test_pdb_examples():
    assert round(pdb(3499.8, 3178.6), 1) == 10.1
    assert round(pdb(3221.4, 3178.6), 1) == 1.3
    assert pdb(42.0, 42.0) == 0
    assert pdm(110.0, 100.0) == pytest.approx(10.0)
    with pytest.raises(InvalidArgumentError):
        pdb(1.0, 0.0)


def test_evaluator_rejects_bad_budget(single_segment):
    with pytest.raises(InvalidArgumentError):
        Evaluator(build_cost_matrix(single_segment), 0.0)


def test_tour_visits_round_trip():
    tour = Tour(vertices=(2, 5), cached_cost=1.0, penalized_cost=1.0)
    assert tour.visits == (Visit(1, Direction.AB), Visit(2, Direction.BA))
    assert [v.vertex for v in tour.visits] == [2, 5]
