"""Tests for the ILP model, solution encoding, assignment audit and LP export"""
import io
import itertools

import numpy as np
import pytest

from src.config.constants import ConstraintTag
from src.exceptions import InvalidArgumentError
from src.geometry.cost_matrix import build_cost_matrix
from src.ilp.encoding import Assignment, decode_assignment, encode_solution, objective_value
from src.ilp.lp_writer import export_lp, lp_filename, render_lp
from src.ilp.model import XVar, build_model, expected_row_counts
from src.ilp.verify import CONSISTENCY_GROUP, verify
from src.model.costing import Evaluator
from src.model.feasibility import check_feasible
from tests.conftest import make_instance


def two_segments(c_max=10_000.0):
    return make_instance(
        [(1, (10.0, 0.0)), (2, (30.0, 0.0)), (3, (0.0, 15.0)), (4, (0.0, 40.0))],
        [(1, 2), (3, 4)],
        c_max=c_max,
        name="two",
    )


def all_plans(n_segments, max_tours):
    """Every plan of up to max_tours non-empty tours: partitions, orders and directions."""
    seen = set()
    segments = list(range(1, n_segments + 1))
    for labels in itertools.product(range(max_tours), repeat=n_segments):
        groups = [[s for s, label in zip(segments, labels) if label == m] for m in range(max_tours)]
        groups = [g for g in groups if g]
        orderings = [itertools.permutations(g) for g in groups]
        for orders in itertools.product(*[list(o) for o in orderings]):
            flat = [s for order in orders for s in order]
            for directions in itertools.product((0, 1), repeat=len(flat)):
                it = iter(directions)
                routes = tuple(tuple(2 * s + next(it) for s in order) for order in orders)
                key = tuple(sorted(routes))
                if key not in seen:
                    seen.add(key)
                    yield list(routes)


def test_variable_counts_two_segments_two_tours():
    instance = two_segments()
    model = build_model(instance, build_cost_matrix(instance), 2)
    assert model.n == 6
    assert model.n_binaries == 72 == len(list(model.x_vars()))
    assert model.n_integers == 12 == len(list(model.t_vars()))


def test_row_counts_match_closed_form():
    instance = two_segments()
    matrix = build_cost_matrix(instance)
    for n_t in (1, 2, 3):
        model = build_model(instance, matrix, n_t)
        expected = expected_row_counts(2, n_t)
        assert model.row_counts() == {tag.value: count for tag, count in expected.items()}


def test_start_rows_sum_departures_to_segment_vertices():
    instance = two_segments()
    model = build_model(instance, build_cost_matrix(instance), 2)
    start = model.groups[ConstraintTag.START].rows
    assert len(start) == 2
    for m, row in enumerate(start):
        assert [var for _, var in row.terms] == [XVar(m, 0, j) for j in range(2, 6)]
        assert row.rhs == 1.0


def test_unusable_arcs_are_fixed_to_zero():
    instance = two_segments()
    matrix = build_cost_matrix(instance)
    model = build_model(instance, matrix, 1)
    for var in model.fixed_zero:
        assert not np.isfinite(matrix[var.i, var.j]) or (var.i, var.j) == (0, 1)
    assert XVar(0, 0, 1) in model.fixed_zero
    assert XVar(0, 2, 3) in model.fixed_zero
    assert XVar(0, 0, 1) not in build_model(instance, matrix, 1, allow_empty_tours=True).fixed_zero


def test_rows_reference_declared_variables_only():
    instance = two_segments()
    model = build_model(instance, build_cost_matrix(instance), 2)
    declared = set(model.x_vars()) | set(model.t_vars())
    for _, row in model.rows():
        assert all(var in declared for _, var in row.terms)


def test_encode_single_tour():
    instance = make_instance([(1, (10.0, 0.0)), (2, (110.0, 0.0))], [(1, 2)])
    evaluator = Evaluator(build_cost_matrix(instance), instance.c_max)
    assignment = encode_solution(evaluator.solution([(2,)]), 1, 1)
    expected = np.zeros((1, 4, 4), dtype=int)
    expected[0, 0, 2] = expected[0, 2, 1] = 1
    np.testing.assert_array_equal(assignment.x, expected)
    assert assignment.t.tolist() == [[0, 0, 1, 0]]
    assert decode_assignment(assignment) == [(2,)]


def test_encode_rejects_too_many_tours():
    instance = two_segments()
    evaluator = Evaluator(build_cost_matrix(instance), instance.c_max)
    with pytest.raises(InvalidArgumentError):
        encode_solution(evaluator.solution([(2,), (4,)]), 1, 2)


def test_all_zero_assignment_violates_structure():
    instance = two_segments()
    model = build_model(instance, build_cost_matrix(instance), 2)
    groups = {v.group for v in verify(model, Assignment.zeros(2, 6))}
    assert {"start", "end", "set_in", "set_out"} <= groups


def test_empty_tour_violates_departure_unless_allowed():
    instance = two_segments()
    matrix = build_cost_matrix(instance)
    solution = Evaluator(matrix, instance.c_max).solution([(2, 4)])

    strict = build_model(instance, matrix, 2)
    violations = verify(strict, encode_solution(solution, 2, 2))
    assert "start_1" in {v.name for v in violations}

    relaxed = build_model(instance, matrix, 2, allow_empty_tours=True)
    assert verify(relaxed, encode_solution(solution, 2, 2, allow_empty_tours=True)) == []


def test_disconnected_subtour_violates_mtz():
    instance = make_instance(
        [(1, (10.0, 0.0)), (2, (30.0, 0.0)), (3, (0.0, 15.0)), (4, (0.0, 40.0)), (5, (50.0, 50.0)), (6, (70.0, 50.0))],
        [(1, 2), (3, 4), (5, 6)],
        name="three",
    )
    model = build_model(instance, build_cost_matrix(instance), 1)
    assignment = Assignment.zeros(1, 8)
    # Depot path through segment 1, plus a 2-cycle between segments 2 and 3
    for i, j in [(0, 2), (2, 1), (4, 6), (6, 4)]:
        assignment.x[0, i, j] = 1
    assignment.t[0, 2] = 1
    assignment.t[0, 4] = assignment.t[0, 6] = 3
    violations = verify(model, assignment)
    assert any(v.group == "mtz" for v in violations)
    assert all(v.group not in {"set_in", "set_out", "flow"} for v in violations)


def test_dimension_mismatch_raises():
    instance = two_segments()
    model = build_model(instance, build_cost_matrix(instance), 2)
    with pytest.raises(InvalidArgumentError):
        verify(model, Assignment.zeros(1, 6))


@pytest.mark.parametrize("n_segments", [1, 2, 3])
def test_verify_agrees_with_check_feasible_on_every_plan(n_segments):
    pylons = [(1, (10.0, 0.0)), (2, (30.0, 0.0)), (3, (0.0, 15.0)), (4, (0.0, 40.0)), (5, (-20.0, -5.0)), (6, (-20.0, -35.0))]
    loose = make_instance(pylons[: 2 * n_segments], [(2 * k + 1, 2 * k + 2) for k in range(n_segments)])
    matrix = build_cost_matrix(loose)
    single = matrix.single_segment_tour_costs()
    # Budget that admits every single-segment tour but not every combined one
    instance = loose.model_copy(update={"c_max": float(single.max()) * 1.6})
    evaluator = Evaluator(matrix, instance.c_max)

    models = {n_t: build_model(instance, matrix, n_t) for n_t in (1, 2)}
    checked = 0
    for routes in all_plans(n_segments, 2):
        solution = evaluator.solution(routes)
        assignment = encode_solution(solution, len(routes), n_segments)
        model = models[len(routes)]
        violations = verify(model, assignment)
        feasible = check_feasible(solution, instance).feasible
        assert (violations == []) == feasible
        assert all(v.group == "budget" for v in violations)
        assert objective_value(model, assignment) == pytest.approx(solution.total_cost, abs=1e-6)
        assert sorted(decode_assignment(assignment)) == sorted(tuple(r) for r in routes)
        checked += 1
    assert checked > 0


def test_consistency_check_catches_budget_disagreement():
    instance = two_segments(c_max=10_000.0)
    matrix = build_cost_matrix(instance)
    model = build_model(instance, matrix, 1)
    solution = Evaluator(matrix, instance.c_max).solution([(2, 4)])
    # Same arcs checked against a model whose budget row was built with a larger c_max
    tight_model = build_model(instance.model_copy(update={"c_max": 1.0}), matrix, 1)
    loose_rows = dict(tight_model.groups)
    loose_rows[ConstraintTag.BUDGET] = model.groups[ConstraintTag.BUDGET]
    mixed = tight_model.__class__(**{**tight_model.__dict__, "groups": loose_rows})
    violations = verify(mixed, encode_solution(solution, 1, 2))
    assert [v.group for v in violations] == [CONSISTENCY_GROUP]


def test_lp_document_declarations():
    instance = make_instance([(1, (10.0, 0.0)), (2, (110.0, 0.0))], [(1, 2)], name="one")
    model = build_model(instance, build_cost_matrix(instance), 1)
    document = render_lp(model)
    lines = document.splitlines()
    binary = lines[lines.index("binary") + 1: lines.index("general") - 1]
    general = lines[lines.index("general") + 1: lines.index("end") - 1]
    assert len(binary) == 16
    assert len(general) == 4
    assert " x_0_0_2" in binary
    assert lines[lines.index("minimize") + 1] == " obj:"
    assert " 0 <= t_0_3 <= 3" in lines
    assert " 0 <= x_0_2_3 <= 0" in lines
    assert document.endswith("end\n")


def test_lp_numbers_use_nine_significant_digits():
    instance = make_instance([(1, (10.0, 0.0)), (2, (110.0, 0.0))], [(1, 2)], name="one")
    model = build_model(instance, build_cost_matrix(instance), 1)
    document = render_lp(model)
    assert "   +104.4 x_0_0_2" in document


def test_lp_export_is_byte_identical(tmp_path):
    instance = two_segments()
    matrix = build_cost_matrix(instance)
    first = tmp_path / lp_filename("two", 2)
    export_lp(build_model(instance, matrix, 2), first)
    stream = io.StringIO()
    export_lp(build_model(instance, matrix, 2), stream)
    assert first.read_text(encoding="utf-8") == stream.getvalue()
    assert first.name == "two_nt2.lp"
