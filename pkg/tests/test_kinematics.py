"""Tests for trapezoidal travel timing and the cost matrix"""
import math

import numpy as np
import pytest

from src.config.constants import Direction
from src.exceptions import InvalidArgumentError
from src.geometry.cost_matrix import UNUSABLE, build_cost_matrix, segment_of, vertex_of
from src.geometry.kinematics import travel_time, travel_times
from tests.conftest import make_instance


def integrate_profile(distance, cruise, accel, dt=1e-5):
    """Time-step a bang-coast-bang profile until the leg is covered."""
    if distance == 0:
        return 0.0
    position, speed, t = 0.0, 0.0, 0.0
    while True:
        braking_distance = speed * speed / (2 * accel)
        if position + braking_distance >= distance:
            # Brake the remainder analytically
            return t + speed / accel
        if speed < cruise:
            new_speed = min(cruise, speed + accel * dt)
        else:
            new_speed = cruise
        position += 0.5 * (speed + new_speed) * dt
        speed = new_speed
        t += dt


def closed_form_reference(distance, cruise, accel):
    """Independent piecewise evaluation via phase durations."""
    ramp_time = cruise / accel
    ramp_distance = 0.5 * accel * ramp_time ** 2
    if 2 * ramp_distance <= distance:
        return 2 * ramp_time + (distance - 2 * ramp_distance) / cruise
    peak_time = math.sqrt(distance / accel)
    return 2 * peak_time


def test_travel_time_examples():
    assert travel_time(0, 5, 2.5) == 0.0
    assert travel_time(10, 5, 2.5) == pytest.approx(4.0)
    assert travel_time(5, 5, 2.5) == pytest.approx(2 * math.sqrt(2), rel=1e-12)


def test_travel_time_continuous_at_branch_boundary():
    for cruise, accel in [(5.0, 2.5), (1.0, 2.5), (12.0, 0.7)]:
        boundary = cruise * cruise / accel
        cruising = boundary / cruise + cruise / accel
        triangular = 2 * math.sqrt(boundary / accel)
        assert abs(cruising - triangular) < 1e-9
        assert travel_time(boundary, cruise, accel) == pytest.approx(triangular, abs=1e-9)


def test_travel_time_matches_phase_reference():
    rng = np.random.default_rng(7)
    for _ in range(100):
        cruise = rng.uniform(0.5, 15.0)
        accel = rng.uniform(0.3, 5.0)
        boundary = cruise * cruise / accel
        distance = rng.choice([rng.uniform(0, boundary), rng.uniform(boundary, 20 * boundary), boundary])
        expected = closed_form_reference(distance, cruise, accel)
        assert travel_time(distance, cruise, accel) == pytest.approx(expected, rel=1e-6, abs=1e-12)


def test_travel_time_matches_integrator():
    for distance, cruise, accel in [(10.0, 5.0, 2.5), (5.0, 5.0, 2.5), (30.0, 5.0, 2.5), (0.2, 1.0, 2.5)]:
        assert travel_time(distance, cruise, accel) == pytest.approx(
            integrate_profile(distance, cruise, accel), rel=1e-4
        )


def test_travel_time_monotone():
    distances = np.linspace(0, 200, 2001)
    times = travel_times(distances, 5.0, 2.5)
    assert np.all(np.diff(times) >= 0)
    assert times[40] == pytest.approx(travel_time(distances[40], 5.0, 2.5))


@pytest.mark.parametrize("args", [(-1, 5, 2.5), (10, 0, 2.5), (10, 5, -1), (float("nan"), 5, 2.5), (float("inf"), 5, 2.5)])
def test_travel_time_rejects_bad_input(args):
    with pytest.raises(InvalidArgumentError):
        travel_time(*args)


def test_vertex_indexing():
    assert vertex_of(1, Direction.AB) == 2
    assert vertex_of(1, Direction.BA) == 3
    assert segment_of(2 * 7 + 1) == (7, Direction.BA)
    with pytest.raises(InvalidArgumentError):
        vertex_of(0, Direction.AB)
    with pytest.raises(InvalidArgumentError):
        vertex_of(3, Direction.AB, n_segments=2)


def test_cost_matrix_collinear_example(single_segment):
    matrix = build_cost_matrix(single_segment)
    assert matrix.n == 4
    assert matrix[0, 2] == pytest.approx(104.4)
    # Returning is travel only: from B (110 m) back to the depot
    assert matrix[2, 1] == pytest.approx(travel_time(110.0, 5.0, 2.5))
    assert matrix[0, 3] == pytest.approx(travel_time(110.0, 5.0, 2.5) + 100.4)


def test_cost_matrix_sentinels(three_in_line):
    matrix = build_cost_matrix(three_in_line)
    n = matrix.n
    assert np.all(matrix.costs[:, 0] == UNUSABLE)
    assert np.all(matrix.costs[1, :] == UNUSABLE)
    assert np.all(np.diag(matrix.costs) == UNUSABLE)
    for v in range(2, n):
        assert matrix[v, v ^ 1] == UNUSABLE
    assert np.isfinite(matrix[0, 1])


def test_direction_differs_by_approach_only(three_in_line):
    matrix = build_cost_matrix(three_in_line)
    assert matrix.inspection[2] == matrix.inspection[3]
    usable = np.isfinite(matrix.costs[:, 2]) & np.isfinite(matrix.costs[:, 3])
    np.testing.assert_allclose(
        (matrix.costs[:, 2] - matrix.costs[:, 3])[usable],
        (matrix.approach[:, 2] - matrix.approach[:, 3])[usable],
    )


def test_symmetric_depot_gives_equal_directions():
    instance = make_instance([(1, (-50.0, 30.0)), (2, (50.0, 30.0))], [(1, 2)])
    matrix = build_cost_matrix(instance)
    assert matrix[0, 2] == pytest.approx(matrix[0, 3], abs=1e-12)


def test_scaling_never_decreases_costs(three_in_line):
    doubled = three_in_line.model_copy(update={
        "pylons": [p.model_copy(update={"position": [2 * c for c in p.position]}) for p in three_in_line.pylons]
    })
    base = build_cost_matrix(three_in_line).costs
    scaled = build_cost_matrix(doubled).costs
    finite = np.isfinite(base)
    assert np.all(scaled[finite] >= base[finite] - 1e-12)
