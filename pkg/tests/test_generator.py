"""Tests for pylon sampling and synthetic instance generation"""
import pandas as pd
import pytest

from src.config.constants import Topology
from src.core.generator import sample_instance, select_segments, suggest_budget, synthetic_instance
from src.exceptions import EmptySelectionError, InvalidArgumentError
from src.formats.instance_io import dump_instance, read_pylons, write_pylons
from src.geometry.cost_matrix import build_cost_matrix, validate_coverable
from src.oracle.exact import exact_min_tours


@pytest.fixture
def pylon_row():
    """Five pylons on the x axis at 50, 150, ..., 450 m"""
    return pd.DataFrame({"id": [1, 2, 3, 4, 5], "x": [50.0, 150.0, 250.0, 350.0, 450.0], "y": [0.0] * 5})


PAIRS = [(1, 2), (2, 3), (3, 4), (4, 5)]


def test_select_segments_any_endpoint(pylon_row):
    assert select_segments(pylon_row, PAIRS, [0.0, 0.0], 120.0) == [(1, 2)]
    assert select_segments(pylon_row, PAIRS, [0.0, 0.0], 160.0) == [(1, 2), (2, 3)]


def test_select_segments_both_endpoints(pylon_row):
    assert select_segments(pylon_row, PAIRS, [0.0, 0.0], 160.0, both_endpoints=True) == [(1, 2)]


def test_selection_grows_with_radius(pylon_row):
    sizes = [len(select_segments(pylon_row, PAIRS, [0.0, 0.0], d)) for d in (60, 160, 260, 360, 460)]
    assert sizes == sorted(sizes)
    assert sizes[-1] == len(PAIRS)


def test_select_segments_unknown_pylon(pylon_row):
    with pytest.raises(InvalidArgumentError):
        select_segments(pylon_row, [(1, 9)], [0.0, 0.0], 100.0)


def test_sample_instance_from_csv(tmp_path, pylon_row):
    path = tmp_path / "pylons.csv"
    write_pylons(pylon_row, path)
    instance = sample_instance(read_pylons(path), d_max=160.0, name="row")
    assert instance.n_segments == 2
    assert sorted(p.id for p in instance.pylons) == [1, 2, 3]
    assert [s.id for s in instance.segments] == [1, 2]
    assert instance.d_max == 160.0
    validate_coverable(instance, build_cost_matrix(instance))


def test_sample_instance_explicit_budget(pylon_row):
    instance = sample_instance(pylon_row, d_max=500.0, c_max=4000.0)
    assert instance.c_max == 4000.0
    assert instance.n_segments == 4


def test_sample_instance_empty_selection(pylon_row):
    with pytest.raises(EmptySelectionError):
        sample_instance(pylon_row, d_max=10.0, depot=[10_000.0, 10_000.0])


def test_synthetic_is_reproducible():
    first = synthetic_instance(6, seed=7)
    second = synthetic_instance(6, seed=7)
    assert dump_instance(first) == dump_instance(second)
    assert dump_instance(synthetic_instance(6, seed=8)) != dump_instance(first)


def test_synthetic_line_layout():
    instance = synthetic_instance(5, seed=1, span_range=(100.0, 200.0))
    assert instance.n_segments == 5
    assert len(instance.pylons) == 6
    for segment in instance.segments:
        assert 100.0 - 1e-2 <= instance.segment_length(segment.id) <= 200.0 + 1e-2
    validate_coverable(instance, build_cost_matrix(instance))


def test_synthetic_star_layout():
    instance = synthetic_instance(7, topology=Topology.STAR, seed=4, branches=3)
    assert instance.n_segments == 7
    # One root pylon per branch
    assert len(instance.pylons) == 7 + 3
    assert instance.name == "star-7-s4"


def test_synthetic_rejects_bad_arguments():
    with pytest.raises(InvalidArgumentError):
        synthetic_instance(0)
    with pytest.raises(InvalidArgumentError):
        synthetic_instance(3, span_range=(200.0, 100.0))


def test_suggested_budget_admits_target_tours():
    for seed in range(3):
        instance = synthetic_instance(4, seed=seed, target_tours=2)
        n_t, _ = exact_min_tours(instance, build_cost_matrix(instance))
        assert n_t <= 2


def test_suggest_budget_shrinks_with_more_tours():
    instance = synthetic_instance(4, seed=0)
    assert suggest_budget(instance, 3) < suggest_budget(instance, 2) < suggest_budget(instance, 1)
    with pytest.raises(InvalidArgumentError):
        suggest_budget(instance, 0)
