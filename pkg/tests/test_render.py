"""Tests for SVG and GeoJSON route plots"""
import json

import pytest

from src.exceptions import InvalidArgumentError
from src.formats.render import render_geojson, render_svg, tour_color, tour_polyline, write_render


@pytest.fixture
def two_tour_plan(three_in_line, evaluator_for):
    return evaluator_for(three_in_line).solution([(2, 5), (), (6,)])


def test_svg_has_one_group_per_tour_and_segment(three_in_line, two_tour_plan):
    svg = render_svg(three_in_line, two_tour_plan)
    assert svg.lstrip().startswith("<?xml")
    assert 'id="route-0"' in svg
    assert 'id="route-1"' in svg
    assert 'id="route-2"' not in svg
    for segment_id in (1, 2, 3):
        assert f'id="segment-{segment_id}"' in svg


def test_svg_is_deterministic(three_in_line, two_tour_plan):
    assert render_svg(three_in_line, two_tour_plan) == render_svg(three_in_line, two_tour_plan)


def test_geojson_features(three_in_line, two_tour_plan):
    collection = render_geojson(three_in_line, two_tour_plan)
    assert collection["type"] == "FeatureCollection"
    kinds = [f["properties"]["kind"] for f in collection["features"]]
    assert kinds == ["segment"] * 3 + ["route"] * 2
    assert all(f["geometry"]["type"] == "LineString" for f in collection["features"])

    first_route = collection["features"][3]
    # Depot, entry and exit of segments 1 and 2 (reversed), depot
    assert first_route["geometry"]["coordinates"] == [
        [0.0, 0.0], [5.0, 0.0], [25.0, 0.0], [45.0, 0.0], [25.0, 0.0], [0.0, 0.0],
    ]
    assert first_route["properties"]["color"] == tour_color(0)
    json.dumps(collection)


def test_polyline_ends_at_end_depot(three_in_line, evaluator_for):
    shifted = three_in_line.model_copy(update={"depot_end": [80.0, 0.0]})
    tour = evaluator_for(shifted).tour((2, 4, 6))
    assert tour_polyline(shifted, tour)[-1] == [80.0, 0.0]


def test_render_rejects_incomplete_plan(three_in_line, evaluator_for):
    partial = evaluator_for(three_in_line).solution([(2, 4)])
    with pytest.raises(InvalidArgumentError):
        render_svg(three_in_line, partial)
    with pytest.raises(InvalidArgumentError):
        render_geojson(three_in_line, partial)


def test_write_render(tmp_path, three_in_line, two_tour_plan):
    svg_path, geojson_path = tmp_path / "plan.svg", tmp_path / "plan.geojson"
    write_render(three_in_line, two_tour_plan, svg_path=svg_path, geojson_path=geojson_path)
    assert svg_path.read_text(encoding="utf-8").rstrip().endswith("</svg>")
    assert json.loads(geojson_path.read_text(encoding="utf-8"))["type"] == "FeatureCollection"
