"""
Route plots: SVG through matplotlib and GeoJSON FeatureCollections.

Coordinates stay in the instance's Cartesian frame (meters); no geodetic
projection is applied.
"""
import io
import json
from pathlib import Path
from typing import Any, Dict, List, Optional, Union

import matplotlib
from matplotlib.colors import to_hex
from matplotlib.figure import Figure

from src.config.constants import Direction
from src.exceptions import InvalidArgumentError
from src.geometry.instance import Instance, as_xyz
from src.model.solution import Solution, Tour
from src.utils.logger import setup_logger

logger = setup_logger(__name__)

PathLike = Union[str, Path]

SEGMENT_COLOR = "#b0b0b0"
ROUTE_PALETTE = "tab10"


def tour_color(index: int) -> str:
    """Deterministic color of tour ``index``."""
    cmap = matplotlib.colormaps[ROUTE_PALETTE]
    return to_hex(cmap(index % cmap.N))


def tour_polyline(instance: Instance, tour: Tour) -> List[List[float]]:
    """Depot, then entry and exit of every visited segment, then the end depot (x, y)."""
    points = [as_xyz(instance.depot_start)]
    for visit in tour.visits:
        entry, exit_ = instance.entry_exit(visit.segment_id, Direction(visit.direction))
        points.extend([entry, exit_])
    points.append(as_xyz(instance.end_point))
    return [[float(p[0]), float(p[1])] for p in points]


def _check_covers(instance: Instance, solution: Solution) -> None:
    known = set(range(1, instance.n_segments + 1))
    seen = list(solution.segment_ids())
    if set(seen) - known:
        raise InvalidArgumentError(f"solution visits segments {sorted(set(seen) - known)} not in the instance")
    if sorted(seen) != sorted(known):
        raise InvalidArgumentError("solution does not cover the instance exactly once")


def render_svg(instance: Instance, solution: Solution, title: Optional[str] = None) -> str:
    """
    SVG with the segments as a grey underlay (``segment-<id>``) and one
    polyline per non-empty tour (``route-<k>``).
    """
    _check_covers(instance, solution)
    solution = solution.pruned()

    fig = Figure(figsize=(8, 8))
    ax = fig.add_subplot(111)
    for segment in instance.segments:
        a, b = instance.endpoints(segment.id)
        ax.plot([a[0], b[0]], [a[1], b[1]], color=SEGMENT_COLOR, linewidth=4, solid_capstyle="round",
                gid=f"segment-{segment.id}", zorder=1)

    for k, tour in enumerate(solution.tours):
        xy = tour_polyline(instance, tour)
        ax.plot([p[0] for p in xy], [p[1] for p in xy], color=tour_color(k), linewidth=1.5,
                gid=f"route-{k}", zorder=2)

    depot = as_xyz(instance.depot_start)
    ax.plot([depot[0]], [depot[1]], marker="s", color="black", linestyle="none", gid="depot", zorder=3)
    ax.set_aspect("equal", adjustable="datalim")
    ax.set_xlabel("x [m]")
    ax.set_ylabel("y [m]")
    ax.set_title(title or f"{instance.name or 'plan'}: {solution.n_tours} tour(s), {solution.total_cost:.1f} s")

    buffer = io.StringIO()
    with matplotlib.rc_context({"svg.hashsalt": "linepatrol", "svg.fonttype": "none"}):
        fig.savefig(buffer, format="svg", metadata={"Date": None})
    return buffer.getvalue()


def _line_feature(coordinates: List[List[float]], properties: Dict[str, Any]) -> Dict[str, Any]:
    return {
        "type": "Feature",
        "geometry": {"type": "LineString", "coordinates": coordinates},
        "properties": properties,
    }


def render_geojson(instance: Instance, solution: Solution) -> Dict[str, Any]:
    """FeatureCollection of segment and route LineStrings."""
    _check_covers(instance, solution)
    solution = solution.pruned()

    features = []
    for segment in instance.segments:
        a, b = instance.endpoints(segment.id)
        features.append(_line_feature(
            [[float(a[0]), float(a[1])], [float(b[0]), float(b[1])]],
            {"kind": "segment", "segment": segment.id},
        ))
    for k, tour in enumerate(solution.tours):
        features.append(_line_feature(
            tour_polyline(instance, tour),
            {"kind": "route", "tour": k, "cost": tour.cached_cost, "color": tour_color(k)},
        ))
    return {"type": "FeatureCollection", "features": features}


def write_render(instance: Instance, solution: Solution, svg_path: Optional[PathLike] = None,
                 geojson_path: Optional[PathLike] = None) -> None:
    if svg_path is not None:
        Path(svg_path).write_text(render_svg(instance, solution), encoding="utf-8")
        logger.info(f"SVG written to {svg_path}")
    if geojson_path is not None:
        Path(geojson_path).write_text(json.dumps(render_geojson(instance, solution), indent=1) + "\n", encoding="utf-8")
        logger.info(f"GeoJSON written to {geojson_path}")
