"""Solution JSON: {"tours": [[{"seg", "dir"}]], "cost", "feasible", "per_tour_costs"}"""
import json
from pathlib import Path
from typing import Any, Dict, List, Union

from src.config.constants import Direction
from src.exceptions import InvalidArgumentError
from src.geometry.cost_matrix import vertex_of
from src.geometry.instance import Instance
from src.model.costing import Evaluator
from src.model.feasibility import check_feasible
from src.model.solution import Route, Solution, Visit

PathLike = Union[str, Path]


def solution_to_dict(solution: Solution, instance: Instance) -> Dict[str, Any]:
    """JSON-ready form of the solution with empty tours pruned."""
    solution = solution.pruned()
    return {
        "tours": [
            [{"seg": visit.segment_id, "dir": visit.direction.value} for visit in tour.visits]
            for tour in solution.tours
        ],
        "cost": solution.total_cost,
        "feasible": check_feasible(solution, instance).feasible,
        "per_tour_costs": [tour.cached_cost for tour in solution.tours],
    }


def dump_solution(solution: Solution, instance: Instance) -> str:
    return json.dumps(solution_to_dict(solution, instance), indent=2) + "\n"


def save_solution(solution: Solution, instance: Instance, path: PathLike) -> None:
    Path(path).write_text(dump_solution(solution, instance), encoding="utf-8")


def parse_visits(data: Dict[str, Any]) -> List[List[Visit]]:
    """
    Read the visit lists of a Solution document.

    Raises:
        InvalidArgumentError: If the document is malformed
    """
    try:
        tours = data["tours"]
        return [[Visit(int(v["seg"]), Direction(v["dir"])) for v in tour] for tour in tours]
    except (KeyError, TypeError, ValueError) as e:
        raise InvalidArgumentError(f"malformed solution document: {e}")


def unknown_segments(visits: List[List[Visit]], n_segments: int) -> List[int]:
    return sorted({v.segment_id for tour in visits for v in tour if not 1 <= v.segment_id <= n_segments})


def solution_from_dict(data: Dict[str, Any], evaluator: Evaluator) -> Solution:
    """
    Rebuild and re-price a Solution; stored costs are ignored.

    Raises:
        InvalidArgumentError: If the document is malformed or names a segment
            outside the instance
    """
    visits = parse_visits(data)
    n_segments = evaluator.matrix.n_segments
    unknown = unknown_segments(visits, n_segments)
    if unknown:
        raise InvalidArgumentError(f"solution references unknown segments {unknown}")
    routes: List[Route] = [tuple(vertex_of(v.segment_id, v.direction, n_segments) for v in tour) for tour in visits]
    return evaluator.solution(routes)


def read_solution_document(path: PathLike) -> Dict[str, Any]:
    try:
        return json.loads(Path(path).read_text(encoding="utf-8"))
    except json.JSONDecodeError as e:
        raise InvalidArgumentError(f"{path} is not valid JSON: {e}")


def load_solution(path: PathLike, evaluator: Evaluator) -> Solution:
    return solution_from_dict(read_solution_document(path), evaluator)
