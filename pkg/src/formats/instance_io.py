"""Instance JSON and pylon CSV input/output"""
from pathlib import Path
from typing import List, Optional, Tuple, Union

import pandas as pd

from src.exceptions import InvalidArgumentError
from src.geometry.cost_matrix import CostMatrix, build_cost_matrix, validate_coverable
from src.geometry.instance import Instance
from src.utils.logger import setup_logger

logger = setup_logger(__name__)

PathLike = Union[str, Path]

PYLON_COLUMNS = ["id", "x", "y"]
SEGMENT_COLUMNS = ["a", "b"]


def parse_instance(text: str) -> Instance:
    """Parse Instance JSON; schema problems raise pydantic's ValidationError."""
    return Instance.model_validate_json(text)


def load_instance(path: PathLike, check_coverable: bool = True) -> Tuple[Instance, CostMatrix]:
    """
    Read an Instance JSON file and build its cost matrix.

    Args:
        path: Instance JSON path
        check_coverable: Reject instances with a segment no tour can cover

    Returns:
        (instance, cost matrix)

    Raises:
        ValidationError: If the document does not match the schema
        InfeasibleInstanceError: If check_coverable and some segment breaks the budget alone
    """
    instance = parse_instance(Path(path).read_text(encoding="utf-8"))
    matrix = build_cost_matrix(instance)
    if check_coverable:
        validate_coverable(instance, matrix)
    logger.info(f"Loaded instance {instance.name or Path(path).stem}: {instance.n_segments} segments, c_max={instance.c_max:.1f}s")
    return instance, matrix


def dump_instance(instance: Instance) -> str:
    return instance.model_dump_json(by_alias=True, exclude_none=True, indent=2) + "\n"


def save_instance(instance: Instance, path: PathLike) -> None:
    Path(path).write_text(dump_instance(instance), encoding="utf-8")
    logger.info(f"Instance written to {path}")


def read_pylons(path: PathLike) -> pd.DataFrame:
    """
    Read a pylon CSV with header ``id,x,y[,z]`` (meters, Cartesian).

    Raises:
        InvalidArgumentError: If required columns are missing or values are not numeric
    """
    frame = pd.read_csv(path)
    frame.columns = [str(c).strip().lower() for c in frame.columns]
    missing = [c for c in PYLON_COLUMNS if c not in frame.columns]
    if missing:
        raise InvalidArgumentError(f"pylon file {path} lacks columns {missing}")

    columns = PYLON_COLUMNS + (["z"] if "z" in frame.columns else [])
    frame = frame[columns]
    try:
        frame = frame.astype({"id": int, **{c: float for c in columns[1:]}})
    except (TypeError, ValueError) as e:
        raise InvalidArgumentError(f"pylon file {path} has non-numeric values: {e}")
    if frame["id"].duplicated().any():
        raise InvalidArgumentError(f"pylon file {path} repeats pylon ids")
    return frame.reset_index(drop=True)


def read_segment_pairs(path: PathLike) -> List[Tuple[int, int]]:
    """Read a segment CSV with header ``a,b`` of pylon ids."""
    frame = pd.read_csv(path)
    frame.columns = [str(c).strip().lower() for c in frame.columns]
    if not set(SEGMENT_COLUMNS) <= set(frame.columns):
        raise InvalidArgumentError(f"segment file {path} needs columns {SEGMENT_COLUMNS}")
    return [(int(a), int(b)) for a, b in frame[SEGMENT_COLUMNS].itertuples(index=False)]


def write_pylons(frame: pd.DataFrame, path: Optional[PathLike] = None) -> str:
    text = frame.to_csv(index=False)
    if path is not None:
        Path(path).write_text(text, encoding="utf-8")
    return text
