"""Benchmark table rows and their CSV form"""
import json
from dataclasses import asdict, dataclass
from pathlib import Path
from typing import Dict, List, Optional, TextIO, Union

import pandas as pd

from src.exceptions import InvalidArgumentError

PathLike = Union[str, Path]

BENCH_COLUMNS = [
    "instance",
    "n_s",
    "c_max",
    "n_t",
    "best_cost",
    "mean_cost",
    "pdb",
    "pdm",
    "success_rate",
    "mean_trial_time",
    "total_time",
]


@dataclass(frozen=True)
class BenchRow:
    """One instance's line in a benchmark table (costs and times in s, deviations in %)"""
    instance: str
    n_s: int
    c_max: float
    n_t: int
    best_cost: Optional[float]
    mean_cost: Optional[float]
    pdb: Optional[float]
    pdm: Optional[float]
    success_rate: float
    mean_trial_time: float
    total_time: float


def bench_frame(rows: List[BenchRow]) -> pd.DataFrame:
    return pd.DataFrame([asdict(r) for r in rows], columns=BENCH_COLUMNS)


def write_bench_csv(rows: List[BenchRow], sink: Union[PathLike, TextIO]) -> str:
    text = bench_frame(rows).to_csv(index=False, float_format="%.6f")
    if isinstance(sink, (str, Path)):
        Path(sink).write_text(text, encoding="utf-8")
    else:
        sink.write(text)
    return text


def load_references(path: PathLike) -> Dict[str, float]:
    """
    Read a JSON object mapping instance ids to reference costs.

    Raises:
        InvalidArgumentError: If the file is not such an object or a cost is not positive
    """
    try:
        data = json.loads(Path(path).read_text(encoding="utf-8"))
    except json.JSONDecodeError as e:
        raise InvalidArgumentError(f"reference file {path} is not valid JSON: {e}")
    if not isinstance(data, dict):
        raise InvalidArgumentError(f"reference file {path} must hold an object of instance -> cost")

    references = {}
    for key, value in data.items():
        try:
            cost = float(value)
        except (TypeError, ValueError):
            raise InvalidArgumentError(f"reference for {key!r} is not a number: {value!r}")
        if not cost > 0:
            raise InvalidArgumentError(f"reference for {key!r} must be positive, got {cost}")
        references[str(key)] = cost
    return references
