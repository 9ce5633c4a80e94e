"""Inspection planner: one object shared by the CLI and the web front end"""
import json
from pathlib import Path
from typing import Any, Dict, Optional, Union

from src.config.settings import get_settings
from src.exceptions import InvalidArgumentError
from src.formats.bench_io import BenchRow
from src.formats.instance_io import load_instance
from src.formats.solution_io import load_solution
from src.geometry.cost_matrix import CostMatrix, build_cost_matrix, workload_lower_bound
from src.geometry.instance import Instance
from src.grasp.config import GraspConfig
from src.grasp.solver import SolveReport, solve
from src.ilp.model import IlpModel, build_model
from src.model.costing import Evaluator
from src.model.feasibility import FeasibilityReport, check_feasible
from src.model.metrics import pdb, pdm
from src.model.solution import Solution
from src.oracle.exact import OracleLimits, OracleResult, exact_min_tours, exact_solve
from src.utils.logger import setup_logger

logger = setup_logger(__name__)

PathLike = Union[str, Path]


def build_grasp_config(overrides: Optional[Dict[str, Any]] = None, config_file: Optional[PathLike] = None) -> GraspConfig:
    """
    Assemble a GraspConfig.

    Precedence, lowest first: built-in defaults, environment defaults
    (LINEPATROL_TRIALS, LINEPATROL_K_C), the JSON block in ``config_file``,
    then ``overrides`` entries that are not None.

    Raises:
        InvalidArgumentError: If the config file is not a JSON object
        ValidationError: If a value is out of range or a key is unknown
    """
    solver_defaults = get_settings().solver
    values: Dict[str, Any] = {"trials": solver_defaults.trials, "k_c": solver_defaults.k_c}

    if config_file is not None:
        try:
            block = json.loads(Path(config_file).read_text(encoding="utf-8"))
        except json.JSONDecodeError as e:
            raise InvalidArgumentError(f"config file {config_file} is not valid JSON: {e}")
        if not isinstance(block, dict):
            raise InvalidArgumentError(f"config file {config_file} must hold a JSON object")
        values.update(block)

    values.update({k: v for k, v in (overrides or {}).items() if v is not None})
    return GraspConfig(**values)


class InspectionPlanner:
    """
    Holds an instance with its cost matrix and runs every planning task on it.
    """

    def __init__(self, instance: Instance, matrix: Optional[CostMatrix] = None):
        self.settings = get_settings()
        self.instance = instance
        self.matrix = matrix if matrix is not None else build_cost_matrix(instance)
        self.evaluator = Evaluator(self.matrix, instance.c_max)

    @classmethod
    def from_file(cls, path: PathLike, check_coverable: bool = True) -> "InspectionPlanner":
        instance, matrix = load_instance(path, check_coverable=check_coverable)
        if instance.name is None:
            instance = instance.model_copy(update={"name": Path(path).stem})
        return cls(instance, matrix)

    @property
    def name(self) -> str:
        return self.instance.name or "instance"

    def summary(self) -> Dict[str, Any]:
        """Size and workload figures of the instance."""
        inspection = self.matrix.inspection[2::2]
        return {
            "name": self.name,
            "n_segments": self.instance.n_segments,
            "c_max": self.instance.c_max,
            "total_length": self.instance.total_length(),
            "total_inspection_time": float(inspection.sum()),
            "n_t_lower_bound": workload_lower_bound(self.instance, self.matrix),
        }

    def solve(self, config: Optional[GraspConfig] = None, n_t_hint: Optional[int] = None,
              jobs: Optional[int] = None) -> SolveReport:
        logger.info("=" * 60)
        logger.info(f"GRASP on {self.name}")
        logger.info("=" * 60)
        return solve(
            self.instance,
            config=config,
            n_t_hint=n_t_hint,
            jobs=jobs or self.settings.runtime.jobs,
            matrix=self.matrix,
        )

    def exact(self, limits: Optional[OracleLimits] = None, n_t: Optional[int] = None) -> OracleResult:
        """Oracle optimum for a fixed n_t, or for the smallest feasible n_t when omitted."""
        logger.info(f"Oracle on {self.name}")
        if n_t is not None:
            return exact_solve(self.instance, self.matrix, n_t, limits)
        best_n_t, solution = exact_min_tours(self.instance, self.matrix, limits)
        return OracleResult(n_t=best_n_t, solution=solution, explored=0)

    def verify(self, solution: Solution) -> FeasibilityReport:
        return check_feasible(solution, self.instance)

    def load_solution(self, path: PathLike) -> Solution:
        return load_solution(path, self.evaluator)

    def ilp(self, n_t: int, allow_empty_tours: bool = False) -> IlpModel:
        return build_model(self.instance, self.matrix, n_t, allow_empty_tours=allow_empty_tours)

    def bench_row(self, report: SolveReport, reference: Optional[float] = None) -> BenchRow:
        """
        Table row for a solve report.

        Deviations are taken against ``reference`` and left empty without one.
        """
        best, mean = report.best_cost, report.mean_cost
        return BenchRow(
            instance=self.name,
            n_s=self.instance.n_segments,
            c_max=self.instance.c_max,
            n_t=report.best.n_tours if report.best is not None else report.n_t,
            best_cost=best,
            mean_cost=mean,
            pdb=pdb(best, reference) if best is not None and reference is not None else None,
            pdm=pdm(mean, reference) if mean is not None and reference is not None else None,
            success_rate=report.success_rate,
            mean_trial_time=report.mean_trial_time,
            total_time=report.total_time,
        )
