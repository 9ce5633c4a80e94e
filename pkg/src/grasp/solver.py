"""
GRASP trial driver.

Runs independent GRP + tabu search trials for increasing tour counts until a
trial returns a plan without budget penalty.
"""
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import List, Optional

import numpy as np

from src.config.constants import COST_TOLERANCE
from src.exceptions import InvalidArgumentError
from src.geometry.cost_matrix import CostMatrix, build_cost_matrix, validate_coverable, workload_lower_bound
from src.geometry.instance import Instance
from src.grasp.config import GraspConfig
from src.grasp.construction import grp_construct
from src.grasp.tabu import run_tabu_search
from src.model.costing import Evaluator
from src.model.metrics import pdb
from src.model.solution import Solution
from src.utils.logger import setup_logger

logger = setup_logger(__name__)


@dataclass(frozen=True)
class TrialResult:
    """Outcome of one GRP + tabu search trial"""
    trial: int
    n_t: int
    solution: Solution
    feasible: bool
    iterations: int
    elapsed: float

    @property
    def cost(self) -> float:
        return self.solution.total_cost

    @property
    def penalized_cost(self) -> float:
        return self.solution.total_penalized_cost


@dataclass(frozen=True)
class EscalationStep:
    n_t: int
    trials: int
    feasible_trials: int


@dataclass
class SolveReport:
    """Best plan of a solve run plus per-trial statistics"""
    seed: int
    n_t: int
    best: Optional[Solution]
    trials: List[TrialResult] = field(default_factory=list)
    escalation: List[EscalationStep] = field(default_factory=list)
    total_time: float = 0.0

    @property
    def feasible(self) -> bool:
        return self.best is not None

    @property
    def feasible_trials(self) -> List[TrialResult]:
        return [t for t in self.trials if t.feasible]

    @property
    def best_cost(self) -> Optional[float]:
        return self.best.total_cost if self.best is not None else None

    @property
    def mean_cost(self) -> Optional[float]:
        """Mean cost over the feasible trials of the final tour count."""
        costs = [t.cost for t in self.feasible_trials]
        return float(np.mean(costs)) if costs else None

    @property
    def success_rate(self) -> float:
        """Percentage of final-round trials that ended feasible."""
        if not self.trials:
            return 0.0
        return 100.0 * len(self.feasible_trials) / len(self.trials)

    @property
    def mean_trial_time(self) -> float:
        return float(np.mean([t.elapsed for t in self.trials])) if self.trials else 0.0

    @property
    def pdm_vs_best(self) -> Optional[float]:
        if self.best is None:
            return None
        return pdb(self.mean_cost, self.best_cost)

    def summary(self) -> dict:
        return {
            "seed": self.seed,
            "n_t": self.n_t,
            "feasible": self.feasible,
            "best_cost": self.best_cost,
            "mean_cost": self.mean_cost,
            "pdm_vs_best": self.pdm_vs_best,
            "success_rate": self.success_rate,
            "mean_trial_time": self.mean_trial_time,
            "total_time": self.total_time,
            "escalation": [
                {"n_t": s.n_t, "trials": s.trials, "feasible_trials": s.feasible_trials}
                for s in self.escalation
            ],
        }


def trial_rng(seed: int, n_t: int, trial: int) -> np.random.Generator:
    """Independent stream per (seed, n_t, trial), whatever process runs it."""
    return np.random.default_rng(np.random.SeedSequence([seed, n_t, trial]))


def run_trial(
    instance: Instance,
    matrix: CostMatrix,
    n_t: int,
    config: GraspConfig,
    seed: int,
    trial: int,
) -> TrialResult:
    """One GRP construction, followed by the tabu search unless local search is off."""
    started = time.perf_counter()
    rng = trial_rng(seed, n_t, trial)
    evaluator = Evaluator(matrix, instance.c_max, config.k_c)

    solution = grp_construct(instance, matrix, n_t, config, rng, evaluator=evaluator)
    iterations = 0
    if config.local_search:
        state = run_tabu_search(solution, instance, matrix, config, rng, evaluator=evaluator)
        solution, iterations = state.best, state.iterations

    return TrialResult(
        trial=trial,
        n_t=n_t,
        solution=solution,
        feasible=not solution.is_penalized,
        iterations=iterations,
        elapsed=time.perf_counter() - started,
    )


def _run_round(instance: Instance, matrix: CostMatrix, n_t: int, config: GraspConfig,
               seed: int, jobs: int) -> List[TrialResult]:
    if jobs <= 1 or config.trials == 1:
        return [run_trial(instance, matrix, n_t, config, seed, k) for k in range(config.trials)]

    with ProcessPoolExecutor(max_workers=jobs) as executor:
        futures = [
            executor.submit(run_trial, instance, matrix, n_t, config, seed, k)
            for k in range(config.trials)
        ]
        # Collected in submission order so the aggregate does not depend on scheduling
        return [f.result() for f in futures]


def _best_feasible(results: List[TrialResult]) -> Optional[TrialResult]:
    best: Optional[TrialResult] = None
    for result in results:
        if not result.feasible:
            continue
        if best is None or result.cost < best.cost - COST_TOLERANCE:
            best = result
        elif (result.cost <= best.cost + COST_TOLERANCE
              and result.solution.canonical_key() < best.solution.canonical_key()):
            best = result
    return best


def solve(
    instance: Instance,
    config: Optional[GraspConfig] = None,
    n_t_hint: Optional[int] = None,
    jobs: int = 1,
    matrix: Optional[CostMatrix] = None,
) -> SolveReport:
    """
    Solve an instance with GRASP, escalating the tour count when needed.

    Args:
        instance: Validated instance
        config: Solver parameters (defaults when omitted)
        n_t_hint: First tour count to try; the workload lower bound otherwise
        jobs: Worker processes for the trials of one round
        matrix: Precomputed cost matrix of ``instance``

    Returns:
        SolveReport with the best feasible plan of the first tour count that
        produced one, and the statistics of that round

    Raises:
        InfeasibleInstanceError: If a segment cannot be covered by any tour
        InvalidArgumentError: If n_t_hint or jobs is not positive
    """
    config = config or GraspConfig()
    if n_t_hint is not None and n_t_hint < 1:
        raise InvalidArgumentError(f"n_t_hint must be at least 1, got {n_t_hint}")
    if jobs < 1:
        raise InvalidArgumentError(f"jobs must be at least 1, got {jobs}")

    if matrix is None:
        matrix = build_cost_matrix(instance)
    validate_coverable(instance, matrix)

    seed = config.seed
    if seed is None:
        seed = int(np.random.SeedSequence().entropy % (2 ** 63))
        logger.info(f"No seed given; using seed {seed}")

    n_s = instance.n_segments
    n_t = n_t_hint or workload_lower_bound(instance, matrix)
    n_t = min(n_t, n_s)
    report = SolveReport(seed=seed, n_t=n_t, best=None)
    started = time.perf_counter()

    logger.info(f"Solving {instance.name or 'instance'}: n_s={n_s}, c_max={instance.c_max:.1f}s, start n_t={n_t}")
    while True:
        results = _run_round(instance, matrix, n_t, config, seed, jobs)
        feasible = sum(r.feasible for r in results)
        report.escalation.append(EscalationStep(n_t=n_t, trials=len(results), feasible_trials=feasible))
        report.n_t, report.trials = n_t, results
        logger.info(f"n_t={n_t}: {feasible}/{len(results)} trials feasible")

        winner = _best_feasible(results)
        if winner is not None:
            report.best = winner.solution.pruned()
            break
        if n_t >= n_s:
            logger.warning("No feasible plan found even with one tour per segment")
            break
        n_t += 1

    report.total_time = time.perf_counter() - started
    if report.best is not None:
        logger.info(
            f"Best cost {report.best_cost:.2f}s with {report.best.n_tours} tour(s), "
            f"mean {report.mean_cost:.2f}s, success rate {report.success_rate:.0f}%"
        )
    return report
