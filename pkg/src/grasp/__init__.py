"""GRASP module: GRP construction, adaptive tabu search and the trial driver"""
from src.grasp.config import GraspConfig, MoveWeights
from src.grasp.construction import Insertion, enumerate_insertions, grp_construct, rcl_size
from src.grasp.moves import Candidate, PlanView, propose_move
from src.grasp.tabu import SearchState, apply_move, run_tabu_search, tabu_search
from src.grasp.solver import SolveReport, TrialResult, run_trial, solve

__all__ = [
    "GraspConfig",
    "MoveWeights",
    "Insertion",
    "enumerate_insertions",
    "grp_construct",
    "rcl_size",
    "Candidate",
    "PlanView",
    "propose_move",
    "SearchState",
    "apply_move",
    "run_tabu_search",
    "tabu_search",
    "SolveReport",
    "TrialResult",
    "run_trial",
    "solve",
]
