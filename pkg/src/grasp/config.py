"""GRASP solver configuration and adaptive move weights"""
import math
from dataclasses import dataclass, field
from typing import Iterable, Optional

import numpy as np
from pydantic import BaseModel, ConfigDict, Field

from src.config.constants import (
    DEFAULT_K_C,
    DEFAULT_P1,
    DEFAULT_P2,
    DEFAULT_RCL_FRACTION,
    DEFAULT_RESET_PERIOD,
    DEFAULT_STOP_AFTER,
    DEFAULT_TRIALS,
    DEFAULT_W0,
    TABU_SIZE_DIVISOR,
    MoveKind,
)


class GraspConfig(BaseModel):
    """Parameters of the GRP construction, the tabu search and the trial driver"""
    model_config = ConfigDict(frozen=True, extra="forbid")

    rcl_fraction: float = Field(DEFAULT_RCL_FRACTION, gt=0, le=1, description="Share of proposed insertions kept in the RCL")
    neighborhood_size: Optional[int] = Field(None, ge=1, description="Candidates per tabu iteration (default: n_s)")
    stop_after: int = Field(DEFAULT_STOP_AFTER, ge=1, description="Non-improving iterations before stopping")
    trials: int = Field(DEFAULT_TRIALS, ge=1)
    k_c: float = Field(DEFAULT_K_C, gt=0, allow_inf_nan=False)
    seed: Optional[int] = Field(None, ge=0)
    w0: float = Field(DEFAULT_W0, gt=0)
    p1: float = Field(DEFAULT_P1, ge=0)
    p2: float = Field(DEFAULT_P2, ge=0)
    reset_period: int = Field(DEFAULT_RESET_PERIOD, ge=1)
    tabu_size: Optional[int] = Field(None, ge=1, description="Tabu list capacity (default: ceil(n_s/4))")
    local_search: bool = Field(True, description="Run the tabu search after construction")
    time_limit: Optional[float] = Field(None, gt=0, description="Wall-clock cap on one tabu search (s)")

    def neighborhood_for(self, n_segments: int) -> int:
        return self.neighborhood_size or max(1, n_segments)

    def tabu_capacity_for(self, n_segments: int) -> int:
        return self.tabu_size or max(1, math.ceil(n_segments / TABU_SIZE_DIVISOR))


@dataclass
class MoveWeights:
    """Roulette-wheel scores of the four moves"""
    w0: float = DEFAULT_W0
    p1: float = DEFAULT_P1
    p2: float = DEFAULT_P2
    reset_period: int = DEFAULT_RESET_PERIOD
    w: np.ndarray = field(default=None)

    def __post_init__(self):
        if self.w is None:
            self.reset()

    @classmethod
    def from_config(cls, config: GraspConfig) -> "MoveWeights":
        return cls(w0=config.w0, p1=config.p1, p2=config.p2, reset_period=config.reset_period)

    def reset(self) -> None:
        self.w = np.full(len(MoveKind), float(self.w0))

    def reward(self, kind: MoveKind, prize: float) -> None:
        self.w[int(kind) - 1] += prize

    def probabilities(self) -> np.ndarray:
        return self.w / self.w.sum()

    def spin(self, rng: np.random.Generator, exclude: Iterable[MoveKind] = ()) -> Optional[MoveKind]:
        """Draw a move with probability w_i / sum(w); None when every weight is masked."""
        weights = self.w.copy()
        for kind in exclude:
            weights[int(kind) - 1] = 0.0
        cumulative = np.cumsum(weights)
        total = cumulative[-1]
        if total <= 0:
            return None
        index = int(np.searchsorted(cumulative, rng.random() * total, side="right"))
        return MoveKind(min(index, len(weights) - 1) + 1)
