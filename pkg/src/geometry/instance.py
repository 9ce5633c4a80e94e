"""Physical problem instance: depot, pylons, segments, limits and budget"""
from typing import Any, Dict, List, Optional, Tuple

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, PrivateAttr, field_validator, model_validator

from src.config.constants import (
    DEFAULT_A_MAX,
    DEFAULT_V_INSP,
    DEFAULT_V_MAX,
    Direction,
)
from src.utils.validators import validate_point

Point = List[float]


def _check_point(value: Point) -> Point:
    if not validate_point(value):
        raise ValueError(f"expected 2 or 3 finite coordinates, got {value!r}")
    return [float(c) for c in value]


def as_xyz(point: Point) -> np.ndarray:
    """Lift a 2D point to 3D with z = 0."""
    coords = np.zeros(3)
    coords[: len(point)] = point
    return coords


class KinematicLimits(BaseModel):
    """UAV speed and acceleration limits used to price every leg"""
    model_config = ConfigDict(frozen=True)

    v_max: float = Field(DEFAULT_V_MAX, gt=0, allow_inf_nan=False, description="Transfer flight speed (m/s)")
    v_insp: float = Field(DEFAULT_V_INSP, gt=0, allow_inf_nan=False, description="Inspection speed (m/s)")
    a_max: float = Field(DEFAULT_A_MAX, gt=0, allow_inf_nan=False, description="Acceleration (m/s^2)")

    @model_validator(mode="after")
    def _inspection_not_faster(self) -> "KinematicLimits":
        if self.v_insp > self.v_max:
            raise ValueError(f"v_insp ({self.v_insp}) must not exceed v_max ({self.v_max})")
        return self


class Pylon(BaseModel):
    """A pylon position in the instance's Cartesian frame (m)"""
    model_config = ConfigDict(frozen=True, populate_by_name=True)

    id: int
    position: Point = Field(..., alias="pos")

    @field_validator("position")
    @classmethod
    def _check_position(cls, value: Point) -> Point:
        return _check_point(value)


class Segment(BaseModel):
    """A power line span between two pylons"""
    model_config = ConfigDict(frozen=True, populate_by_name=True)

    id: int = Field(..., ge=1)
    endpoint_a: int = Field(..., alias="a")
    endpoint_b: int = Field(..., alias="b")

    @model_validator(mode="after")
    def _distinct_endpoints(self) -> "Segment":
        if self.endpoint_a == self.endpoint_b:
            raise ValueError(f"segment {self.id} connects pylon {self.endpoint_a} to itself")
        return self


class Instance(BaseModel):
    """
    The physical inspection problem.

    Coverability against the budget needs the cost matrix, so it is checked
    by ``geometry.cost_matrix.validate_coverable`` at load time rather than
    here.
    """
    model_config = ConfigDict(frozen=True, populate_by_name=True)

    depot_start: Point = Field(..., alias="depot")
    depot_end: Optional[Point] = None
    pylons: List[Pylon]
    segments: List[Segment] = Field(..., min_length=1)
    limits: KinematicLimits = Field(default_factory=KinematicLimits)
    c_max: float = Field(..., gt=0, allow_inf_nan=False)
    d_max: Optional[float] = Field(None, gt=0, allow_inf_nan=False)
    name: Optional[str] = None

    _pylon_xyz: Optional[Dict[int, np.ndarray]] = PrivateAttr(default=None)
    _segment_by_id: Optional[Dict[int, Segment]] = PrivateAttr(default=None)

    @field_validator("depot_start")
    @classmethod
    def _check_depot(cls, value: Point) -> Point:
        return _check_point(value)

    @field_validator("depot_end")
    @classmethod
    def _check_depot_end(cls, value: Optional[Point]) -> Optional[Point]:
        return None if value is None else _check_point(value)

    @model_validator(mode="after")
    def _check_references(self) -> "Instance":
        pylon_ids = [p.id for p in self.pylons]
        if len(set(pylon_ids)) != len(pylon_ids):
            raise ValueError("pylon ids must be unique")

        known = set(pylon_ids)
        for segment in self.segments:
            for endpoint in (segment.endpoint_a, segment.endpoint_b):
                if endpoint not in known:
                    raise ValueError(f"segment {segment.id} references unknown pylon {endpoint}")

        ids = sorted(s.id for s in self.segments)
        if ids != list(range(1, len(ids) + 1)):
            raise ValueError("segment ids must be contiguous from 1")

        positions = {p.id: as_xyz(p.position) for p in self.pylons}
        for segment in self.segments:
            span = positions[segment.endpoint_b] - positions[segment.endpoint_a]
            if np.linalg.norm(span) <= 0:
                raise ValueError(f"segment {segment.id} has zero length")
        return self

    @property
    def n_segments(self) -> int:
        return len(self.segments)

    @property
    def end_point(self) -> Point:
        """Termination depot, equal to the start depot when not given"""
        return self.depot_end if self.depot_end is not None else self.depot_start

    def model_copy(self, *, update: Optional[Dict[str, Any]] = None, deep: bool = False) -> "Instance":
        copy = super().model_copy(update=update, deep=deep)
        if update and {"pylons", "segments"} & set(update):
            copy._pylon_xyz = copy._segment_by_id = None
        return copy

    def _lookups(self) -> Tuple[Dict[int, np.ndarray], Dict[int, Segment]]:
        if self._pylon_xyz is None:
            self._pylon_xyz = {p.id: as_xyz(p.position) for p in self.pylons}
            self._segment_by_id = {s.id: s for s in self.segments}
        return self._pylon_xyz, self._segment_by_id

    def endpoints(self, segment_id: int) -> Tuple[np.ndarray, np.ndarray]:
        """Pylon coordinates (A, B) of a segment, lifted to 3D."""
        pylons, segments = self._lookups()
        segment = segments[segment_id]
        return pylons[segment.endpoint_a], pylons[segment.endpoint_b]

    def entry_exit(self, segment_id: int, direction: Direction) -> Tuple[np.ndarray, np.ndarray]:
        """Where a visit in the given direction starts and ends."""
        a, b = self.endpoints(segment_id)
        return (a, b) if direction is Direction.AB else (b, a)

    def segment_length(self, segment_id: int) -> float:
        a, b = self.endpoints(segment_id)
        return float(np.linalg.norm(b - a))

    def total_length(self) -> float:
        return sum(self.segment_length(s.id) for s in self.segments)
