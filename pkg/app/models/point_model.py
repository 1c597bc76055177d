# app/models/point_model.py
from typing import Annotated, Sequence, Union

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, field_validator

from app.utils.errors import ConditioningError, InvalidPointsError

# Half-width d of the strip D_d = {z : |Im z| < d}
StripParam = Annotated[float, Field(gt=0)]

# Gaps below this (relative to max(1, |a_i|)) make K' and K'' meaningless
COINCIDENCE_RTOL = 1e-13


def check_strip(d: float) -> float:
    if not np.isfinite(d) or d <= 0:
        raise ValueError(f"strip half-width must be positive, got {d!r}")
    return float(d)


def separation_ok(a: np.ndarray) -> bool:
    """True when `a` is strictly increasing with no near-coincident neighbours."""
    if a.size < 2:
        return True
    gaps = np.diff(a)
    scale = np.maximum(1.0, np.maximum(np.abs(a[:-1]), np.abs(a[1:])))
    return bool(np.all(gaps > COINCIDENCE_RTOL * scale))


class PointConfig(BaseModel):
    """
    Strictly ordered sampling points a_1 < ... < a_n with n >= 2.
    """
    model_config = ConfigDict(arbitrary_types_allowed=True, frozen=True)

    points: np.ndarray

    @field_validator("points", mode="before")
    @classmethod
    def _as_ordered_array(cls, value):
        a = np.array(value, dtype=float).reshape(-1)
        if a.size < 2:
            raise InvalidPointsError(f"need at least 2 sampling points, got {a.size}")
        if not np.all(np.isfinite(a)):
            raise InvalidPointsError("sampling points must be finite")
        if np.any(np.diff(a) <= 0):
            raise InvalidPointsError("sampling points must be strictly increasing")
        if not separation_ok(a):
            raise ConditioningError("sampling points are near-coincident")
        a.setflags(write=False)
        return a

    @property
    def n(self) -> int:
        return int(self.points.size)

    @property
    def gaps(self) -> np.ndarray:
        return np.diff(self.points)

    @property
    def min_gap(self) -> float:
        return float(self.gaps.min())

    @property
    def max_gap(self) -> float:
        return float(self.gaps.max())

    def to_list(self) -> list:
        return [float(v) for v in self.points]


PointsLike = Union[PointConfig, np.ndarray, Sequence[float]]


def as_points_array(points: PointsLike) -> np.ndarray:
    if isinstance(points, PointConfig):
        return points.points
    return np.asarray(points, dtype=float).reshape(-1)
