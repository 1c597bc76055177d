# app/models/report_model.py
from enum import Enum
from typing import List, Optional

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, field_validator

from app.models.point_model import PointConfig


class EnergyReport(BaseModel):
    n: int
    energy: float
    grad_inf_norm: float
    f_d: float
    certificate: float


class InitStrategy(str, Enum):
    AUTO = "auto"
    USER = "user"


class SolverConfig(BaseModel):
    tol_step: float = Field(default=1e-14, gt=0)
    max_iter: int = Field(default=200, ge=1)
    damping: bool = True
    init_strategy: InitStrategy = InitStrategy.AUTO
    initial_points: Optional[List[float]] = None


class IterationRecord(BaseModel):
    iteration: int
    energy: float
    step_inf_norm: float
    alpha: float


class SolveResult(BaseModel):
    model_config = ConfigDict(arbitrary_types_allowed=True)

    points: PointConfig
    iterations: int
    final_step_inf_norm: float
    energy_report: EnergyReport
    trace: List[IterationRecord] = []


class EvalGrid(BaseModel):
    """Equispaced evaluation points x_l = x1 + (x_last - x1)/(count - 1)*(l - 1)."""
    x1: float
    x_last: float
    count: int = Field(default=1001, ge=2)

    @field_validator("x_last")
    @classmethod
    def _ordered(cls, value, info):
        x1 = info.data.get("x1")
        if x1 is not None and value <= x1:
            raise ValueError("x_last must exceed x1")
        return value

    @property
    def spacing(self) -> float:
        return (self.x_last - self.x1) / (self.count - 1)

    @property
    def points(self) -> np.ndarray:
        ell = np.arange(self.count, dtype=float)
        return self.x1 + (self.x_last - self.x1) / (self.count - 1) * ell


class ErrorRow(BaseModel):
    n: int
    err_I: float
    err_II: float
    err_sinc: Optional[float] = None
    certificate: float


class ErrorTable(BaseModel):
    weight: str
    function: str
    rows: List[ErrorRow] = []


class LowerBoundCheck(BaseModel):
    min_value: float
    bound: float
    gap: float
    passed: bool


class AppendixReport(BaseModel):
    """
    Computable part of the upper bound on F^C - F^D. The assembled value
    omits the term that needs the continuous equilibrium measure.
    """
    n: int
    h_sep: float
    max_gap: float
    applicable: bool
    c_d: float
    big_c_n: Optional[float] = None
    big_c_n_stated: Optional[float] = None
    s_bound_sum: Optional[float] = None
    t_bound_sum: Optional[float] = None
    t_bound_sum_stated: Optional[float] = None
    s_quad_sum: Optional[float] = None
    t_quad_sum: Optional[float] = None
    e1: Optional[float] = None
    assembled_bound: Optional[float] = None
    label: str = "upper bound on F^C - F^D without the equilibrium-measure term"


class BoundRow(BaseModel):
    n: int
    f_d: float
    certificate: float
    min_potential: float
    lower_bound: float
    passed: bool


class DiagReport(BaseModel):
    weight: str
    n: int
    iterations: int
    energy: EnergyReport
    lower_bound: LowerBoundCheck
    appendix: AppendixReport
