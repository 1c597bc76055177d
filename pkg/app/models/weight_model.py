# app/models/weight_model.py
from typing import Callable

import numpy as np
from pydantic import BaseModel, ConfigDict

from app.models.point_model import StripParam

RealFunction = Callable[[np.ndarray], np.ndarray]


class Weight(BaseModel):
    """
    A weight w on the real axis together with its strip half-width d and the
    external field Q = -log w with its first two derivatives. All callables
    accept scalars or numpy arrays.
    """
    model_config = ConfigDict(frozen=True)

    name: str
    d: StripParam
    w: RealFunction
    q: RealFunction
    q1: RealFunction
    q2: RealFunction


class ValidationReport(BaseModel):
    weight: str
    grid_size: int
    max_w: float
    max_q_mismatch: float
    min_q2: float
    max_q1_mismatch: float
    max_q2_mismatch: float
    passed: bool
