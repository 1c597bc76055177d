# app/models/run_config_model.py
from enum import Enum
from typing import List, Optional

from pydantic import BaseModel, Field, field_validator, model_validator

from app.config import DEFAULT_EPSILON, DEFAULT_GRID_COUNT, DEFAULT_QUAD_ORDER
from app.services.approx import Form
from app.services.diagnostics import MAX_QUAD_ORDER, MIN_QUAD_ORDER
from app.services.functions import SINC_FUNCTIONS, WEIGHT_ITSELF, paired_weight


class Command(str, Enum):
    POINTS = "points"
    APPROX = "approx"
    ERRORS = "errors"
    COMPARE_SINC = "compare-sinc"
    BOUND = "bound"
    DIAG = "diag"


class RunConfig(BaseModel):
    """
    One CLI/HTTP run. Fully deterministic: no seeds are involved anywhere.
    """
    command: Command
    weight: Optional[str] = None
    epsilon: float = Field(default=DEFAULT_EPSILON, gt=0, lt=0.1)
    n: Optional[int] = Field(default=None, ge=2)
    n_list: List[int] = []
    form: Form = Form.I
    function: Optional[str] = None
    x1: Optional[float] = None
    x_last: Optional[float] = None
    grid_count: int = Field(default=DEFAULT_GRID_COUNT, ge=2)
    out: Optional[str] = None
    pure_newton: bool = False
    quad_order: int = Field(default=DEFAULT_QUAD_ORDER, ge=MIN_QUAD_ORDER, le=MAX_QUAD_ORDER)
    allow_mismatch: bool = False

    @field_validator("n_list", mode="before")
    @classmethod
    def _split_list(cls, value):
        if value is None:
            return []
        if isinstance(value, str):
            return [int(part) for part in value.replace(";", ",").split(",") if part.strip()]
        return value

    @field_validator("n_list")
    @classmethod
    def _each_at_least_two(cls, value):
        if any(n < 2 for n in value):
            raise ValueError("every entry of n_list must be >= 2")
        return value

    @model_validator(mode="after")
    def _resolve(self):
        # the function decides the weight unless one is given explicitly
        if self.weight is None and self.function and self.function != WEIGHT_ITSELF:
            self.weight = paired_weight(self.function)
        if self.weight is None:
            raise ValueError("a weight (or a catalog function) is required")
        if self.function is None:
            if self.command == Command.COMPARE_SINC:
                raise ValueError("compare-sinc needs --function (one of f4..f7)")
            if self.command in (Command.ERRORS, Command.APPROX):
                self.function = WEIGHT_ITSELF
        if self.command == Command.COMPARE_SINC and self.function not in SINC_FUNCTIONS:
            raise ValueError(f"compare-sinc takes one of {', '.join(SINC_FUNCTIONS)}, got '{self.function}'")
        return self

    def sizes(self) -> List[int]:
        """n values to run: the n-list if given, otherwise the single n."""
        if self.n_list:
            return list(self.n_list)
        if self.n is not None:
            return [self.n]
        raise ValueError("either --n or --n-list is required")
