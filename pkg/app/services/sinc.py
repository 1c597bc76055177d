# app/services/sinc.py
"""
Sinc interpolation baseline f(x) ~ sum_{k=-N-}^{N+} f(kh) sinc(x/h - k) with
the step and truncation rules used for the TANH/DE-transformed test functions,
plus the transformations themselves.
"""
import math
from enum import Enum
from typing import Callable, Tuple

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, model_validator
from scipy.special import expit

from app.utils.errors import UnknownWeightError


class Transform(str, Enum):
    TANH = "TANH"
    DE = "DE"
    NONE = "none"


class SincApproximant(BaseModel):
    model_config = ConfigDict(frozen=True)

    weight: str
    transform: Transform
    h: float = Field(gt=0)
    n_minus: int = Field(ge=0)
    n_plus: int = Field(ge=0)
    n: int

    @model_validator(mode="after")
    def _count(self):
        if self.n_minus + self.n_plus + 1 != self.n:
            raise ValueError("n_minus + n_plus + 1 must equal n")
        return self

    @property
    def nodes(self) -> np.ndarray:
        return self.h * np.arange(-self.n_minus, self.n_plus + 1, dtype=float)


SINC_WEIGHTS = ("w4", "w5", "w6", "w7")


def build_sinc(weight_name: str, n: int, epsilon: float = 1e-10) -> SincApproximant:
    """
    Picks h and N-/N+ so that discretization and truncation errors balance
    for the weight's decay. Even n with the even weights w4/w5 puts the extra
    point on the right.
    """
    if n < 3:
        raise ValueError(f"sinc baseline needs n >= 3, got {n}")

    if weight_name == "w4":
        h = math.sqrt(4.0 * math.pi * (math.pi - epsilon) / n)
        n_minus = (n - 1) // 2
        transform = Transform.TANH
    elif weight_name == "w5":
        h = 2.0 / n * math.log((math.pi - 2.0 * epsilon) * n)
        n_minus = (n - 1) // 2
        transform = Transform.DE
    elif weight_name == "w6":
        d6 = math.pi - epsilon
        h = math.sqrt(8.0 * math.pi * d6 / (3.0 * n))
        n_minus = n // 4
        transform = Transform.TANH
    elif weight_name == "w7":
        d7 = math.pi / 2 - epsilon
        h = 2.0 / n * math.log(d7 * n / math.sqrt(1.5))
        n_minus = math.floor(n / 2 - math.log(1.5) / (2.0 * h))
        transform = Transform.DE
    else:
        raise UnknownWeightError(weight_name, list(SINC_WEIGHTS))

    return SincApproximant(
        weight=weight_name,
        transform=transform,
        h=h,
        n_minus=n_minus,
        n_plus=n - 1 - n_minus,
        n=n,
    )


def eval_sinc(app: SincApproximant, f: Callable, x):
    """sum_k f(kh) sinc(x/h - k), with sinc(0) = 1 (np.sinc is the normalised sinc)."""
    ks = np.arange(-app.n_minus, app.n_plus + 1, dtype=float)
    samples = np.asarray(f(app.h * ks), dtype=float)
    x_arr = np.atleast_1d(np.asarray(x, dtype=float))
    out = np.sinc(x_arr[:, None] / app.h - ks[None, :]) @ samples
    return float(out[0]) if np.ndim(x) == 0 else out.reshape(np.shape(x))


# ------------------ Variable transformations ------------------
def _inner(transform: Transform, x: np.ndarray) -> np.ndarray:
    if transform == Transform.TANH:
        return 0.5 * x
    return 0.5 * np.pi * np.sinh(x)


def psi(transform: Transform, x):
    x = np.asarray(x, dtype=float)
    if transform == Transform.NONE:
        return x
    return np.tanh(_inner(transform, x))


def psi_complements(transform: Transform, x) -> Tuple[np.ndarray, np.ndarray, np.ndarray]:
    """
    (t, 1 - t, 1 + t) for t = psi(x). For tanh(y) the complements are
    2 expit(-2y) and 2 expit(2y), which keep full relative accuracy in the
    tails where 1 - t cancels.
    """
    x = np.asarray(x, dtype=float)
    if transform == Transform.NONE:
        return x, 1.0 - x, 1.0 + x
    y = _inner(transform, x)
    return np.tanh(y), 2.0 * expit(-2.0 * y), 2.0 * expit(2.0 * y)


def make_transformed_function(g: Callable, transform: Transform, complements: bool = False) -> Callable:
    """
    x -> g(psi(x)) carrying a function on (-1, 1) to the real line. With
    `complements` set, g is called as g(t, 1 - t, 1 + t).
    """
    transform = Transform(transform)
    if complements:
        return lambda x: g(*psi_complements(transform, x))
    return lambda x: g(psi(transform, x))
