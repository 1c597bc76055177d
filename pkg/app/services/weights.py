# app/services/weights.py
"""
Weight registry. Each built-in entry supplies w, Q = -log w, Q' and Q'' from
hand-derived closed forms written to stay finite for large |x|.
"""
from typing import Callable, Dict, List, Sequence

import numpy as np
from scipy.special import expit

from app.models.weight_model import ValidationReport, Weight
from app.utils.errors import UnknownWeightError
from app.utils.logger import get_logger
from app.utils.logspace import log_cosh

logger = get_logger(__name__)

WeightFactory = Callable[[float], Weight]

_REGISTRY: Dict[str, WeightFactory] = {}


def register_weight(name: str, factory: WeightFactory) -> None:
    """
    Adds a weight factory (epsilon -> Weight) under `name`. User weights go
    through the same interface as the built-ins.
    """
    _REGISTRY[name] = factory


def available_weights() -> List[str]:
    return sorted(_REGISTRY)


def get_weight(name: str, epsilon: float = 1e-10) -> Weight:
    if name not in _REGISTRY:
        raise UnknownWeightError(name, available_weights())
    if not (0 < epsilon < 0.1):
        raise ValueError(f"epsilon must lie in (0, 0.1), got {epsilon!r}")
    return _REGISTRY[name](epsilon)


def _sech2(u):
    # sech^2 u = 4 e^(-2|u|) / (1 + e^(-2|u|))^2
    e = np.exp(-2.0 * np.abs(u))
    return 4.0 * e / (1.0 + e) ** 2


def _softplus(x):
    return np.logaddexp(0.0, x)


# ------------------ w1(x) = sech(2x) ------------------
def _w1(eps: float) -> Weight:
    return Weight(
        name="w1",
        d=np.pi / 4 - eps,
        w=lambda x: np.exp(-log_cosh(2.0 * np.asarray(x, dtype=float))),
        q=lambda x: log_cosh(2.0 * np.asarray(x, dtype=float)),
        q1=lambda x: 2.0 * np.tanh(2.0 * np.asarray(x, dtype=float)),
        q2=lambda x: 4.0 * _sech2(2.0 * np.asarray(x, dtype=float)),
    )


# ------------------ w2(x) = exp(-x^2) ------------------
def _w2(eps: float) -> Weight:
    return Weight(
        name="w2",
        d=np.pi / 4 - eps,
        w=lambda x: np.exp(-np.asarray(x, dtype=float) ** 2),
        q=lambda x: np.asarray(x, dtype=float) ** 2,
        q1=lambda x: 2.0 * np.asarray(x, dtype=float),
        q2=lambda x: np.full_like(np.asarray(x, dtype=float), 2.0),
    )


# ------------------ sech(c * sinh(k x)) family: w3, w5 ------------------
def _sech_sinh(name: str, d: float, c: float, k: float) -> Weight:
    """w(x) = sech(c sinh(kx)); Q = log cosh s with s = c sinh(kx)."""

    def q(x):
        return log_cosh(c * np.sinh(k * np.asarray(x, dtype=float)))

    def q1(x):
        x = np.asarray(x, dtype=float)
        s = c * np.sinh(k * x)
        return c * k * np.cosh(k * x) * np.tanh(s)

    def q2(x):
        x = np.asarray(x, dtype=float)
        s = c * np.sinh(k * x)
        s1 = c * k * np.cosh(k * x)
        s2 = c * k * k * np.sinh(k * x)
        with np.errstate(over="ignore", under="ignore"):
            curv = s1 * s1 * _sech2(s)
        return s2 * np.tanh(s) + np.nan_to_num(curv, nan=0.0)

    return Weight(name=name, d=d, w=lambda x: np.exp(-q(x)), q=q, q1=q1, q2=q2)


def _w3(eps: float) -> Weight:
    return _sech_sinh("w3", np.pi / 4 - eps, np.pi / 2, 2.0)


def _w5(eps: float) -> Weight:
    return _sech_sinh("w5", np.pi / 2 - eps, np.pi / 2, 1.0)


# ------------------ w4(x) = sech(x/2) ------------------
def _w4(eps: float) -> Weight:
    return Weight(
        name="w4",
        d=np.pi - eps,
        w=lambda x: np.exp(-log_cosh(0.5 * np.asarray(x, dtype=float))),
        q=lambda x: log_cosh(0.5 * np.asarray(x, dtype=float)),
        q1=lambda x: 0.5 * np.tanh(0.5 * np.asarray(x, dtype=float)),
        q2=lambda x: 0.25 * _sech2(0.5 * np.asarray(x, dtype=float)),
    )


# ------------------ uneven family: w6, w7 ------------------
def _uneven(name: str, d: float, s, s1, s2) -> Weight:
    """
    w = (1 + e^s)^(-1/2) (1 + e^(-s))^(-3/2) for an increasing inner map s(x);
    Q = (1/2) softplus(s) + (3/2) softplus(-s).
    """

    def q(x):
        sx = s(np.asarray(x, dtype=float))
        return 0.5 * _softplus(sx) + 1.5 * _softplus(-sx)

    def q1(x):
        x = np.asarray(x, dtype=float)
        sx = s(x)
        return s1(x) * (2.0 * expit(sx) - 1.5)

    def q2(x):
        x = np.asarray(x, dtype=float)
        sx = s(x)
        return s2(x) * (2.0 * expit(sx) - 1.5) + 2.0 * s1(x) ** 2 * expit(sx) * expit(-sx)

    return Weight(name=name, d=d, w=lambda x: np.exp(-q(x)), q=q, q1=q1, q2=q2)


def _w6(eps: float) -> Weight:
    return _uneven(
        "w6",
        np.pi - eps,
        s=lambda x: x,
        s1=lambda x: np.ones_like(x),
        s2=lambda x: np.zeros_like(x),
    )


def _w7(eps: float) -> Weight:
    return _uneven(
        "w7",
        np.pi / 2 - eps,
        s=lambda x: np.pi * np.sinh(x),
        s1=lambda x: np.pi * np.cosh(x),
        s2=lambda x: np.pi * np.sinh(x),
    )


for _name, _factory in {
    "w1": _w1, "w2": _w2, "w3": _w3, "w4": _w4,
    "w5": _w5, "w6": _w6, "w7": _w7,
}.items():
    register_weight(_name, _factory)


# ------------------ Validation ------------------
def _rel(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    return np.abs(a - b) / np.maximum(1.0, np.abs(b))


def validate_weight(wt: Weight, grid: Sequence[float], h: float = 1e-5) -> ValidationReport:
    """
    Numeric spot-check of the log-concavity assumptions on a grid. Q' is
    compared with central differences of Q and Q'' with central differences of
    Q'. Failures are reported, never raised.
    """
    x = np.asarray(grid, dtype=float)
    if x.size == 0 or not np.all(np.isfinite(x)):
        raise ValueError("grid must be nonempty and finite")

    with np.errstate(divide="ignore", over="ignore", invalid="ignore"):
        w = np.asarray(wt.w(x), dtype=float)
        q = np.asarray(wt.q(x), dtype=float)
        q1 = np.asarray(wt.q1(x), dtype=float)
        q2 = np.asarray(wt.q2(x), dtype=float)
        neg_log_w = -np.log(w)

    both = np.isfinite(neg_log_w) & np.isfinite(q)
    max_q_mismatch = float(np.max(np.abs(q[both] - neg_log_w[both]))) if both.any() else 0.0

    fd1 = (np.asarray(wt.q(x + h)) - np.asarray(wt.q(x - h))) / (2.0 * h)
    fd2 = (np.asarray(wt.q1(x + h)) - np.asarray(wt.q1(x - h))) / (2.0 * h)
    max_q1_mismatch = float(np.max(_rel(q1, fd1)))
    max_q2_mismatch = float(np.max(_rel(q2, fd2)))
    min_q2 = float(np.min(q2))

    passed = min_q2 > 0 and max_q1_mismatch < 1e-5 and max_q2_mismatch < 1e-5
    if not passed:
        logger.warning(
            f"⚠️ weight '{wt.name}' failed validation: min Q''={min_q2:.3e}, "
            f"Q' mismatch={max_q1_mismatch:.3e}, Q'' mismatch={max_q2_mismatch:.3e}"
        )

    return ValidationReport(
        weight=wt.name,
        grid_size=int(x.size),
        max_w=float(np.max(w)),
        max_q_mismatch=max_q_mismatch,
        min_q2=min_q2,
        max_q1_mismatch=max_q1_mismatch,
        max_q2_mismatch=max_q2_mismatch,
        passed=passed,
    )
