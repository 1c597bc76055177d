# app/services/optimizer.py
"""
Damped Newton iteration for the minimizer of the discrete energy. With damping
off every step is a full Newton step, exactly the classic iteration.
"""
import math
from typing import Optional, Tuple

import numpy as np
from scipy.linalg import LinAlgError, cho_factor, cho_solve
from scipy.optimize import bisect

from app.models.point_model import PointConfig, PointsLike, as_points_array, separation_ok
from app.models.report_model import InitStrategy, IterationRecord, SolveResult, SolverConfig
from app.models.weight_model import Weight
from app.services.energy import energy_gradient, energy_hessian, energy_value, f_d_constant
from app.utils.errors import (
    ConditioningError,
    ConvergenceError,
    InvalidPointsError,
    OrderingError,
    StallError,
)
from app.utils.logger import get_logger

logger = get_logger(__name__)

MIN_ALPHA = 2.0 ** -40
# Energy comparisons closer than this (relative) are rounding noise
ENERGY_SLACK = 64 * np.finfo(float).eps


# ------------------ Initialization ------------------
def _edge(wt: Weight, level: float, direction: float, limit: float) -> float:
    """
    Point x on the side `direction` of 0 where Q(x) = level, by bisection.
    Falls back to direction * limit / 10 when Q stays below the level up to
    |x| = limit or already exceeds it at 0.
    """
    fallback = direction * limit / 10.0
    g = lambda t: float(wt.q(direction * t)) - level  # noqa: E731
    if g(0.0) >= 0:
        return fallback
    hi = 1.0
    while g(hi) < 0:
        hi *= 2.0
        if hi > limit:
            logger.warning(f"⚠️ Q stays below {level:.3g} on the {'right' if direction > 0 else 'left'}; using fallback")
            return fallback
    return direction * bisect(g, 0.0, hi, xtol=1e-15, rtol=4 * np.finfo(float).eps, maxiter=200)


def initialize(wt: Weight, n: int) -> PointConfig:
    """
    n equispaced points on [x_L, x_R] where Q(x_L) = Q(x_R) = max(2, log n).
    """
    if n < 2:
        raise InvalidPointsError(f"need n >= 2, got {n}")
    level = max(2.0, math.log(n))
    limit = 10.0 * n
    x_left = _edge(wt, level, -1.0, limit)
    x_right = _edge(wt, level, 1.0, limit)
    return PointConfig(points=np.linspace(x_left, x_right, n))


# ------------------ Newton step ------------------
def _energy_accepts(e_new: float, e_old: float) -> bool:
    return e_new < e_old + ENERGY_SLACK * max(1.0, abs(e_old))


def newton_direction(wt: Weight, a: PointsLike) -> np.ndarray:
    """delta solving H delta = -g through a Cholesky factorization."""
    arr = as_points_array(a)
    grad = energy_gradient(wt, arr)
    hess = energy_hessian(wt, arr)
    try:
        factor = cho_factor(hess, lower=True, check_finite=True)
    except (LinAlgError, ValueError) as e:
        raise ConditioningError(f"Hessian factorization failed: {e}") from e
    return cho_solve(factor, -grad)


def newton_step(wt: Weight, a: PointsLike, damping: bool = True) -> Tuple[np.ndarray, PointConfig, float]:
    """
    One Newton step. Returns (delta, next point configuration, alpha) where
    next = a + alpha * delta and alpha is the largest of 1, 1/2, 1/4, ... that
    keeps the points strictly ordered and does not increase the energy.
    """
    arr = as_points_array(a)
    delta = newton_direction(wt, arr)

    if not np.any(delta):
        return delta, PointConfig(points=arr), 1.0

    if not damping:
        candidate = arr + delta
        if not separation_ok(candidate):
            raise OrderingError("full Newton step leaves the ordered configuration space")
        return delta, PointConfig(points=candidate), 1.0

    e_old = energy_value(wt, arr)
    alpha = 1.0
    while alpha >= MIN_ALPHA:
        candidate = arr + alpha * delta
        if separation_ok(candidate) and _energy_accepts(energy_value(wt, candidate), e_old):
            return delta, PointConfig(points=candidate), alpha
        alpha *= 0.5
    raise StallError(f"damping factor fell below 2^-40 (max|delta| = {np.max(np.abs(delta)):.3e})")


# ------------------ Solver ------------------
def _start(wt: Weight, n: int, cfg: SolverConfig) -> PointConfig:
    if cfg.init_strategy == InitStrategy.USER:
        if cfg.initial_points is None:
            raise InvalidPointsError("init_strategy 'user' needs initial_points")
        start = PointConfig(points=cfg.initial_points)
        if start.n != n:
            raise InvalidPointsError(f"initial_points has {start.n} points, expected {n}")
        return start
    return initialize(wt, n)


def solve(wt: Weight, n: int, cfg: Optional[SolverConfig] = None) -> SolveResult:
    """
    Iterates Newton steps until max|delta_i| < tol_step.
    Deterministic for a given (weight, n, cfg).
    """
    cfg = cfg or SolverConfig()
    current = _start(wt, n, cfg)
    trace = []

    for iteration in range(1, cfg.max_iter + 1):
        delta, nxt, alpha = newton_step(wt, current, damping=cfg.damping)
        step = float(np.max(np.abs(delta)))
        energy = energy_value(wt, nxt)
        trace.append(IterationRecord(iteration=iteration, energy=energy, step_inf_norm=step, alpha=alpha))
        logger.debug(f"iter {iteration}: energy={energy:.17g} step={step:.3e} alpha={alpha:g}")
        current = nxt

        if step < cfg.tol_step:
            report = f_d_constant(wt, current)
            logger.info(
                f"✅ Newton converged for {wt.name}, n={n} in {iteration} iterations "
                f"(F^D={report.f_d:.6g}, certificate={report.certificate:.3e})"
            )
            return SolveResult(
                points=current,
                iterations=iteration,
                final_step_inf_norm=step,
                energy_report=report,
                trace=trace,
            )

    raise ConvergenceError(
        f"Newton did not converge for {wt.name}, n={n} within {cfg.max_iter} iterations",
        trace=[rec.model_dump() for rec in trace],
    )
