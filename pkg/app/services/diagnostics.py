# app/services/diagnostics.py
"""
Error measurement on evaluation grids, the potential lower-bound check, and the
computable quantities bounding F^C - F^D (separation distance, c_d, C_n,
the S_i/T_i integrals and e_n^(1)).
"""
import math
from typing import Callable, Optional

import numpy as np
from scipy.optimize import bisect

from app.models.point_model import PointConfig, PointsLike, as_points_array
from app.models.report_model import AppendixReport, EvalGrid, LowerBoundCheck
from app.models.weight_model import Weight
from app.services.energy import f_d_constant, potential
from app.services.kernel import green_kernel
from app.utils.errors import EvaluationError
from app.utils.logger import get_logger

logger = get_logger(__name__)

MIN_QUAD_ORDER = 8
# Laguerre weights start to underflow past this order
MAX_QUAD_ORDER = 150

# (x1, x_last) used for the catalog weights
CATALOG_GRIDS = {
    "w1": (-25.0, 25.0),
    "w2": (-10.0, 10.0),
    "w3": (-3.0, 3.0),
    "w4": (-100.0, 100.0),
    "w5": (-6.0, 6.0),
    "w6": (-40.0, 100.0),
    "w7": (-4.5, 5.5),
}

# w(x) thresholds the catalog grids were chosen for
CATALOG_THRESHOLDS = {
    "w1": 1e-20, "w2": 1e-30, "w3": 1e-75, "w4": 1e-20,
    "w5": 1e-75, "w6": 1e-20, "w7": 1e-75,
}


# ------------------ Evaluation grids ------------------
def _decay_edge(wt: Weight, threshold: float, direction: float) -> float:
    """Closest |x| on one side where w(x) <= threshold, solved as Q(x) >= -log threshold."""
    level = -math.log(threshold)
    g = lambda t: float(wt.q(direction * t)) - level  # noqa: E731
    hi = 1.0
    while g(hi) < 0:
        hi *= 2.0
        if hi > 1e6:
            raise EvaluationError("weight does not decay below the threshold", direction * hi)
    if g(0.0) >= 0:
        return 0.0
    return direction * bisect(g, 0.0, hi, xtol=1e-12)


def make_grid(
    wt: Weight,
    threshold: float = 1e-20,
    symmetric: bool = True,
    count: int = 1001,
    x1: Optional[float] = None,
    x_last: Optional[float] = None,
) -> EvalGrid:
    """
    Catalog weights use their fixed (x1, x_last); other weights solve
    w(x1) <= threshold by bisection, and x_last = -x1 when symmetric.
    Explicit x1/x_last override either choice.
    """
    if not (0 < threshold < 1):
        raise ValueError("threshold must lie in (0, 1)")

    if wt.name in CATALOG_GRIDS:
        lo, hi = CATALOG_GRIDS[wt.name]
    else:
        lo = _decay_edge(wt, threshold, -1.0)
        hi = -lo if symmetric else _decay_edge(wt, threshold, 1.0)

    lo = lo if x1 is None else x1
    hi = hi if x_last is None else x_last
    return EvalGrid(x1=lo, x_last=hi, count=count)


def sup_error(approx_eval: Callable, f: Callable, grid: EvalGrid) -> float:
    """max_l |f(x_l) - approx(x_l)| over the grid."""
    x = grid.points
    exact = np.asarray(f(x), dtype=float)
    approx = np.asarray(approx_eval(x), dtype=float)
    err = np.abs(exact - approx)
    if not np.all(np.isfinite(err)):
        bad = x[~np.isfinite(err)][0]
        raise EvaluationError("non-finite approximation value", float(bad))
    return float(err.max())


# ------------------ Potential checks ------------------
def potential_profile(wt: Weight, a_star: PointsLike, grid: EvalGrid) -> np.ndarray:
    """U_n^D(a*; x) + Q(x) on the grid; +inf where x hits a sampling point."""
    x = grid.points
    return potential(wt, a_star, x) + np.asarray(wt.q(x), dtype=float)


def check_potential_lower_bound(wt: Weight, a_star: PointsLike, grid: EvalGrid, tol: float = 1e-8) -> LowerBoundCheck:
    """
    min over the grid of U_n^D(a*; x) + Q(x) against F^D/(n - 1).
    """
    report = f_d_constant(wt, a_star)
    bound = report.f_d / (report.n - 1)
    min_value = float(np.min(potential_profile(wt, a_star, grid)))
    return LowerBoundCheck(
        min_value=min_value,
        bound=bound,
        gap=min_value - bound,
        passed=min_value >= bound - tol,
    )


# ------------------ Separation-distance bound quantities ------------------
def c_d_constant(d: float) -> float:
    """c_d = -log tanh(pi/(4d)), the constant in K(x) <= -log|x| + c_d on |x| <= 1."""
    return -math.log(math.tanh(math.pi / (4.0 * d)))


def _laguerre(order: int):
    """Gauss-Laguerre rule without the nodes whose weight or e^(-u) has underflowed."""
    nodes, weights = np.polynomial.laguerre.laggauss(order)
    keep = np.isfinite(weights) & (weights > 0) & (np.exp(-nodes) > 0)
    return nodes[keep], weights[keep]


def _mean_kernel_from_node(d: float, length: float, nodes: np.ndarray, weights: np.ndarray) -> float:
    """
    (1/L) int_0^L K(t) dt. With t = L e^(-u) this is int_0^inf K(L e^(-u)) e^(-u) du,
    whose integrand grows only linearly in u, so Gauss-Laguerre resolves it.
    """
    return float(np.dot(weights, green_kernel(d, length * np.exp(-nodes))))


def _mean_kernel_on_square(d: float, length: float, nodes: np.ndarray, weights: np.ndarray) -> float:
    """
    (1/L^2) int_0^L int_0^L K(x - y) dy dx = 2 int_0^1 (1 - r) K(L r) dr, then r = e^(-u).
    """
    r = np.exp(-nodes)
    return float(2.0 * np.dot(weights, (1.0 - r) * green_kernel(d, length * r)))


def _q_mass(wt: Weight, edges: np.ndarray, order: int) -> float:
    """int Q dnu for the measure with density 1/(a_{i+1} - a_i) on each [a_i, a_{i+1}]."""
    nodes, weights = np.polynomial.legendre.leggauss(order)
    lo, hi = edges[:-1], edges[1:]
    mid = 0.5 * (lo + hi)
    half = 0.5 * (hi - lo)
    x = mid[:, None] + half[:, None] * nodes[None, :]
    # the density cancels the interval length: mean of Q over each interval
    means = 0.5 * (np.asarray(wt.q(x), dtype=float) @ weights)
    return float(means.sum())


def appendix_quantities(wt: Weight, a_star: PointsLike, quad_order: int = 32) -> AppendixReport:
    """
    Evaluates the separation-distance bound on F^C - F^D for a minimizer a*.
    The augmented endpoints sit one gap g = min(1, h) outside the extreme
    points. When some gap exceeds 1 the bound's hypothesis fails and only
    h, the maximal gap and c_d are reported.
    """
    if not MIN_QUAD_ORDER <= quad_order <= MAX_QUAD_ORDER:
        raise ValueError(f"quad_order must lie in [{MIN_QUAD_ORDER}, {MAX_QUAD_ORDER}], got {quad_order}")
    cfg = a_star if isinstance(a_star, PointConfig) else PointConfig(points=a_star)
    a = cfg.points
    n = cfg.n
    h_sep = cfg.min_gap
    max_gap = cfg.max_gap
    c_d = c_d_constant(wt.d)
    applicable = max_gap <= 1.0

    if not applicable:
        logger.warning(f"⚠️ bound not applicable for {wt.name}, n={n}: max gap {max_gap:.4g}")
        return AppendixReport(n=n, h_sep=h_sep, max_gap=max_gap, applicable=False, c_d=c_d)

    g = min(1.0, h_sep)
    edges = np.concatenate(([a[0] - g], a, [a[-1] + g]))
    lengths = np.diff(edges)  # n + 1 intervals

    nodes, weights = _laguerre(quad_order)
    s_quad = sum(
        _mean_kernel_from_node(wt.d, lengths[i], nodes, weights)
        + _mean_kernel_from_node(wt.d, lengths[i + 1], nodes, weights)
        for i in range(n)
    )
    t_quad = sum(_mean_kernel_on_square(wt.d, length, nodes, weights) for length in lengths)

    log_len = np.log(lengths)
    s_bound = float(np.sum(-log_len[:-1] - log_len[1:] + 2.0 * (1.0 + c_d)))
    # mean of -log|x - y| over a square of side L is -log L + 3/2
    t_bound = float(np.sum(-log_len + 1.5 + c_d))
    t_bound_stated = float(np.sum(-log_len + 0.5 + c_d))

    big_c_n = (3.5 + 3.0 * c_d) * n + 1.5 + c_d
    big_c_n_stated = (2.5 + 3.0 * c_d) * n + 0.5 + c_d
    e1 = _q_mass(wt, edges, quad_order) - (n - 1) / n * float(np.sum(wt.q(a)))

    return AppendixReport(
        n=n,
        h_sep=h_sep,
        max_gap=max_gap,
        applicable=True,
        c_d=c_d,
        big_c_n=big_c_n,
        big_c_n_stated=big_c_n_stated,
        s_bound_sum=s_bound,
        t_bound_sum=t_bound,
        t_bound_sum_stated=t_bound_stated,
        s_quad_sum=float(s_quad),
        t_quad_sum=float(t_quad),
        e1=e1,
        assembled_bound=-(3 * n + 1) * math.log(h_sep) + big_c_n + e1,
    )
