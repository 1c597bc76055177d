# app/services/approx.py
"""
Barycentric evaluation of the interpolation operator on the sampling points:

  (I)  w(x) B(x) sum_k c_k(x) f(a_k)/w(a_k)
  (II) w(x) [sum_k c_k(x) f(a_k)/w(a_k)] / [sum_k c_k(x)]

with c_k(x) = 2 lambda_k / sinh(pi (x - a_k)/(2d)) and
lambda_k = prod_{j != k} 1/tanh(pi (a_k - a_j)/(4d)). Everything is assembled
in (log-magnitude, sign) form.
"""
from enum import Enum
from typing import Callable, Tuple

import numpy as np
from pydantic import BaseModel, ConfigDict

from app.models.point_model import PointConfig, PointsLike, as_points_array, separation_ok
from app.models.weight_model import Weight
from app.services.kernel import green_kernel, log_blaschke
from app.utils.errors import ConditioningError, EvaluationError
from app.utils.logspace import LOG2, log_abs_sinh, signed_logsumexp

NODE_RTOL = 1e-12


class Form(str, Enum):
    I = "I"  # noqa: E741
    II = "II"


class Approximant(BaseModel):
    model_config = ConfigDict(arbitrary_types_allowed=True, frozen=True)

    wt: Weight
    points: PointConfig
    log_lambda: np.ndarray
    lambda_sign: np.ndarray
    samples: np.ndarray  # f(a_k) / w(a_k)
    node_values: np.ndarray  # f(a_k)
    form: Form = Form.I

    @property
    def n(self) -> int:
        return self.points.n


# ------------------ Weights lambda_k ------------------
def build_lambda(wt: Weight, points: PointsLike) -> Tuple[np.ndarray, np.ndarray]:
    """
    Returns (log|lambda_k|, sign lambda_k). log|lambda_k| = sum_{j != k} K(a_k - a_j)
    and sign lambda_k = (-1)^(n-k): exactly the n-k points to the right of a_k
    contribute a negative factor.
    """
    a = as_points_array(points)
    n = a.size
    if n > 1 and (np.any(np.diff(a) <= 0) or not separation_ok(a)):
        raise ConditioningError("coincident or unordered sampling points")
    diff = a[:, None] - a[None, :]
    np.fill_diagonal(diff, 1.0)
    k = green_kernel(wt.d, diff)
    np.fill_diagonal(k, 0.0)
    log_mag = np.atleast_1d(k.sum(axis=1))
    sign = np.where((n - 1 - np.arange(n)) % 2 == 0, 1, -1)
    return log_mag, sign


def build_approximant(wt: Weight, points: PointsLike, f: Callable, form: Form = Form.I) -> Approximant:
    cfg = points if isinstance(points, PointConfig) else PointConfig(points=points)
    log_lambda, lambda_sign = build_lambda(wt, cfg)
    values = np.asarray(f(cfg.points), dtype=float)
    weights = np.asarray(wt.w(cfg.points), dtype=float)
    return Approximant(
        wt=wt,
        points=cfg,
        log_lambda=log_lambda,
        lambda_sign=lambda_sign,
        samples=values / weights,
        node_values=values,
        form=Form(form),
    )


# ------------------ Shared pieces ------------------
def _prepare(app: Approximant, x):
    """
    Splits x into node hits and regular points. Returns the flattened x, the
    index of the snapped node per x (-1 when none) and the per-term
    (log|c_k|, sign c_k) matrices for the regular points.
    """
    a = app.points.points
    x_arr = np.atleast_1d(np.asarray(x, dtype=float)).reshape(-1)
    if not np.all(np.isfinite(x_arr)):
        bad = x_arr[~np.isfinite(x_arr)][0]
        raise EvaluationError("evaluation point must be finite", float(bad))

    diff = x_arr[:, None] - a[None, :]
    tol = NODE_RTOL * np.maximum(1.0, np.abs(a))[None, :]
    near = np.abs(diff) < tol
    node_idx = np.where(near.any(axis=1), np.argmax(near, axis=1), -1)

    regular = node_idx < 0
    d_reg = diff[regular]
    v = np.pi * d_reg / (2.0 * app.wt.d)
    log_c = LOG2 + app.log_lambda[None, :] - log_abs_sinh(v)
    sign_c = app.lambda_sign[None, :] * np.sign(v)
    return x_arr, node_idx, regular, log_c, sign_c


def _node_limit(app: Approximant, x_arr: np.ndarray, node_idx: np.ndarray) -> np.ndarray:
    """f(a_k) w(x)/w(a_k) inside the snapping window; f(a_k) exactly at the node."""
    hits = node_idx >= 0
    out = np.empty(int(hits.sum()))
    xs = x_arr[hits]
    ks = node_idx[hits]
    exact = xs == app.points.points[ks]
    out[exact] = app.node_values[ks[exact]]
    if np.any(~exact):
        out[~exact] = app.samples[ks[~exact]] * np.asarray(app.wt.w(xs[~exact]), dtype=float)
    return out


def _signed_log_samples(app: Approximant):
    with np.errstate(divide="ignore"):
        return np.log(np.abs(app.samples)), np.sign(app.samples)


def _shape(x, out: np.ndarray):
    return float(out[0]) if np.ndim(x) == 0 else out.reshape(np.shape(x))


# ------------------ Formula (I) ------------------
def eval_formula_I(app: Approximant, x):  # noqa: N802
    x_arr, node_idx, regular, log_c, sign_c = _prepare(app, x)
    out = np.empty(x_arr.size)
    out[~regular] = _node_limit(app, x_arr, node_idx)

    if np.any(regular):
        xr = x_arr[regular]
        log_s, sign_s = _signed_log_samples(app)
        log_sum, sign_sum = signed_logsumexp(log_c + log_s[None, :], sign_c * sign_s[None, :], axis=1)
        log_b, sign_b = log_blaschke(app.wt.d, app.points, xr)
        log_mag = -np.asarray(app.wt.q(xr), dtype=float) + log_b + log_sum
        with np.errstate(under="ignore"):
            out[regular] = sign_b * sign_sum * np.exp(log_mag)
    return _shape(x, out)


# ------------------ Formula (II) ------------------
def eval_formula_II(app: Approximant, x):  # noqa: N802
    x_arr, node_idx, regular, log_c, sign_c = _prepare(app, x)
    out = np.empty(x_arr.size)
    out[~regular] = _node_limit(app, x_arr, node_idx)

    if np.any(regular):
        xr = x_arr[regular]
        log_s, sign_s = _signed_log_samples(app)
        log_num, sign_num = signed_logsumexp(log_c + log_s[None, :], sign_c * sign_s[None, :], axis=1)
        log_den, sign_den = signed_logsumexp(log_c, sign_c, axis=1)
        zero = sign_den == 0
        if np.any(zero):
            raise EvaluationError("formula (II) denominator vanished between nodes", float(xr[zero][0]))
        log_mag = -np.asarray(app.wt.q(xr), dtype=float) + log_num - log_den
        with np.errstate(under="ignore"):
            out[regular] = sign_num * sign_den * np.exp(log_mag)
    return _shape(x, out)


def evaluate(app: Approximant, x):
    """Evaluates with the form the approximant was built for."""
    if app.form == Form.II:
        return eval_formula_II(app, x)
    return eval_formula_I(app, x)
