# app/services/kernel.py
"""
Primitives on the strip D_d: the tanh map T_d, the sinh weight S_d, the Green
kernel K(x) = -log|T_d(x)| with its first two derivatives, and transformed
Blaschke products in (log-magnitude, sign) form.

All functions take scalars or numpy arrays and are pure.
"""
from typing import Tuple

import numpy as np

from app.models.point_model import PointsLike, as_points_array, check_strip
from app.utils.errors import KernelSingularityError, NumericalOverflowError
from app.utils.logspace import LOG2, csch, log_abs_sinh


def _scalar_or_array(x_in, out):
    return float(out) if np.ndim(x_in) == 0 else out


# ------------------ Maps ------------------
def t_map(d: float, x):
    """T_d(x) = tanh(pi x / (4d)); saturates to +-1, never NaN."""
    d = check_strip(d)
    x_arr = np.asarray(x, dtype=float)
    return _scalar_or_array(x, np.tanh(np.pi * x_arr / (4.0 * d)))


def t_map_d1(d: float, x):
    """T_d'(x) = (pi/(4d)) sech^2(pi x/(4d))."""
    d = check_strip(d)
    u = np.pi * np.asarray(x, dtype=float) / (4.0 * d)
    c = np.pi / (4.0 * d)
    with np.errstate(over="ignore"):
        return _scalar_or_array(x, c / np.cosh(u) ** 2)


def s_map(d: float, x):
    """
    S_d(x) = (1/2) sinh(pi x / (2d)). Raises NumericalOverflowError when the
    value does not fit in a double; use log_s_map for large |x|.
    """
    d = check_strip(d)
    v = np.pi * np.asarray(x, dtype=float) / (2.0 * d)
    try:
        with np.errstate(over="raise"):
            out = 0.5 * np.sinh(v)
    except FloatingPointError as e:
        raise NumericalOverflowError(f"S_d overflows for |x| up to {np.max(np.abs(x))}") from e
    return _scalar_or_array(x, out)


def log_s_map(d: float, x) -> Tuple[np.ndarray, np.ndarray]:
    """Returns (log|S_d(x)|, sign S_d(x)) without overflow."""
    d = check_strip(d)
    v = np.pi * np.asarray(x, dtype=float) / (2.0 * d)
    return log_abs_sinh(v) - LOG2, np.sign(v)


# ------------------ Green kernel ------------------
def green_kernel(d: float, x):
    """
    K(x) = -log|tanh(pi x/(4d))|, positive and even, +inf at x = 0.

    Evaluated as log(1 + e^(-2|u|)) - log(1 - e^(-2|u|)) so that large |x|
    keeps full relative accuracy instead of rounding to 0 via log(1).
    """
    d = check_strip(d)
    u = np.abs(np.pi * np.asarray(x, dtype=float) / (4.0 * d))
    with np.errstate(divide="ignore"):
        out = np.log1p(np.exp(-2.0 * u)) - np.log(-np.expm1(-2.0 * u))
    return _scalar_or_array(x, out)


def _check_nonzero(x_arr: np.ndarray) -> None:
    if np.any(x_arr == 0.0):
        raise KernelSingularityError("kernel derivatives are undefined at x = 0")


def green_kernel_d1(d: float, x):
    """K'(x) = -(pi/(2d)) / sinh(pi x/(2d))."""
    d = check_strip(d)
    x_arr = np.asarray(x, dtype=float)
    _check_nonzero(x_arr)
    c = np.pi / (2.0 * d)
    return _scalar_or_array(x, -c * csch(c * x_arr))


def green_kernel_d2(d: float, x):
    """K''(x) = (pi^2/(4d^2)) cosh(v)/sinh^2(v), v = pi x/(2d); strictly positive."""
    d = check_strip(d)
    x_arr = np.asarray(x, dtype=float)
    _check_nonzero(x_arr)
    c = np.pi / (2.0 * d)
    v = c * x_arr
    cs = csch(v)
    # cosh/sinh^2 = csch * coth
    return _scalar_or_array(x, c * c * cs / np.tanh(v))


# ------------------ Blaschke products ------------------
def log_blaschke(d: float, points: PointsLike, x):
    """
    Returns (log|prod_j T_d(x - a_j)|, sign of the product). The log-magnitude
    equals -U_n^D(a; x). At a sampling point the result is (-inf, 0).
    """
    a = as_points_array(points)
    x_arr = np.asarray(x, dtype=float)
    diff = x_arr[..., None] - a
    log_abs = -np.sum(green_kernel(d, diff), axis=-1)
    signs = np.prod(np.sign(diff), axis=-1)
    if np.ndim(x) == 0:
        return float(log_abs), int(signs)
    return log_abs, signs.astype(int)
