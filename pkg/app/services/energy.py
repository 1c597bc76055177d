# app/services/energy.py
"""
Discrete energy I_n^D(a) = sum_{i != j} K(a_i - a_j) + (2(n-1)/n) sum_i Q(a_i),
its gradient and Hessian, the potential U_n^D and the constant F^D.
"""
import numpy as np

from app.models.point_model import PointsLike, as_points_array
from app.models.report_model import EnergyReport
from app.models.weight_model import Weight
from app.services.kernel import green_kernel, green_kernel_d1, green_kernel_d2
from app.utils.errors import InvalidPointsError


def _field_factor(n: int) -> float:
    return 2.0 * (n - 1) / n


def _pair_differences(a: np.ndarray) -> np.ndarray:
    """Matrix a_l - a_j with the diagonal set to 1 so kernel calls never see 0."""
    diff = a[:, None] - a[None, :]
    np.fill_diagonal(diff, 1.0)
    return diff


def _off_diagonal(values: np.ndarray) -> np.ndarray:
    out = values.copy()
    np.fill_diagonal(out, 0.0)
    return out


def _points(a: PointsLike) -> np.ndarray:
    arr = as_points_array(a)
    if arr.size < 2:
        raise InvalidPointsError("the discrete energy needs n >= 2 points")
    return arr


def kernel_sum(wt: Weight, a: PointsLike) -> float:
    """sum_{i != j} K(a_i - a_j); depends on differences only."""
    arr = _points(a)
    return float(np.sum(_off_diagonal(green_kernel(wt.d, _pair_differences(arr)))))


def energy_value(wt: Weight, a: PointsLike) -> float:
    arr = _points(a)
    n = arr.size
    return kernel_sum(wt, arr) + _field_factor(n) * float(np.sum(wt.q(arr)))


def energy_gradient(wt: Weight, a: PointsLike) -> np.ndarray:
    arr = _points(a)
    n = arr.size
    k1 = _off_diagonal(green_kernel_d1(wt.d, _pair_differences(arr)))
    return 2.0 * k1.sum(axis=1) + _field_factor(n) * np.asarray(wt.q1(arr), dtype=float)


def energy_hessian(wt: Weight, a: PointsLike) -> np.ndarray:
    """
    Dense symmetric Hessian. Off-diagonal -2K''(a_l - a_k); diagonal
    2 sum_j K''(a_l - a_j) + (2(n-1)/n) Q''(a_l). Strictly diagonally dominant.
    """
    arr = _points(a)
    n = arr.size
    k2 = _off_diagonal(green_kernel_d2(wt.d, _pair_differences(arr)))
    # K'' is even, so k2 is symmetric up to rounding; symmetrise exactly
    k2 = 0.5 * (k2 + k2.T)
    hess = -2.0 * k2
    diag = 2.0 * k2.sum(axis=1) + _field_factor(n) * np.asarray(wt.q2(arr), dtype=float)
    hess[np.diag_indices(n)] = diag
    return hess


def potential(wt: Weight, a: PointsLike, x):
    """U_n^D(a; x) = sum_i K(x - a_i); +inf exactly at the sampling points."""
    arr = as_points_array(a)
    x_arr = np.asarray(x, dtype=float)
    out = np.sum(green_kernel(wt.d, x_arr[..., None] - arr), axis=-1)
    return float(out) if np.ndim(x) == 0 else out


def f_d_constant(wt: Weight, a_star: PointsLike) -> EnergyReport:
    """
    F^D = I_n^D(a*) - ((n-1)/n) sum Q(a_i*) and the certificate exp(-F^D/n).
    The gradient norm is recorded, not enforced.
    """
    arr = _points(a_star)
    n = arr.size
    energy = energy_value(wt, arr)
    f_d = energy - (n - 1) / n * float(np.sum(wt.q(arr)))
    grad = energy_gradient(wt, arr)
    return EnergyReport(
        n=n,
        energy=energy,
        grad_inf_norm=float(np.max(np.abs(grad))),
        f_d=f_d,
        certificate=float(np.exp(-f_d / n)),
    )
