# tests/test_optimizer.py
import numpy as np
import pytest
from scipy.optimize import brentq

from app.models.report_model import InitStrategy, SolverConfig
from app.services.energy import energy_value
from app.services.kernel import green_kernel_d1
from app.services.optimizer import ENERGY_SLACK, initialize, newton_direction, newton_step, solve
from app.services.weights import get_weight
from app.utils.errors import ConvergenceError, InvalidPointsError, OrderingError

from tests.conftest import CATALOG, EVEN_WEIGHTS


def test_initialization_is_ordered_and_spans_the_weight():
    wt = get_weight("w2")
    cfg = initialize(wt, 9)
    assert cfg.n == 9
    # Q(x_L) = Q(x_R) = max(2, log 9) = log 9 > 2
    assert cfg.points[0] == pytest.approx(-np.sqrt(np.log(9.0)), rel=1e-12)
    assert cfg.points[-1] == pytest.approx(np.sqrt(np.log(9.0)), rel=1e-12)


def test_initialization_needs_two_points():
    with pytest.raises(InvalidPointsError):
        initialize(get_weight("w1"), 1)


def test_newton_step_decreases_energy():
    wt = get_weight("w1")
    start = initialize(wt, 7)
    delta, nxt, alpha = newton_step(wt, start)
    assert 0 < alpha <= 1
    assert energy_value(wt, nxt) < energy_value(wt, start)
    np.testing.assert_allclose(nxt.points, start.points + alpha * delta)


@pytest.mark.parametrize("name", CATALOG)
@pytest.mark.parametrize("n", [9, 17, 33, 65, 101])
def test_converges_for_catalog(solved, name, n):
    result = solved(name, n)
    assert result.iterations <= 200
    assert result.points.n == n
    assert result.final_step_inf_norm < 1e-14
    assert result.trace[-1].step_inf_norm == result.final_step_inf_norm
    assert result.energy_report.grad_inf_norm <= 1e-9


def test_loose_tolerance_is_absolute():
    # w2 at n = 101 spreads its points well beyond |x| = 1
    wt = get_weight("w2")
    result = solve(wt, 101, SolverConfig(tol_step=1e-6))
    assert np.max(np.abs(result.points.points)) > 1.0
    assert result.final_step_inf_norm < 1e-6
    assert all(rec.step_inf_norm >= 1e-6 for rec in result.trace[:-1])


@pytest.mark.parametrize("name", ["w2", "w6"])
def test_energy_never_increases_along_the_trace(solved, name):
    trace = solved(name, 33).trace
    energies = [rec.energy for rec in trace]
    for before, after in zip(energies, energies[1:]):
        assert after <= before + ENERGY_SLACK * max(1.0, abs(before))


@pytest.mark.parametrize("name", EVEN_WEIGHTS)
def test_even_weights_give_symmetric_points(solved, name):
    a = solved(name, 101).points.points
    assert np.max(np.abs(a + a[::-1])) < 1e-9


def test_w6_points_are_not_symmetric(solved):
    a = solved("w6", 101).points.points
    assert np.max(np.abs(a + a[::-1])) > 1e-3


@pytest.mark.parametrize("name", ["w1", "w4", "w7"])
def test_different_starts_reach_the_same_minimizer(solved, name):
    wt = get_weight(name)
    reference = solved(name, 17).points.points
    start = 1.5 * initialize(wt, 17).points + 0.1
    cfg = SolverConfig(init_strategy=InitStrategy.USER, initial_points=list(start))
    other = solve(wt, 17, cfg).points.points
    assert np.max(np.abs(other - reference)) < 1e-8


def test_two_point_minimizer_matches_scalar_oracle():
    # a = (-t, t): I(t) = 2K(2t) + 2t^2, so I'(t) = 4K'(2t) + 4t
    wt = get_weight("w2")
    deriv = lambda t: green_kernel_d1(wt.d, 2.0 * t) + t  # noqa: E731
    scan = np.arange(1e-3, 5.0, 1e-3)
    values = np.array([deriv(t) for t in scan])
    i = int(np.argmax(values > 0))
    t_star = brentq(deriv, scan[i - 1], scan[i], xtol=1e-15)

    a = solve(wt, 2).points.points
    assert a[1] == pytest.approx(t_star, abs=1e-8)
    assert a[0] == pytest.approx(-t_star, abs=1e-8)


def test_newton_direction_vanishes_at_the_minimizer(solved):
    wt = get_weight("w2")
    a = solved("w2", 9).points.points
    assert np.max(np.abs(newton_direction(wt, a))) < 1e-12


def test_pure_newton_from_a_nearby_start(solved):
    wt = get_weight("w3")
    reference = solved("w3", 9).points.points
    start = reference + 1e-4 * np.linspace(-1.0, 1.0, 9)
    cfg = SolverConfig(damping=False, init_strategy=InitStrategy.USER, initial_points=list(start))
    result = solve(wt, 9, cfg)
    assert all(rec.alpha == 1.0 for rec in result.trace)
    np.testing.assert_allclose(result.points.points, reference, atol=1e-10)


def test_pure_newton_step_that_leaves_the_ordering_is_rejected(monkeypatch):
    import app.services.optimizer as optimizer

    monkeypatch.setattr(optimizer, "newton_direction", lambda wt, a: np.array([2.0, 0.0, 0.0]))
    with pytest.raises(OrderingError):
        newton_step(get_weight("w2"), [0.0, 1.0, 2.0], damping=False)


def test_damping_keeps_the_ordering(monkeypatch):
    import app.services.optimizer as optimizer

    monkeypatch.setattr(optimizer, "newton_direction", lambda wt, a: np.array([0.6, 0.0, -0.6]))
    _, nxt, alpha = newton_step(get_weight("w2"), [-1.0, 0.0, 1.0], damping=True)
    assert alpha < 1.0
    assert np.all(np.diff(nxt.points) > 0)


def test_iteration_limit_raises_with_trace():
    wt = get_weight("w4")
    with pytest.raises(ConvergenceError) as exc:
        solve(wt, 33, SolverConfig(max_iter=1))
    assert len(exc.value.trace) == 1
    assert set(exc.value.trace[0]) == {"iteration", "energy", "step_inf_norm", "alpha"}


def test_user_start_must_match_n():
    cfg = SolverConfig(init_strategy=InitStrategy.USER, initial_points=[0.0, 1.0, 2.0])
    with pytest.raises(InvalidPointsError):
        solve(get_weight("w2"), 4, cfg)
    with pytest.raises(InvalidPointsError):
        solve(get_weight("w2"), 4, SolverConfig(init_strategy=InitStrategy.USER))


def test_solve_is_deterministic(solved):
    wt = get_weight("w5")
    again = solve(wt, 17).points.points
    np.testing.assert_array_equal(again, solved("w5", 17).points.points)
