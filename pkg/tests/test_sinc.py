# tests/test_sinc.py
import math

import numpy as np
import pytest

from app.services.approx import Form, build_approximant, evaluate
from app.services.diagnostics import make_grid, sup_error
from app.services.functions import g1, g2, get_function
from app.services.sinc import (
    SINC_WEIGHTS,
    Transform,
    build_sinc,
    eval_sinc,
    make_transformed_function,
    psi,
    psi_complements,
)
from app.services.weights import get_weight
from app.utils.errors import UnknownWeightError

from tests.conftest import ERROR_FLOOR

EPS = 1e-10


def test_w4_parameters():
    app = build_sinc("w4", 101, EPS)
    assert app.h == pytest.approx(math.sqrt(4 * math.pi * (math.pi - EPS) / 101), rel=1e-15)
    assert app.h == pytest.approx(0.6252, abs=1e-4)
    assert (app.n_minus, app.n_plus) == (50, 50)
    assert app.transform == Transform.TANH


def test_w5_parameters():
    app = build_sinc("w5", 33, EPS)
    assert app.h == pytest.approx(2 / 33 * math.log((math.pi - 2 * EPS) * 33), rel=1e-15)
    assert (app.n_minus, app.n_plus) == (16, 16)
    assert app.transform == Transform.DE


def test_w6_parameters():
    app = build_sinc("w6", 33, EPS)
    assert app.h == pytest.approx(math.sqrt(8 * math.pi * (math.pi - EPS) / (3 * 33)), rel=1e-15)
    assert (app.n_minus, app.n_plus) == (8, 24)


def test_w7_parameters():
    n = 33
    app = build_sinc("w7", n, EPS)
    h = 2 / n * math.log((math.pi / 2 - EPS) * n / math.sqrt(1.5))
    assert app.h == pytest.approx(h, rel=1e-15)
    assert app.n_minus == math.floor(n / 2 - math.log(1.5) / (2 * h))
    assert app.n_minus + app.n_plus + 1 == n


def test_even_n_puts_the_extra_point_right():
    app = build_sinc("w4", 10, EPS)
    assert (app.n_minus, app.n_plus) == (4, 5)
    assert app.nodes.size == 10


def test_sinc_needs_three_points():
    with pytest.raises(ValueError):
        build_sinc("w4", 2, EPS)


def test_sinc_only_for_its_weights():
    with pytest.raises(UnknownWeightError):
        build_sinc("w1", 33, EPS)
    assert set(SINC_WEIGHTS) == {"w4", "w5", "w6", "w7"}


def test_sinc_interpolates_at_its_nodes():
    app = build_sinc("w4", 21, EPS)
    f = get_function("f4", get_weight("w4")).f
    nodes = app.nodes
    np.testing.assert_allclose(eval_sinc(app, f, nodes), f(nodes), atol=1e-14)
    assert isinstance(eval_sinc(app, f, 0.3), float)


def test_transformations():
    x = np.array([-2.0, 0.0, 1.0])
    np.testing.assert_allclose(psi(Transform.TANH, x), np.tanh(x / 2))
    np.testing.assert_allclose(psi(Transform.DE, x), np.tanh(np.pi / 2 * np.sinh(x)))
    np.testing.assert_array_equal(psi(Transform.NONE, x), x)
    assert psi(Transform.TANH, 0.0) == 0.0
    assert psi(Transform.DE, 0.0) == 0.0
    g = make_transformed_function(lambda t: 1 - t * t, "TANH")
    np.testing.assert_allclose(g(x), 1 - np.tanh(x / 2) ** 2)


def test_complements_keep_tail_accuracy():
    x = np.array([-60.0, -1.0, 0.5, 60.0])
    t, one_minus, one_plus = psi_complements(Transform.TANH, x)
    np.testing.assert_allclose(t, np.tanh(x / 2))
    np.testing.assert_allclose(one_minus, 2 / (1 + np.exp(x)), rtol=1e-14)
    np.testing.assert_allclose(one_plus, 2 / (1 + np.exp(-x)), rtol=1e-14)
    # tanh(30) rounds to 1, the complement does not
    assert one_minus[-1] > 0


def test_g1_through_tanh_gives_f4():
    x = np.array([-40.0, -3.0, 0.0, 1.5, 40.0])
    f4 = make_transformed_function(g1, Transform.TANH, complements=True)
    expected = (1 + np.tanh(x / 2) ** 2) / np.cosh(x / 2)
    np.testing.assert_allclose(f4(x), expected, rtol=1e-13)


def test_g2_through_tanh_gives_four_w6():
    x = np.array([-40.0, -3.0, 0.0, 1.5, 40.0])
    f6 = make_transformed_function(g2, Transform.TANH, complements=True)
    w6 = get_weight("w6").w(x)
    np.testing.assert_allclose(f6(x), 4 * w6 * (1 + np.tanh(x / 2) ** 2), rtol=1e-12)


def test_plain_g_matches_complement_form_in_the_bulk():
    x = np.linspace(-1.5, 1.5, 13)
    for g in (g1, g2):
        plain = make_transformed_function(g, Transform.DE)
        accurate = make_transformed_function(g, Transform.DE, complements=True)
        np.testing.assert_allclose(plain(x), accurate(x), rtol=1e-8, atol=1e-15)


@pytest.mark.parametrize("name, fname", [("w4", "f4"), ("w5", "f5"), ("w6", "f6"), ("w7", "f7")])
@pytest.mark.parametrize("n", [33, 65])
def test_formulas_beat_sinc(solved, name, fname, n):
    wt = get_weight(name)
    fn = get_function(fname, wt)
    grid = make_grid(wt)
    result = solved(name, n)
    sinc = build_sinc(name, n, EPS)
    err_sinc = sup_error(lambda x: eval_sinc(sinc, fn.f, x), fn.f, grid)
    if err_sinc < ERROR_FLOOR:
        pytest.skip(f"sinc error {err_sinc:.2e} is at the double-precision floor")
    for form in (Form.I, Form.II):
        app = build_approximant(wt, result.points, fn.f, form)
        assert sup_error(lambda x: evaluate(app, x), fn.f, grid) < err_sinc
