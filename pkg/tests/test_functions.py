# tests/test_functions.py
import numpy as np
import pytest

from app.services.functions import WEIGHT_ITSELF, available_functions, get_function, paired_weight
from app.services.weights import get_weight
from app.utils.errors import PairingError, UnknownFunctionError


@pytest.mark.parametrize("name, weight", [(f"f{i}", f"w{i}") for i in range(1, 8)])
def test_catalog_pairs(name, weight):
    assert paired_weight(name) == weight
    fn = get_function(name, get_weight(weight))
    assert fn.weight_name == weight


def test_available_functions_includes_weight_itself():
    names = available_functions()
    assert WEIGHT_ITSELF in names
    assert {"f1", "f4", "f7"} <= set(names)


def test_weight_itself_is_the_weight():
    wt = get_weight("w3")
    fn = get_function(WEIGHT_ITSELF, wt)
    x = np.linspace(-2, 2, 9)
    np.testing.assert_array_equal(fn.f(x), wt.w(x))
    assert fn.unit_norm


def test_unit_norm_flags():
    assert get_function("f1", get_weight("w1")).unit_norm
    assert get_function("f3", get_weight("w3")).unit_norm
    assert not get_function("f4", get_weight("w4")).unit_norm


def test_f2_values():
    f2 = get_function("f2", get_weight("w2")).f
    x = 1.0
    expected = x * x / ((np.pi / 4) ** 2 + x * x) * np.exp(-x * x)
    assert f2(x) == pytest.approx(expected)
    assert f2(0.0) == 0.0


def test_f4_and_f6_closed_forms():
    x = np.array([-3.0, 0.0, 1.5])
    f4 = get_function("f4", get_weight("w4")).f
    f6 = get_function("f6", get_weight("w6")).f
    np.testing.assert_allclose(f4(x), (1 + np.tanh(x / 2) ** 2) / np.cosh(x / 2), rtol=1e-13)
    w6 = get_weight("w6").w(x)
    np.testing.assert_allclose(f6(x), 4 * w6 * (1 + np.tanh(x / 2) ** 2), rtol=1e-13)


def test_f5_and_f7_closed_forms():
    x = np.array([-2.5, -0.5, 0.0, 1.0, 2.5])
    inner = np.pi / 2 * np.sinh(x)
    f5 = get_function("f5", get_weight("w5")).f
    f7 = get_function("f7", get_weight("w7")).f
    np.testing.assert_allclose(f5(x), (1 + np.tanh(inner) ** 2) / np.cosh(inner), rtol=1e-12)
    w7 = get_weight("w7").w(x)
    np.testing.assert_allclose(f7(x), 4 * w7 * (1 + np.tanh(inner) ** 2), rtol=1e-12)


def test_transformed_functions_decay_like_their_weights():
    wt = get_weight("w4")
    f4 = get_function("f4", wt).f
    x = np.array([45.0, 60.0])
    # 1 + tanh^2 -> 2 in the tail
    np.testing.assert_allclose(f4(x) / wt.w(x), 2.0, rtol=1e-12)


def test_mismatched_pair_is_rejected():
    with pytest.raises(PairingError):
        get_function("f4", get_weight("w5"))


def test_mismatch_can_be_overridden():
    fn = get_function("f4", get_weight("w5"), allow_mismatch=True)
    assert fn.weight_name == "w4"
    assert fn.f(0.0) == pytest.approx(1.0)


def test_unknown_function():
    with pytest.raises(UnknownFunctionError):
        get_function("f9", get_weight("w1"))
    with pytest.raises(UnknownFunctionError):
        paired_weight("f9")
