# tests/test_point_model.py
import numpy as np
import pytest

from app.models.point_model import PointConfig, as_points_array, separation_ok
from app.utils.errors import ConditioningError, InvalidPointsError


def test_gaps_and_metadata():
    cfg = PointConfig(points=[-1.0, 0.0, 0.5, 2.0])
    assert cfg.n == 4
    np.testing.assert_allclose(cfg.gaps, [1.0, 0.5, 1.5])
    assert cfg.min_gap == 0.5
    assert cfg.max_gap == 1.5
    assert cfg.to_list() == [-1.0, 0.0, 0.5, 2.0]


def test_points_are_read_only():
    cfg = PointConfig(points=[0.0, 1.0])
    with pytest.raises(ValueError):
        cfg.points[0] = 5.0


@pytest.mark.parametrize(
    "points",
    [[1.0], [], [0.0, np.nan], [0.0, np.inf], [1.0, 0.0], [0.0, 0.0]],
)
def test_invalid_configurations(points):
    with pytest.raises(InvalidPointsError):
        PointConfig(points=points)


def test_near_coincident_points():
    with pytest.raises(ConditioningError):
        PointConfig(points=[0.0, 1.0, 1.0 + 1e-15])
    assert not separation_ok(np.array([0.0, 1e-14]))
    assert separation_ok(np.array([0.0, 1e-10]))


def test_as_points_array():
    cfg = PointConfig(points=[0.0, 1.0])
    assert as_points_array(cfg) is cfg.points
    np.testing.assert_array_equal(as_points_array([[1.0, 2.0]]), [1.0, 2.0])
