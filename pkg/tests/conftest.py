# tests/conftest.py
from functools import lru_cache

import pytest

from app.models.report_model import SolverConfig
from app.services.optimizer import solve
from app.services.weights import get_weight

CATALOG = ["w1", "w2", "w3", "w4", "w5", "w6", "w7"]
EVEN_WEIGHTS = ["w1", "w2", "w3", "w4", "w5"]

# errors below this are rounding noise in double precision
ERROR_FLOOR = 1e-13


@lru_cache(maxsize=None)
def _solve_cached(name: str, n: int):
    return solve(get_weight(name), n, SolverConfig())


@pytest.fixture(scope="session")
def solved():
    """solved(name, n) -> SolveResult, shared across the whole session."""
    return _solve_cached


@pytest.fixture(params=CATALOG)
def catalog_weight(request):
    return get_weight(request.param)
