# app/services/functions.py
"""
Built-in test functions, each paired with the weight of the space it lives in.
"""
from typing import Callable, Dict, List

import numpy as np
from pydantic import BaseModel, ConfigDict

from app.models.weight_model import Weight
from app.services.sinc import Transform, make_transformed_function
from app.services.weights import get_weight
from app.utils.errors import PairingError, UnknownFunctionError

WEIGHT_ITSELF = "weight-itself"
# functions with a sinc baseline
SINC_FUNCTIONS = ("f4", "f5", "f6", "f7")


class CatalogFunction(BaseModel):
    model_config = ConfigDict(frozen=True)

    name: str
    weight_name: str
    f: Callable[[np.ndarray], np.ndarray]
    # True when ||f|| = sup |f/w| over the strip is known to be <= 1
    unit_norm: bool = False


def _arr(x):
    return np.asarray(x, dtype=float)


def _f2(x):
    x = _arr(x)
    return x * x / ((np.pi / 4) ** 2 + x * x) * np.exp(-x * x)


# Functions on (-1, 1), written against the complements 1 - t and 1 + t
def g1(t, one_minus=None, one_plus=None):
    """sqrt(1 - t^2) (1 + t^2)"""
    t = _arr(t)
    one_minus = 1.0 - t if one_minus is None else one_minus
    one_plus = 1.0 + t if one_plus is None else one_plus
    return np.sqrt(one_minus * one_plus) * (1.0 + t * t)


def g2(t, one_minus=None, one_plus=None):
    """(1 - t)^(1/2) (1 + t)^(3/2) (1 + t^2)"""
    t = _arr(t)
    one_minus = 1.0 - t if one_minus is None else one_minus
    one_plus = 1.0 + t if one_plus is None else one_plus
    return np.sqrt(one_minus) * one_plus * np.sqrt(one_plus) * (1.0 + t * t)


_f4 = make_transformed_function(g1, Transform.TANH, complements=True)
_f5 = make_transformed_function(g1, Transform.DE, complements=True)
_f6 = make_transformed_function(g2, Transform.TANH, complements=True)
_f7 = make_transformed_function(g2, Transform.DE, complements=True)

# (weight, f built from that weight's w, unit_norm)
_CATALOG: Dict[str, tuple] = {
    "f1": ("w1", lambda w: w, True),
    "f2": ("w2", lambda w: _f2, False),
    "f3": ("w3", lambda w: w, True),
    "f4": ("w4", lambda w: _f4, False),
    "f5": ("w5", lambda w: _f5, False),
    "f6": ("w6", lambda w: _f6, False),
    "f7": ("w7", lambda w: _f7, False),
}


def available_functions() -> List[str]:
    return sorted(_CATALOG) + [WEIGHT_ITSELF]


def paired_weight(name: str) -> str:
    """Weight name the catalog pairs with function `name`."""
    if name not in _CATALOG:
        raise UnknownFunctionError(name, available_functions())
    return _CATALOG[name][0]


def get_function(name: str, wt: Weight, allow_mismatch: bool = False) -> CatalogFunction:
    """
    Resolves a catalog function against the weight it will be approximated
    in. `weight-itself` turns the weight into the function (||f|| = 1).
    """
    if name == WEIGHT_ITSELF:
        return CatalogFunction(name=name, weight_name=wt.name, f=wt.w, unit_norm=True)
    if name not in _CATALOG:
        raise UnknownFunctionError(name, available_functions())

    weight_name, build, unit_norm = _CATALOG[name]
    if weight_name != wt.name and not allow_mismatch:
        raise PairingError(f"function '{name}' is paired with weight '{weight_name}', not '{wt.name}'")
    # f is always built from its own catalog weight, even when approximated in another space
    own = wt if weight_name == wt.name else get_weight(weight_name, 1e-10)
    return CatalogFunction(name=name, weight_name=weight_name, f=build(own.w), unit_norm=unit_norm)
