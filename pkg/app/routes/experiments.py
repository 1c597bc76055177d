# app/routes/experiments.py
from typing import Optional

from fastapi import APIRouter, HTTPException
from pydantic import ValidationError

from app.config import DEFAULT_EPSILON, DEFAULT_QUAD_ORDER
from app.models.run_config_model import Command, RunConfig
from app.services.experiment_service import execute_run
from app.services.weights import available_weights, get_weight
from app.utils.errors import HardyError, NumericalError
from app.utils.logger import get_logger

logger = get_logger(__name__)

router = APIRouter(tags=["Experiments"])


async def _run(**fields):
    """
    Validates and executes one run, mapping failures to HTTP errors:
    numerical failures are 422, bad input is 400.
    """
    try:
        run = RunConfig(**{k: v for k, v in fields.items() if v is not None})
        return await execute_run(run)
    except NumericalError as e:
        logger.error(f"❌ {e}")
        raise HTTPException(status_code=422, detail=str(e))
    except (HardyError, ValidationError, ValueError) as e:
        raise HTTPException(status_code=400, detail=str(e))


@router.get("/health")
async def health():
    return {"status": "ok"}


@router.get("/weights")
async def list_weights(epsilon: float = DEFAULT_EPSILON):
    try:
        weights = [get_weight(name, epsilon) for name in available_weights()]
    except ValueError as e:
        raise HTTPException(status_code=400, detail=str(e))
    return {"status": "success", "weights": [{"name": w.name, "d": w.d} for w in weights]}


@router.get("/points")
async def points(weight: str, n: int, epsilon: Optional[float] = None, pure_newton: bool = False):
    result = await _run(command=Command.POINTS, weight=weight, n=n, epsilon=epsilon, pure_newton=pure_newton)
    return {
        "status": "success",
        "weight": weight,
        "n": n,
        "points": result.points.to_list(),
        "iterations": result.iterations,
        "energy_report": result.energy_report.model_dump(),
    }


@router.get("/errors")
async def errors(
    n_list: str,
    weight: Optional[str] = None,
    function: Optional[str] = None,
    epsilon: Optional[float] = None,
):
    table = await _run(
        command=Command.ERRORS, weight=weight, function=function, n_list=n_list, epsilon=epsilon
    )
    return {"status": "success", **table.model_dump(exclude={"rows": {"__all__": {"err_sinc"}}})}


@router.get("/compare-sinc")
async def compare_sinc(function: str, n_list: str, weight: Optional[str] = None, epsilon: Optional[float] = None):
    table = await _run(
        command=Command.COMPARE_SINC, weight=weight, function=function, n_list=n_list, epsilon=epsilon
    )
    return {"status": "success", **table.model_dump()}


@router.get("/diag")
async def diag(weight: str, n: int, quad_order: int = DEFAULT_QUAD_ORDER, epsilon: Optional[float] = None):
    report = await _run(command=Command.DIAG, weight=weight, n=n, quad_order=quad_order, epsilon=epsilon)
    return {"status": "success", **report.model_dump()}
