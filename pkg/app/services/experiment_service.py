# app/services/experiment_service.py
"""
Runs whole experiments: solves for each n, builds the approximants, and
collects the rows the CLI and HTTP layers write out. Per-n solves are
independent, so the async entry points fan them out to worker threads and
gather results back in n order.
"""
import asyncio
from typing import List, Optional, Tuple

import numpy as np

from app.config import DEFAULT_MAX_ITER, DEFAULT_TOL_STEP
from app.models.report_model import (
    BoundRow,
    DiagReport,
    ErrorRow,
    ErrorTable,
    EvalGrid,
    SolveResult,
    SolverConfig,
)
from app.models.run_config_model import Command, RunConfig
from app.models.weight_model import Weight
from app.services.approx import Form, build_approximant, evaluate
from app.services.diagnostics import (
    CATALOG_THRESHOLDS,
    appendix_quantities,
    check_potential_lower_bound,
    make_grid,
    sup_error,
)
from app.services.functions import CatalogFunction, get_function
from app.services.optimizer import solve
from app.services.sinc import build_sinc, eval_sinc
from app.services.weights import get_weight
from app.utils.logger import get_logger

logger = get_logger(__name__)


# ------------------ Resolution ------------------
def solver_config(run: RunConfig) -> SolverConfig:
    return SolverConfig(
        tol_step=DEFAULT_TOL_STEP,
        max_iter=DEFAULT_MAX_ITER,
        damping=not run.pure_newton,
    )


def resolve(run: RunConfig) -> Tuple[Weight, Optional[CatalogFunction]]:
    wt = get_weight(run.weight, run.epsilon)
    fn = get_function(run.function, wt, run.allow_mismatch) if run.function else None
    return wt, fn


def grid_for(wt: Weight, run: RunConfig) -> EvalGrid:
    threshold = CATALOG_THRESHOLDS.get(wt.name, 1e-20)
    return make_grid(wt, threshold=threshold, count=run.grid_count, x1=run.x1, x_last=run.x_last)


# ------------------ Single-n work ------------------
def compute_points(wt: Weight, n: int, cfg: SolverConfig) -> SolveResult:
    logger.info(f"Solving {wt.name}, n={n}")
    return solve(wt, n, cfg)


def error_row(
    wt: Weight,
    fn: CatalogFunction,
    n: int,
    cfg: SolverConfig,
    grid: EvalGrid,
    with_sinc: bool = False,
    epsilon: float = 1e-10,
) -> ErrorRow:
    result = compute_points(wt, n, cfg)
    errs = {}
    for form in (Form.I, Form.II):
        app = build_approximant(wt, result.points, fn.f, form)
        errs[form] = sup_error(lambda x: evaluate(app, x), fn.f, grid)

    err_sinc = None
    if with_sinc:
        sinc = build_sinc(wt.name, n, epsilon)
        err_sinc = sup_error(lambda x: eval_sinc(sinc, fn.f, x), fn.f, grid)

    return ErrorRow(
        n=n,
        err_I=errs[Form.I],
        err_II=errs[Form.II],
        err_sinc=err_sinc,
        certificate=result.energy_report.certificate,
    )


def bound_row(wt: Weight, n: int, cfg: SolverConfig, grid: EvalGrid) -> BoundRow:
    result = compute_points(wt, n, cfg)
    check = check_potential_lower_bound(wt, result.points, grid)
    if not check.passed:
        logger.warning(f"⚠️ potential lower bound violated for {wt.name}, n={n}: gap {check.gap:.3e}")
    return BoundRow(
        n=n,
        f_d=result.energy_report.f_d,
        certificate=result.energy_report.certificate,
        min_potential=check.min_value,
        lower_bound=check.bound,
        passed=check.passed,
    )


def approx_rows(
    wt: Weight, fn: CatalogFunction, n: int, cfg: SolverConfig, grid: EvalGrid, form: Form
) -> List[Tuple[float, float, float, float]]:
    """(x, f(x), approximation, |error|) for every grid point."""
    result = compute_points(wt, n, cfg)
    app = build_approximant(wt, result.points, fn.f, form)
    x = grid.points
    exact = np.asarray(fn.f(x), dtype=float)
    approx = np.asarray(evaluate(app, x), dtype=float)
    return [
        (float(xi), float(fi), float(ai), float(abs(fi - ai)))
        for xi, fi, ai in zip(x, exact, approx)
    ]


def diag_report(wt: Weight, n: int, cfg: SolverConfig, grid: EvalGrid, quad_order: int) -> DiagReport:
    result = compute_points(wt, n, cfg)
    return DiagReport(
        weight=wt.name,
        n=n,
        iterations=result.iterations,
        energy=result.energy_report,
        lower_bound=check_potential_lower_bound(wt, result.points, grid),
        appendix=appendix_quantities(wt, result.points, quad_order),
    )


# ------------------ Multi-n runs ------------------
async def run_error_table(
    wt: Weight,
    fn: CatalogFunction,
    sizes: List[int],
    cfg: SolverConfig,
    grid: EvalGrid,
    with_sinc: bool = False,
    epsilon: float = 1e-10,
) -> ErrorTable:
    """
    One row per n, in the order given. A failure for any n propagates and
    no partial table is returned.
    """
    rows = await asyncio.gather(
        *(asyncio.to_thread(error_row, wt, fn, n, cfg, grid, with_sinc, epsilon) for n in sizes)
    )
    logger.info(f"✅ Error table for {fn.name} in {wt.name}: {len(rows)} rows")
    return ErrorTable(weight=wt.name, function=fn.name, rows=list(rows))


async def run_bounds(wt: Weight, sizes: List[int], cfg: SolverConfig, grid: EvalGrid) -> List[BoundRow]:
    rows = await asyncio.gather(*(asyncio.to_thread(bound_row, wt, n, cfg, grid) for n in sizes))
    return list(rows)


async def execute_run(run: RunConfig):
    """
    Dispatches a validated RunConfig. Returns the result object for the
    command: SolveResult (points), list of tuples (approx), ErrorTable
    (errors/compare-sinc), list of BoundRow (bound) or DiagReport (diag).
    """
    wt, fn = resolve(run)
    cfg = solver_config(run)

    if run.command == Command.POINTS:
        return await asyncio.to_thread(compute_points, wt, _single(run), cfg)

    if run.command == Command.COMPARE_SINC:
        _check_sinc(wt, run)

    grid = grid_for(wt, run)

    if run.command == Command.APPROX:
        return await asyncio.to_thread(approx_rows, wt, fn, _single(run), cfg, grid, run.form)
    if run.command == Command.ERRORS:
        return await run_error_table(wt, fn, run.sizes(), cfg, grid)
    if run.command == Command.COMPARE_SINC:
        return await run_error_table(wt, fn, run.sizes(), cfg, grid, with_sinc=True, epsilon=run.epsilon)
    if run.command == Command.BOUND:
        return await run_bounds(wt, run.sizes(), cfg, grid)
    return await asyncio.to_thread(diag_report, wt, _single(run), cfg, grid, run.quad_order)


def _single(run: RunConfig) -> int:
    sizes = run.sizes()
    if len(sizes) != 1:
        raise ValueError(f"'{run.command.value}' takes a single --n, got {sizes}")
    return sizes[0]


def _check_sinc(wt: Weight, run: RunConfig) -> None:
    # fail before any solve when the baseline cannot be built
    for n in run.sizes():
        build_sinc(wt.name, n, run.epsilon)
