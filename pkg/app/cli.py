# app/cli.py
"""
Command-line front end.

    python -m app.cli points --weight w2 --n 9
    python -m app.cli errors --function f1 --n-list 9,17,33 --out f1.csv
    python -m app.cli compare-sinc --function f4 --n-list 33,65
    python -m app.cli diag --weight w2 --n 9 --config run.cfg

Exit codes: 0 success, 2 usage error, 3 numerical failure.
"""
import argparse
import asyncio
import sys
from contextlib import contextmanager
from typing import Dict, List, Optional, Tuple

from pydantic import ValidationError

from app.config import load_run_config_file
from app.models.report_model import DiagReport
from app.models.run_config_model import Command, RunConfig
from app.services.experiment_service import execute_run
from app.services.weights import available_weights
from app.utils.csv_writer import format_cell, write_csv
from app.utils.errors import ConvergenceError, HardyError, NumericalError
from app.utils.logger import get_logger

logger = get_logger(__name__)

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_NUMERICAL = 3

# run-config keys that do not follow the dash-to-underscore rule
_FILE_KEY_ALIASES = {"xlast": "x_last"}


# ------------------ Argument parsing ------------------
def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="hardy-points",
        description="Near-optimal sampling points for weighted Hardy spaces on a strip.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    for command in Command:
        p = sub.add_parser(command.value)
        # defaults stay None so a config file can fill what the flags leave out
        p.add_argument("--weight", help=f"catalog weight ({', '.join(available_weights())})")
        p.add_argument("--epsilon", type=float)
        p.add_argument("--n", type=int)
        p.add_argument("--n-list", dest="n_list", help="comma-separated n values, e.g. 9,17,33")
        p.add_argument("--form", choices=["I", "II"])
        p.add_argument("--function", help="f1..f7 or weight-itself")
        p.add_argument("--x1", type=float)
        p.add_argument("--xlast", dest="x_last", type=float)
        p.add_argument("--grid-count", dest="grid_count", type=int)
        p.add_argument("--out", help="output CSV path (stdout when omitted)")
        p.add_argument("--pure-newton", dest="pure_newton", action="store_true", default=None)
        p.add_argument("--quad-order", dest="quad_order", type=int)
        p.add_argument("--allow-mismatch", dest="allow_mismatch", action="store_true", default=None)
        p.add_argument("--config", help="key = value run-config file")
    return parser


def merge_settings(args: argparse.Namespace) -> RunConfig:
    """
    Flags override the run-config file, which overrides the environment
    defaults baked into RunConfig.
    """
    settings: Dict[str, object] = {
        _FILE_KEY_ALIASES.get(key, key): value
        for key, value in load_run_config_file(args.config).items()
    }
    settings.pop("command", None)
    settings.pop("config", None)
    for key, value in vars(args).items():
        if key in ("command", "config") or value is None:
            continue
        settings[key] = value
    return RunConfig(command=args.command, **settings)


# ------------------ Output ------------------
@contextmanager
def _open_out(path: Optional[str]):
    if path is None:
        yield sys.stdout
        return
    with open(path, "w", encoding="utf-8", newline="") as handle:
        yield handle


def diag_quantities(report: DiagReport) -> List[Tuple[str, object]]:
    appendix = report.appendix
    return [
        ("weight", report.weight),
        ("n", report.n),
        ("iterations", report.iterations),
        ("energy", report.energy.energy),
        ("grad_inf_norm", report.energy.grad_inf_norm),
        ("f_d", report.energy.f_d),
        ("certificate", report.energy.certificate),
        ("min_potential", report.lower_bound.min_value),
        ("lower_bound", report.lower_bound.bound),
        ("lower_bound_gap", report.lower_bound.gap),
        ("lower_bound_passed", report.lower_bound.passed),
        ("h_sep", appendix.h_sep),
        ("max_gap", appendix.max_gap),
        ("applicable", appendix.applicable),
        ("c_d", appendix.c_d),
        ("big_c_n", appendix.big_c_n),
        ("big_c_n_stated", appendix.big_c_n_stated),
        ("s_bound_sum", appendix.s_bound_sum),
        ("s_quad_sum", appendix.s_quad_sum),
        ("t_bound_sum", appendix.t_bound_sum),
        ("t_bound_sum_stated", appendix.t_bound_sum_stated),
        ("t_quad_sum", appendix.t_quad_sum),
        ("e1", appendix.e1),
        ("assembled_bound", appendix.assembled_bound),
    ]


def emit(run: RunConfig, result) -> None:
    if run.command == Command.DIAG:
        quantities = diag_quantities(result)
        for name, value in quantities:
            print(f"{name}: {format_cell(value) or '-'}")
        print(f"note: {result.appendix.label}")
        if run.out:
            with _open_out(run.out) as handle:
                write_csv(handle, ["quantity", "value"], quantities)
        return

    with _open_out(run.out) as handle:
        if run.command == Command.POINTS:
            rows = [(i + 1, float(a)) for i, a in enumerate(result.points.points)]
            write_csv(handle, ["index", "a"], rows)
        elif run.command == Command.APPROX:
            write_csv(handle, ["x", "f", "approx", "abs_error"], result)
        elif run.command == Command.ERRORS:
            write_csv(
                handle,
                ["n", "err_I", "err_II", "certificate"],
                [(r.n, r.err_I, r.err_II, r.certificate) for r in result.rows],
            )
        elif run.command == Command.COMPARE_SINC:
            write_csv(
                handle,
                ["n", "err_I", "err_II", "err_sinc"],
                [(r.n, r.err_I, r.err_II, r.err_sinc) for r in result.rows],
            )
        elif run.command == Command.BOUND:
            write_csv(
                handle,
                ["n", "f_d", "certificate", "min_potential", "lower_bound", "passed"],
                [(r.n, r.f_d, r.certificate, r.min_potential, r.lower_bound, r.passed) for r in result],
            )


def _dump_trace(err: ConvergenceError) -> None:
    write_csv(
        sys.stderr,
        ["iteration", "energy", "step_inf_norm", "alpha"],
        [(r["iteration"], r["energy"], r["step_inf_norm"], r["alpha"]) for r in err.trace],
    )


# ------------------ Entry point ------------------
def main(argv: Optional[List[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        run = merge_settings(args)
        result = asyncio.run(execute_run(run))
        emit(run, result)
    except NumericalError as e:
        logger.error(f"❌ {e}")
        if isinstance(e, ConvergenceError):
            _dump_trace(e)
        return EXIT_NUMERICAL
    except (HardyError, ValidationError, ValueError, FileNotFoundError) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_USAGE
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
