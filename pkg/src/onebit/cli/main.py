"""
onebit command-line interface.

Every subcommand emits one table (CSV by default, JSON with ``--format json``) to stdout or
``--output``. Exit status: 0 success, 2 usage error, 3 numerical failure; errors are written to
stderr as a single JSON line.
"""
import argparse
from contextlib import contextmanager
import sys
from typing import Any, Dict, Iterator, List, Optional, Sequence, TextIO, Tuple, Type

from pydantic import BaseModel, ValidationError

from onebit import __version__
from onebit.asymptotics.regimes import (
    Regime,
    RegimeApprox,
    high_snr_capacity,
    large_alpha_capacity,
    low_snr_capacity,
    saturation_alpha,
    small_alpha_capacity,
)
from onebit.common.config import settings, settings_error
from onebit.common.errors import OneBitError
from onebit.common.logger import logger, setup_logging
from onebit.finite.exact import (
    Conditional,
    FiniteSystem,
    Method,
    complex_exact_capacity,
    exact_capacity,
)
from onebit.replica.capacity import capacity
from onebit.replica.saddle import SolverOptions, SystemPoint, solve_saddle
from onebit.schemas.results import (
    ApproxRow,
    CapacityRow,
    ContourRow,
    ExactRow,
    FiniteComparisonRow,
    FitRow,
    SaddleRow,
    SeriesRow,
    ThresholdRow,
    rho_from_db,
)
from onebit.schemas.run_config import (
    ApproxParams,
    CapacityParams,
    Command,
    ContourParams,
    ExactParams,
    FigureParams,
    FitEParams,
    OutputFormat,
    RunConfig,
    SaddleParams,
    SweepParams,
    ThresholdParams,
)
from onebit.sweep.contour import contour, fit_quadratic_coefficients, min_cost_point
from onebit.sweep.grid import sweep

from .emit import error_line, write_csv, write_json
from .figures import FIGURES, reproduce_figure

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_NUMERICAL = 3

Table = Tuple[List[BaseModel], Type[BaseModel], Dict[str, Any]]


class UsageError(Exception):
    """Raised instead of argparse's print-and-exit"""


class _Parser(argparse.ArgumentParser):
    def error(self, message: str) -> None:  # type: ignore[override]
        raise UsageError(message)


# ---------------------------------------------------------------------------------------------
# Argument parsing
# ---------------------------------------------------------------------------------------------


def _add_snr(parser: argparse.ArgumentParser, many: bool = False) -> None:
    group = parser.add_mutually_exclusive_group(required=True)
    nargs = "+" if many else None
    group.add_argument("--rho", type=float, nargs=nargs, help="linear SNR")
    group.add_argument("--snr-db", type=float, nargs=nargs, help="SNR in dB, rho = 10^(dB/10)")


def _add_output_options(parser: argparse.ArgumentParser, top_level: bool) -> None:
    # after the subcommand, an omitted option must not overwrite one given before it
    unset = None if top_level else argparse.SUPPRESS
    formats = [f.value for f in OutputFormat]
    parser.add_argument("--format", choices=formats, default="csv" if top_level else unset)
    parser.add_argument("--output", default=unset, help="write the table here instead of stdout")
    parser.add_argument(
        "--workers", type=int, default=unset, help="process-pool width (default ONEBIT_WORKERS)"
    )
    parser.add_argument("--log-level", default=unset, help="default ONEBIT_LOG_LEVEL")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="onebit", description="Capacity of one-bit transceiver arrays")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    _add_output_options(parser, top_level=True)
    common = _Parser(add_help=False)
    _add_output_options(common, top_level=False)
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def add_command(command: Command, help_text: str) -> argparse.ArgumentParser:
        return sub.add_parser(command.value, parents=[common], help=help_text)

    p = add_command(Command.CAPACITY, "replica-symmetric capacity at one point")
    _add_snr(p)
    p.add_argument("--alpha", type=float, required=True)
    p.add_argument(
        "--complex", dest="complex_signals", action="store_true", help="add the I-Q capacity"
    )

    p = add_command(Command.SADDLE, "saddle point (q, E, A) at one point")
    _add_snr(p)
    p.add_argument("--alpha", type=float, required=True)

    p = add_command(Command.SWEEP, "capacity over a rho x alpha grid")
    _add_snr(p, many=True)
    p.add_argument("--alpha", type=float, nargs="+", required=True)

    p = add_command(Command.CONTOUR, "constant-capacity contour")
    p.add_argument("--target", type=float, required=True)
    p.add_argument("--alpha-min", type=float, required=True)
    p.add_argument("--alpha-max", type=float, required=True)
    p.add_argument("--steps", type=int, default=20)
    p.add_argument(
        "--no-approx", dest="approx", action="store_false", help="skip the closed-form SNR"
    )

    p = add_command(Command.EXACT, "finite-size capacity over random channels")
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--n", type=int, required=True)
    _add_snr(p)
    p.add_argument("--channels", type=int, default=100)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--complex", dest="complex_signals", action="store_true")
    p.add_argument(
        "--conditional",
        choices=[c.value for c in Conditional],
        default=Conditional.CLOSED_FORM.value,
    )
    p.add_argument("--method", choices=[m.value for m in Method])
    p.add_argument("--samples", type=int)

    p = add_command(Command.APPROX, "limiting-regime approximations")
    _add_snr(p)
    p.add_argument("--alpha", type=float, required=True)
    p.add_argument("--regime", choices=[r.value for r in Regime])

    p = add_command(Command.THRESHOLD, "noise-free saturation threshold alpha*")
    p.add_argument("--lo", type=float, default=1.0)
    p.add_argument("--hi", type=float, default=1.5)

    p = add_command(Command.FIT_E, "refit the quadratic large-alpha E model")
    p.add_argument("--rho-max", type=float, default=1.5)
    p.add_argument("--points", type=int, default=60)

    p = add_command(Command.FIGURE, "reproduce a reference figure's data")
    p.add_argument("figure", choices=sorted(FIGURES))
    p.add_argument("--channels", type=int, default=100)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--m", type=int, default=8)
    p.add_argument("--step", type=float, default=0.1)

    return parser


def _snr_value(args: argparse.Namespace) -> Any:
    if args.rho is not None:
        return args.rho
    if isinstance(args.snr_db, list):
        return [rho_from_db(db) for db in args.snr_db]
    return rho_from_db(args.snr_db)


_GLOBAL_KEYS = {"format", "output", "workers", "log_level", "command", "rho", "snr_db"}


def config_from_args(args: argparse.Namespace) -> RunConfig:
    """Parsed arguments as a validated :class:`RunConfig`."""
    parameters = {k: v for k, v in vars(args).items() if k not in _GLOBAL_KEYS and v is not None}
    if hasattr(args, "rho"):
        parameters["rho"] = _snr_value(args)
    return RunConfig(
        command=args.command, parameters=parameters, output=args.output, format=args.format
    )


# ---------------------------------------------------------------------------------------------
# Commands
# ---------------------------------------------------------------------------------------------


def _run_capacity(params: CapacityParams, options: SolverOptions, workers: Optional[int]) -> Table:
    result = capacity(SystemPoint(rho=params.rho, alpha=params.alpha), options)
    c_complex = 2.0 * result.c_avg if params.complex_signals else None
    return [CapacityRow.from_result(result, c_complex)], CapacityRow, {}


def _run_saddle(params: SaddleParams, options: SolverOptions, workers: Optional[int]) -> Table:
    point = SystemPoint(rho=params.rho, alpha=params.alpha)
    return [SaddleRow.from_solution(point, solve_saddle(point, options))], SaddleRow, {}


def _run_sweep(params: SweepParams, options: SolverOptions, workers: Optional[int]) -> Table:
    cells = sweep(params.rho, params.alpha, options, workers)
    rows: List[BaseModel] = [CapacityRow.from_cell(c) for c in cells]
    return rows, CapacityRow, {}


def _run_contour(params: ContourParams, options: SolverOptions, workers: Optional[int]) -> Table:
    alpha_range = (params.alpha_min, params.alpha_max)
    points = contour(params.target, alpha_range, params.steps, options, workers, params.approx)
    notes: Dict[str, Any] = {}
    if any(p.ok for p in points):
        best = min_cost_point(points)
        notes = {"min_cost_alpha": best.alpha, "min_cost_rho": best.rho}
    rows: List[BaseModel] = [ContourRow.from_point(p) for p in points]
    return rows, ContourRow, notes


def _run_exact(params: ExactParams, options: SolverOptions, workers: Optional[int]) -> Table:
    system = FiniteSystem(m=params.m, n=params.n, rho=params.rho)
    estimator = complex_exact_capacity if params.complex_signals else exact_capacity
    estimate = estimator(
        system,
        params.channels,
        params.seed,
        conditional=params.conditional,
        method=params.method,
        samples=params.samples,
        workers=workers,
        rule=options.rule,
    )
    replica = capacity(SystemPoint(rho=system.rho, alpha=system.alpha), options).c_avg
    if params.complex_signals:
        replica *= 2.0
    return [ExactRow.from_estimate(estimate, replica)], ExactRow, {}


def _run_approx(params: ApproxParams, options: SolverOptions, workers: Optional[int]) -> Table:
    point = SystemPoint(rho=params.rho, alpha=params.alpha)
    c_full = capacity(point, options).c_avg
    regimes = [params.regime] if params.regime is not None else list(Regime)
    rows: List[BaseModel] = []
    for regime in regimes:
        try:
            approx = _approximate(regime, point, options)
        except OneBitError as exc:
            rows.append(
                ApproxRow(
                    regime=regime.value, snr_linear=point.rho, alpha=point.alpha, error=str(exc)
                )
            )
            continue
        rho = float("inf") if regime == Regime.HIGH_SNR else point.rho
        rows.append(ApproxRow.from_approx(approx, rho, point.alpha, c_full))
    return rows, ApproxRow, {}


def _approximate(regime: Regime, point: SystemPoint, options: SolverOptions) -> RegimeApprox:
    if regime == Regime.HIGH_SNR:
        return high_snr_capacity(point.alpha, options)
    if regime == Regime.LOW_SNR:
        return low_snr_capacity(point)
    if regime == Regime.LARGE_ALPHA:
        return large_alpha_capacity(point, options.rule)
    return small_alpha_capacity(point, options.rule)


def _run_threshold(
    params: ThresholdParams, options: SolverOptions, workers: Optional[int]
) -> Table:
    alpha_star = saturation_alpha(options, (params.lo, params.hi))
    return [ThresholdRow(alpha_star=alpha_star, lo=params.lo, hi=params.hi)], ThresholdRow, {}


def _run_fit_e(params: FitEParams, options: SolverOptions, workers: Optional[int]) -> Table:
    fit = fit_quadratic_coefficients(params.rho_max, params.points, options.rule)
    return [FitRow.from_fit(fit)], FitRow, {}


def _run_figure(params: FigureParams, options: SolverOptions, workers: Optional[int]) -> Table:
    table = reproduce_figure(params, options, workers)
    return table.rows, table.row_type, table.notes


COMMANDS = {
    Command.CAPACITY: _run_capacity,
    Command.SADDLE: _run_saddle,
    Command.SWEEP: _run_sweep,
    Command.CONTOUR: _run_contour,
    Command.EXACT: _run_exact,
    Command.APPROX: _run_approx,
    Command.THRESHOLD: _run_threshold,
    Command.FIT_E: _run_fit_e,
    Command.FIGURE: _run_figure,
}

CELL_ROW_TYPES = (CapacityRow, ApproxRow, FiniteComparisonRow, SeriesRow)


# ---------------------------------------------------------------------------------------------
# Entry points
# ---------------------------------------------------------------------------------------------


@contextmanager
def _open_output(path: Optional[str], default: TextIO) -> Iterator[TextIO]:
    if path is None:
        yield default
        return
    with open(path, "w", encoding="utf-8", newline="") as handle:
        yield handle


def _failed_rows(rows: Sequence[BaseModel]) -> List[BaseModel]:
    return [row for row in rows if getattr(row, "error", None)]


def run(
    config: RunConfig,
    stdout: Optional[TextIO] = None,
    stderr: Optional[TextIO] = None,
    workers: Optional[int] = None,
) -> int:
    """Execute ``config``, emit its table and return the exit status."""
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    options = SolverOptions.from_settings()
    params = config.parameters

    try:
        rows, row_type, notes = COMMANDS[config.command](params, options, workers)
    except OneBitError as exc:
        logger.error(f"{config.command.value} failed: {exc}")
        stderr.write(
            error_line(
                type(exc).__name__,
                str(exc),
                command=config.command.value,
                cell=params.model_dump(mode="json"),
            )
            + "\n"
        )
        return EXIT_NUMERICAL

    header: Dict[str, Any] = {"command": config.command.value}
    header.update(settings.solver_config_dict())
    dumped = params.model_dump(mode="json")
    header.update({f"param_{k}": v for k, v in dumped.items() if v is not None})
    header.update(notes)

    with _open_output(config.output, stdout) as stream:
        if config.format == OutputFormat.JSON:
            write_json(stream, config.command.value, rows, row_type, header)
        else:
            write_csv(stream, rows, row_type, header)

    # contour rows carry expected no-solution markers; other error rows are failed cells
    failed = _failed_rows(rows) if row_type in CELL_ROW_TYPES else []
    if failed:
        first = failed[0].model_dump(mode="json")
        stderr.write(
            error_line(
                "PartialFailure",
                f"{len(failed)} of {len(rows)} cells failed",
                command=config.command.value,
                cell=first,
            )
            + "\n"
        )
        return EXIT_NUMERICAL
    return EXIT_OK


def _validation_detail(exc: ValidationError) -> str:
    return "; ".join(f"{'.'.join(str(p) for p in e['loc'])}: {e['msg']}" for e in exc.errors())


def main(argv: Optional[Sequence[str]] = None) -> int:
    if settings_error is not None:
        detail = _validation_detail(settings_error)
        sys.stderr.write(error_line("usage", detail, source="environment") + "\n")
        return EXIT_USAGE

    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except UsageError as exc:
        sys.stderr.write(error_line("usage", str(exc)) + "\n")
        return EXIT_USAGE

    setup_logging(level=args.log_level or settings.log_level, log_file=settings.log_file)

    try:
        config = config_from_args(args)
    except ValidationError as exc:
        detail = _validation_detail(exc)
        sys.stderr.write(error_line("usage", detail, command=args.command) + "\n")
        return EXIT_USAGE

    return run(config, workers=args.workers)


if __name__ == "__main__":
    sys.exit(main())
