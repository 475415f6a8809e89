"""
Подкоманда tune: подбор (c10, c20) и оценки сходимости.
"""
import argparse
import sys
from dataclasses import asdict

from config import config
from handlers.common import add_problem_options, add_solver_options, add_tuner_options, resolve_problem, search_settings, solver_settings
from services.bench_service import tune_csv, tune_document
from services.tuning_service import convergence_report, optimize_c
from utils.formatters import format_table, format_value, to_json


def _describe(report, bounds) -> str:
    lines = [
        f"c10 = {report.c10_opt:.8f}",
        f"c20 = {report.c20_opt:.8f}",
        f"критерий: {report.criterion}",
        f"E   = {format_value(report.E_opt)} (E1 = {format_value(report.E1_opt)}, E2 = {format_value(report.E2_opt)})",
        f"сходимость симплекса: {'да' if report.converged else 'нет'}, вычислений: {report.evaluations}",
        f"grad E = ({format_value(report.gradient[0])}, {format_value(report.gradient[1])})",
        f"dE1/dc10 = {format_value(report.partial_stationarity[0])}, "
        f"dE2/dc20 = {format_value(report.partial_stationarity[1])}",
        "",
        f"M = {format_value(bounds.M)}, L = {format_value(bounds.L)}, delta = {format_value(bounds.delta)}",
        f"delta по компонентам = ({format_value(bounds.delta_per_component[0])}, "
        f"{format_value(bounds.delta_per_component[1])})",
        f"c0 в [-1, 0): {'да' if bounds.c_range_admissible else 'нет'}",
    ]
    if bounds.admissible:
        rows = [[str(m + 1), format_value(b), format_value(e)]
                for m, (b, e) in enumerate(zip(bounds.bound_per_order, bounds.cauchy_estimate))]
        lines += ["", format_table(["m", "оценка ошибки", "оценка Коши"], rows)]
    else:
        lines.append("delta >= 1: оценка ошибки усечения неприменима")
    return "\n".join(lines) + "\n"


def cmd_tune(args: argparse.Namespace) -> int:
    """Обработчик tune."""
    source = resolve_problem(args)
    order, degree, nodes = solver_settings(args, source)
    search, budget = search_settings(args, source)

    report = optimize_c(source.problem, order, N=degree, search=search, budget=budget,
                        grid=args.grid or int(config.DEFAULT_GRID), starts=args.starts, nodes=nodes,
                        criterion=args.criterion or config.TUNER_CRITERION)
    bounds = convergence_report(source.problem, report.c10_opt, report.c20_opt, order, N=degree)

    if args.format == "json":
        text = to_json({"tune": tune_document(report), "bounds": asdict(bounds)})
    elif args.format == "csv":
        text = tune_csv(report, {"delta": bounds.delta, "admissible": int(bounds.admissible)})
    else:
        text = _describe(report, bounds)
    if args.output:
        with open(args.output, "w", encoding="utf-8") as stream:
            stream.write(text)
    else:
        sys.stdout.write(text)
    return 0


def register_tune_handlers(subparsers) -> None:
    """Регистрирует подкоманду tune."""
    parser = subparsers.add_parser("tune", help="подобрать c10, c20 минимизацией E1 + E2",
                                   description="Многостартовый симплекс Нелдера-Мида по невязке E1 + E2 "
                                               "или частная стационарность от точки ADM.")
    add_problem_options(parser)
    add_solver_options(parser)
    add_tuner_options(parser)
    parser.add_argument("--grid", type=int, default=None,
                        help=f"размер стартовой сетки (по умолчанию {config.DEFAULT_GRID})")
    parser.add_argument("--starts", type=int, default=4, help="число стартов симплекса (по умолчанию 4)")
    parser.add_argument("--output", metavar="PATH", default=None, help="файл результата (иначе stdout)")
    parser.add_argument("--format", choices=("csv", "json", "table"), default="table", help="формат вывода")
    parser.set_defaults(handler=cmd_tune)
