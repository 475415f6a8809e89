"""
Подкоманда landscape: карта E1 + E2 на сетке (c10, c20).
"""
import argparse

from handlers.common import add_output_options, add_problem_options, add_solver_options, emit, resolve_problem, search_settings, solver_settings
from services.tuning_service import landscape
from utils.validators import parse_interval, validate_resolution


def cmd_landscape(args: argparse.Namespace) -> int:
    """Обработчик landscape."""
    source = resolve_problem(args)
    order, degree, nodes = solver_settings(args, source)
    search, _ = search_settings(args, source)
    c10_range = parse_interval(args.c10_range) if args.c10_range else search[0]
    c20_range = parse_interval(args.c20_range) if args.c20_range else search[1]

    surface = landscape(source.problem, order, c10_range, c20_range,
                        resolution=validate_resolution(args.resolution), N=degree, nodes=nodes)
    emit(surface, args)
    return 0


def register_landscape_handlers(subparsers) -> None:
    """Регистрирует подкоманду landscape."""
    parser = subparsers.add_parser("landscape", help="выгрузить карту E(c10, c20)",
                                   description="Вычисляет E1 + E2 на прямоугольной сетке; расходящиеся точки - inf.")
    add_problem_options(parser)
    add_solver_options(parser)
    parser.add_argument("--search", default=None, metavar="A:B,C:D", help="прямоугольник (c10, c20)")
    parser.add_argument("--budget", type=int, default=None, help=argparse.SUPPRESS)
    parser.add_argument("--c10-range", default=None, metavar="A:B", help="диапазон c10 (по умолчанию из --search)")
    parser.add_argument("--c20-range", default=None, metavar="C:D", help="диапазон c20 (по умолчанию из --search)")
    parser.add_argument("--resolution", default="21", metavar="R[xC]", help="число точек по осям, не больше 201")
    add_output_options(parser, default_format="csv")
    parser.set_defaults(handler=cmd_landscape)
