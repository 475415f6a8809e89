"""
Подкоманда solve: решение HAM с невязками и сравнением с точным решением.
"""
import argparse
import sys

import numpy as np

from expressions.evaluator import evaluate
from handlers.common import add_output_options, add_problem_options, add_solver_options, emit, resolve_problem, solver_settings
from problems.catalog import TABLE_POINTS
from problems.models import HamConfig
from services.bench_service import build_rows
from services.ham_service import adm_solve, monomial_in_x, solve_with_residuals
from utils.logger import logger
from utils.validators import validate_control


def cmd_solve(args: argparse.Namespace) -> int:
    """Обработчик solve."""
    source = resolve_problem(args)
    problem = source.problem
    order, degree, nodes = solver_settings(args, source)

    default_c = source.entry.control if source.entry is not None else (-1.0, -1.0)
    c10 = validate_control(args.c1 if args.c1 is not None else default_c[0], "c10")
    c20 = validate_control(args.c2 if args.c2 is not None else default_c[1], "c20")

    solution = solve_with_residuals(problem, HamConfig(order=order, c10=c10, c20=c20,
                                                       degree=degree, residual_nodes=nodes), TABLE_POINTS)
    adm = adm_solve(problem, order, degree, nodes) if args.adm else None
    rows = build_rows(solution, args.points or TABLE_POINTS, adm)

    extra = {}
    if args.exact:
        if not problem.has_exact:
            logger.error(f"У задачи {problem.name or args.problem} нет точного решения")
            return 1
        dense = np.linspace(0.0, 1.0, 1001)
        errors = []
        for phi, exact in ((solution.phi1, problem.exact1), (solution.phi2, problem.exact2)):
            reference = np.broadcast_to(evaluate(exact, x=dense, params=problem.params), dense.shape)
            errors.append(float(np.max(np.abs(np.asarray(phi.eval(dense)) - reference))))
        extra["max_error"] = errors
        sys.stderr.write(f"max|phi1 - y1| = {errors[0]:.3e}, max|phi2 - y2| = {errors[1]:.3e}\n")

    if args.monomial:
        extra["monomial"] = {
            "phi1": monomial_in_x(solution, 1, args.monomial).tolist(),
            "phi2": monomial_in_x(solution, 2, args.monomial).tolist(),
        }

    sys.stderr.write(f"E1 = {solution.E1:.6e}, E2 = {solution.E2:.6e}\n")
    emit(rows, args, solution=solution, extra=extra)
    return 0


def register_solve_handlers(subparsers) -> None:
    """Регистрирует подкоманду solve."""
    parser = subparsers.add_parser("solve", help="построить приближение HAM заданного порядка",
                                   description="Строит частичные суммы HAM и печатает значения и невязки.")
    add_problem_options(parser)
    add_solver_options(parser)
    parser.add_argument("--c1", type=float, default=None, help="c10 (по умолчанию опубликованное значение или -1)")
    parser.add_argument("--c2", type=float, default=None, help="c20 (по умолчанию опубликованное значение или -1)")
    parser.add_argument("--adm", action="store_true", help="добавить столбцы ADM (c10 = c20 = -1)")
    parser.add_argument("--exact", action="store_true", help="вывести максимальную погрешность против точного решения")
    parser.add_argument("--monomial", type=int, default=None, metavar="DEG",
                        help="добавить в JSON коэффициенты φ по степеням x (степень не больше 16)")
    parser.add_argument("--points", type=float, nargs="+", default=None,
                        help="точки таблицы из (0, 1] (по умолчанию 0.1 0.3 0.5 0.7 0.9)")
    add_output_options(parser)
    parser.set_defaults(handler=cmd_solve)
