"""
Общие опции и вспомогательные функции подкоманд.
"""
import argparse
import sys
from dataclasses import dataclass, field
from typing import Optional

from config import config
from problems.catalog import CatalogEntry, entry
from problems.fileformat import read_problem_file
from problems.models import Problem, equispaced_nodes
from services.bench_service import report
from utils.validators import parse_example_ref, parse_search_box, validate_degree, validate_order


@dataclass
class ProblemSource:
    """Задача из каталога или файла вместе с настройками по умолчанию."""

    problem: Problem
    entry: Optional[CatalogEntry] = None
    solver: dict = field(default_factory=dict)
    tuner: dict = field(default_factory=dict)

    @property
    def default_order(self) -> int:
        if "order" in self.solver:
            return self.solver["order"]
        if self.entry is not None:
            return self.entry.order
        return int(config.DEFAULT_ORDER)


def add_problem_options(parser: argparse.ArgumentParser, required: bool = True) -> None:
    """--example / --problem (ровно один источник задачи)."""
    group = parser.add_mutually_exclusive_group(required=required)
    group.add_argument("--example", metavar="N[:VARIANT]",
                       help="встроенный пример 1..7 с необязательным вариантом, например 2:v1")
    group.add_argument("--problem", metavar="FILE", help="файл задачи")


def add_solver_options(parser: argparse.ArgumentParser) -> None:
    """Порядок, степень сетки и число узлов невязки."""
    parser.add_argument("--order", type=int, default=None,
                        help="порядок приближения n (по умолчанию из примера или LANEFOWLER_ORDER)")
    parser.add_argument("--degree", type=int, default=None,
                        help=f"степень сетки Чебышёва N (по умолчанию {config.DEFAULT_DEGREE})")
    parser.add_argument("--nodes", type=int, default=None,
                        help=f"число равномерных узлов невязки E (по умолчанию {config.DEFAULT_NODES})")


def add_tuner_options(parser: argparse.ArgumentParser) -> None:
    """Прямоугольник поиска и бюджет подбора."""
    parser.add_argument("--search", default=None, metavar="A:B,C:D",
                        help=f"прямоугольник поиска (c10, c20), по умолчанию {config.DEFAULT_SEARCH}")
    parser.add_argument("--budget", type=int, default=None,
                        help=f"число вычислений целевой функции (по умолчанию {config.DEFAULT_BUDGET})")
    parser.add_argument("--criterion", choices=("joint", "stationary"), default=None,
                        help="joint - минимум E1 + E2, stationary - dE1/dc10 = dE2/dc20 = 0 от точки ADM "
                             f"(по умолчанию {config.TUNER_CRITERION})")


def add_output_options(parser: argparse.ArgumentParser, default_format: str = "table") -> None:
    """--output и --format."""
    parser.add_argument("--output", metavar="PATH", default=None, help="файл результата (иначе stdout)")
    parser.add_argument("--format", choices=("csv", "json", "table"), default=None,
                        help=f"формат вывода (по умолчанию {default_format}; csv при заданном --output)")
    parser.set_defaults(default_format=default_format)


def resolve_problem(args: argparse.Namespace) -> ProblemSource:
    """Загружает задачу из --example или --problem."""
    if getattr(args, "example", None):
        example, variant = parse_example_ref(args.example)
        item = entry(example, variant)
        return ProblemSource(problem=item.build(), entry=item)
    document = read_problem_file(args.problem)
    return ProblemSource(problem=document.problem, solver=document.solver, tuner=document.tuner)


def solver_settings(args: argparse.Namespace, source: ProblemSource) -> tuple[int, int, tuple[float, ...]]:
    """(порядок, степень сетки, узлы невязки) с учётом флагов, файла и конфигурации."""
    order = validate_order(args.order if args.order is not None else source.default_order)
    degree = validate_degree(args.degree or source.solver.get("degree") or int(config.DEFAULT_DEGREE))
    count = args.nodes or source.solver.get("residual_nodes") or int(config.DEFAULT_NODES)
    return order, degree, equispaced_nodes(count)


def search_settings(args: argparse.Namespace, source: ProblemSource):
    """(прямоугольник поиска, бюджет)."""
    if args.search:
        search = parse_search_box(args.search)
    else:
        search = source.tuner.get("search") or config.search_box()
    budget = args.budget or source.tuner.get("budget") or int(config.DEFAULT_BUDGET)
    return search, budget


def output_format(args: argparse.Namespace) -> str:
    if args.format:
        return args.format
    return "csv" if args.output and args.default_format == "table" else args.default_format


def emit(payload, args: argparse.Namespace, **kwargs) -> None:
    """Печатает результат в stdout или записывает в --output."""
    text = report(payload, output_format(args), args.output, **kwargs)
    if args.output is None:
        sys.stdout.write(text)
