"""
Подкоманды examples и emit: список встроенных задач и их выгрузка в файл.
"""
import argparse
import sys

from handlers.common import ProblemSource, resolve_problem
from problems.catalog import list_examples
from problems.fileformat import emit_problem
from utils.formatters import format_table
from utils.logger import logger


def cmd_examples(args: argparse.Namespace) -> int:
    """Печатает каталог."""
    rows = []
    for item in list_examples():
        printed = "-" if item.printed_c is None else f"({item.printed_c[0]:g}, {item.printed_c[1]:g})"
        rows.append([item.ref, str(item.order), printed, "да" if item.reference else "нет", item.title])
    sys.stdout.write(format_table(["пример", "порядок", "c10, c20", "таблица", "описание"], rows) + "\n")
    return 0


def cmd_emit(args: argparse.Namespace) -> int:
    """Записывает задачу в формате файла задач."""
    source: ProblemSource = resolve_problem(args)
    solver = {"order": source.default_order}
    text = emit_problem(source.problem, solver=solver)
    if args.output:
        with open(args.output, "w", encoding="utf-8") as stream:
            stream.write(text)
        logger.info(f"Задача записана в {args.output}")
    else:
        sys.stdout.write(text)
    return 0


def register_examples_handlers(subparsers) -> None:
    """Регистрирует подкоманды examples и emit."""
    parser = subparsers.add_parser("examples", help="список встроенных примеров",
                                   description="Печатает встроенные примеры, их порядки и опубликованные c.")
    parser.set_defaults(handler=cmd_examples)

    parser = subparsers.add_parser("emit", help="выгрузить встроенный пример как файл задачи",
                                   description="Печатает задачу в формате файла задач.")
    group = parser.add_mutually_exclusive_group(required=True)
    group.add_argument("--example", metavar="N[:VARIANT]", help="встроенный пример")
    group.add_argument("--problem", metavar="FILE", help="файл задачи (нормализовать)")
    parser.add_argument("--output", metavar="PATH", default=None, help="файл результата (иначе stdout)")
    parser.set_defaults(handler=cmd_emit)
