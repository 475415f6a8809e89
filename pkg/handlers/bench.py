"""
Подкоманда bench: воспроизведение опубликованных таблиц.
"""
import argparse

from handlers.common import add_output_options, emit
from problems.catalog import entry, list_examples
from services.bench_service import reproduce_all
from utils.logger import logger
from utils.validators import parse_example_ref, validate_degree


def cmd_bench(args: argparse.Namespace) -> int:
    """Обработчик bench; код 1, если хоть одна ячейка не совпала."""
    if args.all:
        refs = [(item.example, item.variant) for item in list_examples()]
    else:
        refs = []
        for text in args.example:
            example, variant = parse_example_ref(text)
            item = entry(example, variant)
            refs.append((item.example, item.variant))

    degree = validate_degree(args.degree) if args.degree else None
    results = reproduce_all(refs, tune=not args.no_tune, N=degree, budget=args.budget)
    emit(results, args)

    failed = [result.entry.ref for result in results if not result.passed]
    if failed:
        logger.error(f"Не совпали таблицы: {', '.join(failed)}")
        return 1
    logger.info(f"Все таблицы совпали ({len(results)})")
    return 0


def register_bench_handlers(subparsers) -> None:
    """Регистрирует подкоманду bench."""
    parser = subparsers.add_parser("bench", help="сравнить с опубликованными таблицами",
                                   description="Решает встроенные примеры при опубликованных c и сравнивает ячейки.")
    group = parser.add_mutually_exclusive_group(required=True)
    group.add_argument("--example", action="append", metavar="N[:VARIANT]",
                       help="пример для сравнения (можно повторять)")
    group.add_argument("--all", action="store_true", help="все встроенные примеры")
    parser.add_argument("--no-tune", action="store_true", help="не запускать подбор c")
    parser.add_argument("--degree", type=int, default=None, help="степень сетки Чебышёва N")
    parser.add_argument("--budget", type=int, default=None, help="бюджет подбора c")
    add_output_options(parser, default_format="table")
    parser.set_defaults(handler=cmd_bench)
