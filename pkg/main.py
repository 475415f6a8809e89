"""
Главная точка входа решателя систем Лейна–Эмдена–Фаулера.
"""
import argparse
import sys
from typing import Optional, Sequence

from config import Config
from utils.errors import LaneFowlerError
from utils.logger import logger, set_verbosity

EXIT_OK = 0
EXIT_FAILURE = 1
EXIT_USAGE = 2

# значения вида -1.5:-0.5 argparse принимает за флаги
INTERVAL_OPTIONS = ("--search", "--c10-range", "--c20-range")


def join_interval_values(argv: Sequence[str]) -> list[str]:
    """Склеивает `--search -1:-0.5,...` в `--search=-1:-0.5,...`."""
    joined: list[str] = []
    tokens = iter(argv)
    for token in tokens:
        if token in INTERVAL_OPTIONS:
            value = next(tokens, None)
            if value is None:
                joined.append(token)
                break
            joined.append(f"{token}={value}")
            continue
        joined.append(token)
    return joined


def build_parser() -> argparse.ArgumentParser:
    """Собирает парсер со всеми подкомандами."""
    parser = argparse.ArgumentParser(
        prog="lanefowler",
        description="Метод гомотопического анализа с функцией Грина для сингулярных систем Лейна–Эмдена–Фаулера.",
    )
    parser.add_argument("-v", "--verbose", action="count", default=0, help="подробный журнал (stderr)")
    parser.add_argument("-q", "--quiet", action="count", default=0, help="только ошибки в журнале")
    subparsers = parser.add_subparsers(dest="command", metavar="КОМАНДА")
    subparsers.required = True

    # Регистрация подкоманд
    from handlers.solve import register_solve_handlers
    from handlers.tune import register_tune_handlers
    from handlers.bench import register_bench_handlers
    from handlers.landscape import register_landscape_handlers
    from handlers.examples import register_examples_handlers

    register_solve_handlers(subparsers)
    register_tune_handlers(subparsers)
    register_bench_handlers(subparsers)
    register_landscape_handlers(subparsers)
    register_examples_handlers(subparsers)
    return parser


def run(argv: Optional[Sequence[str]] = None) -> int:
    """
    Разбирает аргументы и выполняет подкоманду.

    Args:
        argv: Аргументы без имени программы (None - sys.argv[1:])

    Returns:
        int: 0 - успех, 1 - ошибка решателя или несовпадение таблиц, 2 - ошибка использования
    """
    parser = build_parser()
    try:
        args = parser.parse_args(join_interval_values(sys.argv[1:] if argv is None else argv))
    except SystemExit as e:
        return EXIT_OK if e.code in (0, None) else EXIT_USAGE

    set_verbosity(args.verbose - args.quiet)
    try:
        Config.validate()
    except ValueError as e:
        logger.error(f"Ошибка конфигурации: {e}")
        return EXIT_USAGE

    try:
        return args.handler(args)
    except ValueError as e:
        logger.error(f"Некорректные аргументы: {e}")
        return EXIT_USAGE
    except LaneFowlerError as e:
        logger.error(f"Ошибка решателя: {e}")
        return EXIT_FAILURE
    except OSError as e:
        logger.error(f"Ошибка ввода-вывода: {e}")
        return EXIT_FAILURE


def main():
    """Основная функция запуска."""
    sys.exit(run())


if __name__ == "__main__":
    main()
