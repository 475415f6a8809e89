"""
Модуль чтения и записи файлов задач (INI-подобный формат с секциями).

Пример файла:

    [problem]
    name = 4:exact
    description = Экспоненциальная система

    [weights]
    k1 = 5
    k2 = 3
    # необязательно: g1 = 1 + x   (вес p1 = x^k1 * g1)
    # или целиком:   p1 = x^5*(1 + x)

    [boundary]
    a1 = 1
    b1 = 0
    c1 = -2*ln(2)
    a2 = 1
    b2 = 0
    c2 = 2*ln(2)

    [rhs]
    f1 = -8*exp(y1) - 16*exp(-y2/2)
    f2 = 8*exp(-y2) + 8*exp(y1/2)

    [params]
    # имя = значение

    [exact]
    y1 = -2*ln(1 + x^2)
    y2 = 2*ln(1 + x^2)

    [solver]
    order = 5
    degree = 64
    residual_nodes = 101

    [tuner]
    search = -1.5:-0.25,-1.5:-0.25
    budget = 2000

Числовые поля секций [boundary] и [params] - постоянные выражения.
"""
import configparser
from dataclasses import dataclass, field
from pathlib import Path
from typing import Optional, Union

from expressions.evaluator import eval_scalar
from expressions.nodes import Binary, Expr, Num, Var, format_number, to_source, variables
from expressions.parser import parse
from numerics.green import Weight
from problems.models import Problem
from utils.errors import ExprDomainError, ExprSyntaxError, LaneFowlerError, ProblemFileError
from utils.validators import parse_search_box

SECTIONS = ("problem", "weights", "boundary", "rhs", "params", "exact", "solver", "tuner")


@dataclass
class ProblemDocument:
    """Задача вместе с настройками решателя и подбора из файла."""

    problem: Problem
    solver: dict = field(default_factory=dict)
    tuner: dict = field(default_factory=dict)


def _expression(text: str, location: str) -> Expr:
    try:
        return parse(text)
    except ExprSyntaxError as e:
        raise ProblemFileError(str(e), location) from e


def _constant(text: str, location: str, params: Optional[dict] = None) -> float:
    node = _expression(text, location)
    if variables(node):
        raise ProblemFileError(f"Ожидается постоянное выражение, получено '{text}'", location)
    try:
        return eval_scalar(node, params=params or {})
    except (ExprDomainError, LaneFowlerError) as e:
        raise ProblemFileError(str(e), location) from e


def _split_weight(node: Expr, location: str) -> Weight:
    """Представляет выражение p(x) в виде x^k·g(x)."""
    def power_of_x(item: Expr) -> Optional[float]:
        if isinstance(item, Var) and item.name == "x":
            return 1.0
        if isinstance(item, Binary) and item.op == "^" and item.left == Var("x") and isinstance(item.right, Num):
            return item.right.value
        return None

    k = power_of_x(node)
    if k is not None:
        return Weight(k)
    if isinstance(node, Binary) and node.op == "*":
        for factor, rest in ((node.left, node.right), (node.right, node.left)):
            k = power_of_x(factor)
            if k is not None:
                return Weight(k, rest)
    raise ProblemFileError(f"Вес '{to_source(node)}' не приводится к виду x^k*g(x)", location)


def _read_weight(section: configparser.SectionProxy, index: int) -> Weight:
    location = f"[weights] p{index}"
    if f"p{index}" in section:
        if f"k{index}" in section or f"g{index}" in section:
            raise ProblemFileError(f"Задайте либо p{index}, либо k{index}/g{index}", location)
        return _split_weight(_expression(section[f"p{index}"], location), location)
    if f"k{index}" not in section:
        raise ProblemFileError(f"Не задан показатель k{index}", "[weights]")
    k = _constant(section[f"k{index}"], f"[weights] k{index}")
    g_text = section.get(f"g{index}")
    g = _expression(g_text, f"[weights] g{index}") if g_text else None
    try:
        return Weight(k, g)
    except LaneFowlerError as e:
        raise ProblemFileError(str(e), f"[weights] k{index}") from e


def _required(parser: configparser.ConfigParser, section: str, key: str) -> str:
    if not parser.has_option(section, key):
        raise ProblemFileError(f"Не задано поле {key}", f"[{section}]")
    return parser.get(section, key)


def read_problem_file(source: Union[str, Path]) -> ProblemDocument:
    """
    Читает файл задачи (путь или текст).

    Args:
        source: Путь к файлу либо сам текст документа

    Returns:
        ProblemDocument: Задача и настройки
    """
    if isinstance(source, Path) or ("\n" not in source and "[" not in source):
        path = Path(source)
        try:
            text = path.read_text(encoding="utf-8")
        except OSError as e:
            raise ProblemFileError(f"Не удалось прочитать файл: {e}", str(path)) from e
    else:
        text = source

    parser = configparser.ConfigParser(interpolation=None, inline_comment_prefixes=("#", ";"))
    parser.optionxform = str
    try:
        parser.read_string(text)
    except configparser.Error as e:
        location = f"строка {e.lineno}" if getattr(e, "lineno", None) else None
        raise ProblemFileError(f"Некорректная структура файла: {e.message}", location) from e

    unknown = [name for name in parser.sections() if name not in SECTIONS]
    if unknown:
        raise ProblemFileError(f"Неизвестные секции: {', '.join(unknown)}")
    for section in ("weights", "boundary", "rhs"):
        if not parser.has_section(section):
            raise ProblemFileError(f"Отсутствует обязательная секция [{section}]")

    params: dict[str, float] = {}
    if parser.has_section("params"):
        for name, raw in parser.items("params"):
            params[name] = _constant(raw, f"[params] {name}")

    boundary = {
        key: _constant(_required(parser, "boundary", key), f"[boundary] {key}", params)
        for key in ("a1", "b1", "c1", "a2", "b2", "c2")
    }
    exact1 = exact2 = None
    if parser.has_section("exact"):
        exact = parser["exact"]
        exact1 = _expression(exact["y1"], "[exact] y1") if "y1" in exact else None
        exact2 = _expression(exact["y2"], "[exact] y2") if "y2" in exact else None

    problem = Problem(
        weight1=_read_weight(parser["weights"], 1),
        weight2=_read_weight(parser["weights"], 2),
        f1=_expression(_required(parser, "rhs", "f1"), "[rhs] f1"),
        f2=_expression(_required(parser, "rhs", "f2"), "[rhs] f2"),
        params=params, exact1=exact1, exact2=exact2,
        name=parser.get("problem", "name", fallback=""),
        description=parser.get("problem", "description", fallback=""),
        **boundary,
    )
    try:
        problem.validate()
    except LaneFowlerError as e:
        raise ProblemFileError(str(e)) from e

    solver: dict = {}
    if parser.has_section("solver"):
        for key in ("order", "degree", "residual_nodes"):
            if parser.has_option("solver", key):
                try:
                    solver[key] = parser.getint("solver", key)
                except ValueError as e:
                    raise ProblemFileError(f"Ожидается целое число: {e}", f"[solver] {key}") from e
    tuner: dict = {}
    if parser.has_section("tuner"):
        try:
            if parser.has_option("tuner", "search"):
                tuner["search"] = parse_search_box(parser.get("tuner", "search"))
            if parser.has_option("tuner", "budget"):
                tuner["budget"] = parser.getint("tuner", "budget")
        except ValueError as e:
            raise ProblemFileError(str(e), "[tuner]") from e
    return ProblemDocument(problem=problem, solver=solver, tuner=tuner)


def load_problem(source: Union[str, Path]) -> Problem:
    """
    Загружает задачу из файла или текста.

    Args:
        source: Путь к файлу либо текст документа

    Returns:
        Problem: Проверенная задача
    """
    return read_problem_file(source).problem


def emit_problem(problem: Problem, solver: Optional[dict] = None, tuner: Optional[dict] = None) -> str:
    """
    Печатает задачу в формате файла задач.

    Числа печатаются кратчайшим точным представлением, поэтому
    load_problem(emit_problem(p)) == p.

    Returns:
        str: Текст документа
    """
    lines = ["[problem]", f"name = {problem.name}", f"description = {problem.description}", "", "[weights]"]
    for index, weight in ((1, problem.weight1), (2, problem.weight2)):
        lines.append(f"k{index} = {format_number(weight.k)}")
        if weight.g is not None:
            lines.append(f"g{index} = {to_source(weight.g)}")
    lines += ["", "[boundary]"]
    for key in ("a1", "b1", "c1", "a2", "b2", "c2"):
        lines.append(f"{key} = {format_number(getattr(problem, key))}")
    lines += ["", "[rhs]", f"f1 = {to_source(problem.f1)}", f"f2 = {to_source(problem.f2)}", "", "[params]"]
    for name, value in sorted(problem.params.items()):
        lines.append(f"{name} = {format_number(value)}")
    if problem.exact1 is not None or problem.exact2 is not None:
        lines += ["", "[exact]"]
        if problem.exact1 is not None:
            lines.append(f"y1 = {to_source(problem.exact1)}")
        if problem.exact2 is not None:
            lines.append(f"y2 = {to_source(problem.exact2)}")
    if solver:
        lines += ["", "[solver]"] + [f"{key} = {value}" for key, value in solver.items()]
    if tuner:
        lines += ["", "[tuner]"]
        if "search" in tuner:
            (a, b), (c, d) = tuner["search"]
            lines.append(f"search = {format_number(a)}:{format_number(b)},{format_number(c)}:{format_number(d)}")
        if "budget" in tuner:
            lines.append(f"budget = {tuner['budget']}")
    return "\n".join(lines) + "\n"
