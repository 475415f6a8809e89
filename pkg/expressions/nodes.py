"""
Узлы синтаксического дерева выражений и их печать.

Печать расставляет минимум скобок так, чтобы повторный разбор давал
структурно то же дерево.
"""
from dataclasses import dataclass

VARIABLES = ("x", "y1", "y2")
FUNCTIONS = ("exp", "ln", "sqrt")

# Приоритеты: + - < * / < унарный минус < ^
PRECEDENCE = {"+": 10, "-": 10, "*": 20, "/": 20, "neg": 25, "^": 30}
ATOM = 100


class Expr:
    """Базовый класс узла."""

    precedence = ATOM

    def __str__(self) -> str:
        return to_source(self)


@dataclass(frozen=True)
class Num(Expr):
    """Вещественный литерал."""

    value: float


@dataclass(frozen=True)
class Var(Expr):
    """Переменная x, y1 или y2."""

    name: str


@dataclass(frozen=True)
class Param(Expr):
    """Именованный параметр, связываемый при вычислении."""

    name: str


@dataclass(frozen=True)
class Neg(Expr):
    """Унарный минус."""

    operand: Expr
    precedence = PRECEDENCE["neg"]


@dataclass(frozen=True)
class Binary(Expr):
    """Бинарная операция + - * / ^."""

    op: str
    left: Expr
    right: Expr

    @property
    def precedence(self) -> int:
        return PRECEDENCE[self.op]


@dataclass(frozen=True)
class Call(Expr):
    """Вызов функции exp, ln или sqrt."""

    func: str
    arg: Expr


def format_number(value: float) -> str:
    """Печатает литерал так, чтобы он читался обратно без потерь."""
    if float(value).is_integer() and abs(value) < 1e16:
        return str(int(value))
    return repr(float(value))


def to_source(node: Expr) -> str:
    """Исходный текст выражения."""
    if isinstance(node, Num):
        return format_number(node.value)
    if isinstance(node, (Var, Param)):
        return node.name
    if isinstance(node, Call):
        return f"{node.func}({to_source(node.arg)})"
    if isinstance(node, Neg):
        inner = to_source(node.operand)
        if node.operand.precedence < node.precedence:
            inner = f"({inner})"
        return f"-{inner}"
    if isinstance(node, Binary):
        prec = node.precedence
        left = to_source(node.left)
        right = to_source(node.right)
        if node.op == "^":
            # Правоассоциативная операция
            if node.left.precedence <= prec:
                left = f"({left})"
            if node.right.precedence < prec:
                right = f"({right})"
            return f"{left}^{right}"
        if node.left.precedence < prec:
            left = f"({left})"
        if node.right.precedence <= prec:
            right = f"({right})"
        if node.op in "+-":
            return f"{left} {node.op} {right}"
        return f"{left}*{right}" if node.op == "*" else f"{left}/{right}"
    raise TypeError(f"Неизвестный узел выражения: {node!r}")


def walk(node: Expr):
    """Обход дерева в глубину (узел, затем потомки)."""
    yield node
    if isinstance(node, Neg):
        yield from walk(node.operand)
    elif isinstance(node, Binary):
        yield from walk(node.left)
        yield from walk(node.right)
    elif isinstance(node, Call):
        yield from walk(node.arg)


def free_parameters(node: Expr) -> set[str]:
    """Имена параметров, встречающихся в выражении."""
    return {item.name for item in walk(node) if isinstance(item, Param)}


def variables(node: Expr) -> set[str]:
    """Имена переменных x, y1, y2 в выражении."""
    return {item.name for item in walk(node) if isinstance(item, Var)}
