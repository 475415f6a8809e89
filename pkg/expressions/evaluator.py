"""
Модуль численного вычисления выражений (скаляры и массивы numpy).

Порядок операций совпадает с нулевым коэффициентом рядов из
expressions.series, поэтому H_0 = f(x, y_10, y_20) получается
побитово одинаковым обоими путями.
"""
from typing import Callable, Mapping, Optional, TypeVar, Union

import numpy as np

from expressions.nodes import Binary, Call, Expr, Neg, Num, Param, Var, free_parameters, variables
from utils.errors import ExprDomainError, UnboundParameterError

Value = Union[float, np.ndarray]
T = TypeVar("T")

# Целые показатели до этого модуля считаются умножениями
MAX_INTEGER_EXPONENT = 64


def integer_power(base: T, n: int, multiply: Callable[[T, T], T], one: Callable[[], T]) -> T:
    """
    Возведение в целую неотрицательную степень двоичным методом.

    Args:
        base: Основание
        n: Показатель, n ≥ 0
        multiply: Операция умножения
        one: Построитель единицы

    Returns:
        base^n
    """
    result = None
    current = base
    while n:
        if n & 1:
            result = current if result is None else multiply(result, current)
        n >>= 1
        if n:
            current = multiply(current, current)
    return one() if result is None else result


def constant_exponent(node: Expr, params: Mapping[str, float]) -> float:
    """Значение показателя степени; переменные в показателе не допускаются."""
    if variables(node):
        raise ExprDomainError("Показатель степени должен быть постоянным", str(node))
    return float(evaluate(node, params=params))


def as_integer(exponent: float) -> Optional[int]:
    """Целое значение показателя или None."""
    if float(exponent).is_integer() and abs(exponent) <= MAX_INTEGER_EXPONENT:
        return int(exponent)
    return None


def evaluate(
    node: Expr,
    x: Optional[Value] = None,
    y1: Optional[Value] = None,
    y2: Optional[Value] = None,
    params: Optional[Mapping[str, float]] = None,
) -> Value:
    """
    Вычисляет выражение поточечно (допускаются массивы одинаковой формы).

    Args:
        node: Дерево выражения
        x, y1, y2: Значения переменных
        params: Значения параметров

    Returns:
        float или np.ndarray: Значение выражения
    """
    params = params or {}
    missing = free_parameters(node) - set(params)
    if missing:
        raise UnboundParameterError(list(missing))
    bindings = {"x": x, "y1": y1, "y2": y2}

    def visit(item: Expr) -> Value:
        if isinstance(item, Num):
            return item.value
        if isinstance(item, Var):
            value = bindings[item.name]
            if value is None:
                raise UnboundParameterError([item.name])
            return np.asarray(value, dtype=float) if np.ndim(value) else float(value)
        if isinstance(item, Param):
            return float(params[item.name])
        if isinstance(item, Neg):
            return -visit(item.operand)
        if isinstance(item, Call):
            argument = visit(item.arg)
            if item.func == "exp":
                return np.exp(argument)
            if item.func == "ln":
                if np.any(np.asarray(argument) <= 0):
                    raise ExprDomainError("Логарифм неположительного числа", str(item))
                return np.log(argument)
            if np.any(np.asarray(argument) < 0):
                raise ExprDomainError("Корень из отрицательного числа", str(item))
            return np.sqrt(argument)
        if isinstance(item, Binary):
            if item.op == "^":
                return _power(item, visit(item.left), params)
            left, right = visit(item.left), visit(item.right)
            if item.op == "+":
                return left + right
            if item.op == "-":
                return left - right
            if item.op == "*":
                return left * right
            if np.any(np.asarray(right) == 0):
                raise ExprDomainError("Деление на ноль", str(item))
            return left / right
        raise TypeError(f"Неизвестный узел выражения: {item!r}")

    with np.errstate(over="ignore"):
        return visit(node)


def _power(item: Binary, base: Value, params: Mapping[str, float]) -> Value:
    exponent = constant_exponent(item.right, params)
    integer = as_integer(exponent)
    if integer is not None:
        if integer >= 0:
            return integer_power(base, integer, lambda a, b: a * b, lambda: np.ones_like(base) if np.ndim(base) else 1.0)
        if np.any(np.asarray(base) == 0):
            raise ExprDomainError("Ноль в отрицательной степени", str(item))
        return 1.0 / integer_power(base, -integer, lambda a, b: a * b, lambda: 1.0)
    if np.any(np.asarray(base) < 0):
        raise ExprDomainError("Отрицательное основание в дробной степени", str(item))
    if exponent < 0 and np.any(np.asarray(base) == 0):
        raise ExprDomainError("Ноль в отрицательной степени", str(item))
    return np.power(base, exponent)


def eval_scalar(
    node: Expr,
    x: float = 0.0,
    y1: float = 0.0,
    y2: float = 0.0,
    params: Optional[Mapping[str, float]] = None,
) -> float:
    """
    Вычисляет выражение в одной точке в арифметике IEEE double.

    Args:
        node: Дерево выражения
        x, y1, y2: Значения переменных
        params: Значения параметров

    Returns:
        float: Значение
    """
    return float(evaluate(node, x=float(x), y1=float(y1), y2=float(y2), params=params))
