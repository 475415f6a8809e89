"""
Модуль усечённых степенных рядов по параметру вложения q.

Коэффициенты ряда - сеточные функции; арифметика ведётся поузлово.
Коэффициент k ряда f(x, Y1(q), Y2(q)) есть H_k рекурсии гомотопии.
"""
from dataclasses import dataclass
from typing import Mapping, Optional, Sequence

import numpy as np

from expressions.evaluator import as_integer, constant_exponent, integer_power
from expressions.nodes import Binary, Call, Expr, Neg, Num, Param, Var, free_parameters
from numerics.grid import GridFn
from utils.errors import ExprDomainError, SeriesDegeneracyError, UnboundParameterError

DEGENERACY_THRESHOLD = 1e-12


@dataclass(frozen=True, eq=False)
class QSeries:
    """Ряд Σ_{j≤m} c_j q^j с коэффициентами на общей сетке."""

    terms: np.ndarray

    def __post_init__(self):
        terms = np.array(self.terms, dtype=float, copy=True)
        if terms.ndim != 2:
            raise ValueError("Коэффициенты ряда должны образовывать матрицу (m+1) x (N+1)")
        terms.flags.writeable = False
        object.__setattr__(self, "terms", terms)

    @classmethod
    def from_gridfns(cls, coeffs: Sequence[GridFn], order: Optional[int] = None) -> "QSeries":
        """Ряд из списка сеточных функций; недостающие коэффициенты нулевые."""
        if not coeffs:
            raise ValueError("Ряд должен содержать хотя бы один коэффициент")
        degree = coeffs[0].degree
        if any(item.degree != degree for item in coeffs):
            raise ValueError("Все коэффициенты ряда должны иметь одну степень сетки")
        order = len(coeffs) - 1 if order is None else order
        terms = np.zeros((order + 1, degree + 1))
        for j, item in enumerate(coeffs[:order + 1]):
            terms[j] = item.values
        return cls(terms)

    @property
    def order(self) -> int:
        return self.terms.shape[0] - 1

    @property
    def degree(self) -> int:
        return self.terms.shape[1] - 1

    @property
    def coeffs(self) -> list[GridFn]:
        return [GridFn(row) for row in self.terms]

    def truncate(self, order: int) -> "QSeries":
        if order > self.order:
            raise ValueError(f"Ряд порядка {self.order} нельзя продолжить до {order}")
        return QSeries(self.terms[:order + 1])

    def at(self, q: float) -> np.ndarray:
        """Значения Σ c_j q^j в узлах."""
        powers = q ** np.arange(self.order + 1)
        return powers @ self.terms


# --- арифметика струй над массивами (m+1, n) ---

def _constant(value: float, order: int, width: int) -> np.ndarray:
    result = np.zeros((order + 1, width))
    result[0] = value
    return result


def _product(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    result = np.empty_like(a)
    result[0] = a[0] * b[0]
    for k in range(1, a.shape[0]):
        result[k] = np.sum(a[:k + 1] * b[k::-1], axis=0)
    return result


def _leading(u: np.ndarray, node: Expr, what: str) -> None:
    if np.any(np.abs(u[0]) < DEGENERACY_THRESHOLD):
        raise SeriesDegeneracyError(f"Вырожденный старший коэффициент ({what})", str(node))


def _quotient(a: np.ndarray, b: np.ndarray, node: Expr) -> np.ndarray:
    _leading(b, node, "деление")
    result = np.empty_like(a)
    result[0] = a[0] / b[0]
    for k in range(1, a.shape[0]):
        result[k] = (a[k] - np.sum(b[1:k + 1] * result[k - 1::-1], axis=0)) / b[0]
    return result


def _exp(u: np.ndarray) -> np.ndarray:
    result = np.empty_like(u)
    result[0] = np.exp(u[0])
    for k in range(1, u.shape[0]):
        j = np.arange(1, k + 1)[:, None]
        result[k] = np.sum(j * u[1:k + 1] * result[k - 1::-1], axis=0) / k
    return result


def _log(u: np.ndarray, node: Expr) -> np.ndarray:
    if np.any(u[0] <= 0):
        raise ExprDomainError("Логарифм неположительного числа", str(node))
    _leading(u, node, "логарифм")
    result = np.empty_like(u)
    result[0] = np.log(u[0])
    for k in range(1, u.shape[0]):
        j = np.arange(1, k)[:, None]
        carry = np.sum(j * result[1:k] * u[k - 1:0:-1], axis=0) / k if k > 1 else 0.0
        result[k] = (u[k] - carry) / u[0]
    return result


def _real_power(u: np.ndarray, alpha: float, leading: np.ndarray) -> np.ndarray:
    """w = u^alpha по рекуррентности k·u_0·w_k = Σ (alpha·j - (k - j))·u_j·w_{k-j}."""
    result = np.empty_like(u)
    result[0] = leading
    for k in range(1, u.shape[0]):
        j = np.arange(1, k + 1)[:, None]
        result[k] = np.sum((alpha * j - (k - j)) * u[1:k + 1] * result[k - 1::-1], axis=0) / (k * u[0])
    return result


def eval_series(
    node: Expr,
    x_nodes: GridFn,
    Y1: QSeries,
    Y2: QSeries,
    m: int,
    params: Optional[Mapping[str, float]] = None,
) -> QSeries:
    """
    Усечение до порядка m ряда f(x, Y1(q), Y2(q)).

    Args:
        node: Выражение f
        x_nodes: Тождественная функция x на сетке
        Y1, Y2: Ряды компонент порядка не ниже m
        m: Порядок усечения
        params: Значения параметров

    Returns:
        QSeries: Ряд порядка m; коэффициент k равен H_k
    """
    params = params or {}
    missing = free_parameters(node) - set(params)
    if missing:
        raise UnboundParameterError(list(missing))
    width = x_nodes.degree + 1
    series = {
        "x": _constant(0.0, m, width),
        "y1": np.array(Y1.truncate(m).terms),
        "y2": np.array(Y2.truncate(m).terms),
    }
    series["x"][0] = x_nodes.values

    def one() -> np.ndarray:
        return _constant(1.0, m, width)

    def visit(item: Expr) -> np.ndarray:
        if isinstance(item, Num):
            return _constant(item.value, m, width)
        if isinstance(item, Var):
            return series[item.name]
        if isinstance(item, Param):
            return _constant(float(params[item.name]), m, width)
        if isinstance(item, Neg):
            return -visit(item.operand)
        if isinstance(item, Call):
            argument = visit(item.arg)
            if item.func == "exp":
                return _exp(argument)
            if item.func == "ln":
                return _log(argument, item)
            if np.any(argument[0] < DEGENERACY_THRESHOLD):
                raise SeriesDegeneracyError("Корень из неположительного старшего коэффициента", str(item))
            return _real_power(argument, 0.5, np.sqrt(argument[0]))
        if isinstance(item, Binary):
            if item.op == "^":
                return _power(item, visit(item.left))
            left, right = visit(item.left), visit(item.right)
            if item.op == "+":
                return left + right
            if item.op == "-":
                return left - right
            if item.op == "*":
                return _product(left, right)
            return _quotient(left, right, item)
        raise TypeError(f"Неизвестный узел выражения: {item!r}")

    def _power(item: Binary, base: np.ndarray) -> np.ndarray:
        exponent = constant_exponent(item.right, params)
        integer = as_integer(exponent)
        if integer is not None:
            if integer >= 0:
                return integer_power(base, integer, _product, one)
            _leading(base, item, "отрицательная степень")
            return _quotient(one(), integer_power(base, -integer, _product, one), item)
        if np.any(base[0] <= 0):
            raise ExprDomainError("Неположительное основание в дробной степени", str(item))
        _leading(base, item, "дробная степень")
        return _real_power(base, exponent, np.power(base[0], exponent))

    with np.errstate(over="ignore"):
        return QSeries(visit(node))
