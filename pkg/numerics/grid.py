"""
Модуль сеточных функций на отрезке [0, 1].

Функция хранится значениями в узлах Чебышёва–Гаусса–Лобатто,
отображённых на [0, 1] (узел 0 в x=0, узел N в x=1). Интегрирование,
дифференцирование и вычисление в произвольной точке идут через
коэффициенты Чебышёва (дискретное косинус-преобразование типа I).
"""
from dataclasses import dataclass
from functools import lru_cache
from typing import Callable, Union

import numpy as np
from numpy.polynomial import chebyshev as C
from numpy.polynomial import Chebyshev, Polynomial
from scipy.fft import dct

from utils.errors import GridError
from utils.logger import logger

MIN_DEGREE = 8
MONOMIAL_MAX_DEGREE = 16
MONOMIAL_WARN_DEGREE = 12


@lru_cache(maxsize=32)
def chebyshev_nodes(N: int) -> np.ndarray:
    """
    Узлы Чебышёва–Гаусса–Лобатто на [0, 1] по возрастанию.

    Формула через синус даёт точно симметричные узлы и точные 0, 1/2, 1.

    Args:
        N: Степень (число узлов N+1)

    Returns:
        np.ndarray: Массив узлов длины N+1 (только для чтения)
    """
    j = np.arange(N + 1)
    nodes = 0.5 * (1.0 + np.sin(np.pi * (2 * j - N) / (2 * N)))
    nodes.flags.writeable = False
    return nodes


def values_to_coeffs(values: np.ndarray) -> np.ndarray:
    """Коэффициенты Чебышёва по значениям в узлах (по оси 0 или последней)."""
    N = values.shape[-1] - 1
    # Стандартный порядок узлов cos(pi*i/N) убывает, наш возрастает
    coeffs = dct(values[..., ::-1], type=1, axis=-1) / N
    coeffs[..., 0] /= 2
    coeffs[..., -1] /= 2
    return coeffs


def coeffs_to_values(coeffs: np.ndarray) -> np.ndarray:
    """Значения в узлах по N+1 коэффициентам Чебышёва."""
    pretreated = np.array(coeffs, dtype=float, copy=True)
    pretreated[..., 1:-1] /= 2
    return dct(pretreated, type=1, axis=-1)[..., ::-1]


def _fold(coeffs: np.ndarray, N: int) -> np.ndarray:
    """Сворачивает хвост длиннее N+1 (T_{N+j} совпадает с T_{N-j} в узлах)."""
    if len(coeffs) <= N + 1:
        padded = np.zeros(N + 1)
        padded[:len(coeffs)] = coeffs
        return padded
    folded = np.array(coeffs[:N + 1], dtype=float)
    for j in range(1, len(coeffs) - N):
        folded[N - j] += coeffs[N + j]
    return folded


@dataclass(frozen=True, eq=False)
class GridFn:
    """Неизменяемая вещественная функция на [0, 1], заданная значениями в узлах."""

    values: np.ndarray

    def __post_init__(self):
        values = np.array(self.values, dtype=float, copy=True)
        if values.ndim != 1 or len(values) < MIN_DEGREE + 1:
            raise GridError(f"Сеточной функции нужно не меньше {MIN_DEGREE + 1} значений, получено {values.shape}")
        if not np.all(np.isfinite(values)):
            raise GridError("Сеточная функция содержит NaN или бесконечность")
        values.flags.writeable = False
        object.__setattr__(self, "values", values)

    # --- конструкторы ---

    @classmethod
    def const(cls, value: float, N: int) -> "GridFn":
        """Постоянная функция степени N."""
        _check_degree(N)
        return cls(np.full(N + 1, float(value)))

    @classmethod
    def identity(cls, N: int) -> "GridFn":
        """Функция x ↦ x."""
        _check_degree(N)
        return cls(chebyshev_nodes(N))

    @classmethod
    def sample(cls, func: Callable[[np.ndarray], np.ndarray], N: int) -> "GridFn":
        """Сеточная функция по значениям func в узлах."""
        _check_degree(N)
        nodes = chebyshev_nodes(N)
        return cls(np.broadcast_to(np.asarray(func(nodes), dtype=float), nodes.shape))

    @classmethod
    def from_coeffs(cls, coeffs: np.ndarray, N: int) -> "GridFn":
        """Сеточная функция по коэффициентам Чебышёва (хвост сворачивается)."""
        return cls(coeffs_to_values(_fold(np.asarray(coeffs, dtype=float), N)))

    # --- свойства ---

    @property
    def degree(self) -> int:
        return len(self.values) - 1

    @property
    def nodes(self) -> np.ndarray:
        return chebyshev_nodes(self.degree)

    def coeffs(self) -> np.ndarray:
        """Коэффициенты Чебышёва по переменной u = 2x - 1."""
        return values_to_coeffs(self.values)

    # --- арифметика ---

    def _aligned(self, other: "GridFn") -> tuple["GridFn", "GridFn"]:
        if self.degree == other.degree:
            return self, other
        N = max(self.degree, other.degree)
        return self.resample(N), other.resample(N)

    def __add__(self, other):
        if isinstance(other, GridFn):
            left, right = self._aligned(other)
            return GridFn(left.values + right.values)
        return GridFn(self.values + float(other))

    __radd__ = __add__

    def __sub__(self, other):
        if isinstance(other, GridFn):
            left, right = self._aligned(other)
            return GridFn(left.values - right.values)
        return GridFn(self.values - float(other))

    def __rsub__(self, other):
        return GridFn(float(other) - self.values)

    def __neg__(self):
        return GridFn(-self.values)

    def __mul__(self, other):
        if isinstance(other, GridFn):
            left, right = self._aligned(other)
            return GridFn(left.values * right.values)
        return GridFn(self.values * float(other))

    __rmul__ = __mul__

    # --- вычисление ---

    def __call__(self, x: Union[float, np.ndarray]) -> Union[float, np.ndarray]:
        return self.eval(x)

    def eval(self, x: Union[float, np.ndarray]) -> Union[float, np.ndarray]:
        """
        Значение в точке (или массиве точек) из [0, 1].

        В узлах возвращается сохранённое значение без округлений.

        Args:
            x: Точка или массив точек

        Returns:
            float или np.ndarray: Значения функции
        """
        points = np.asarray(x, dtype=float)
        if np.any(points < 0.0) or np.any(points > 1.0) or not np.all(np.isfinite(points)):
            raise GridError(f"Точка вне отрезка [0, 1]: {x}")
        result = C.chebval(2.0 * points - 1.0, self.coeffs())
        # Точное попадание в узел
        nodes = self.nodes
        idx = np.clip(np.searchsorted(nodes, points), 0, self.degree)
        hit = nodes[idx] == points
        result = np.where(hit, self.values[idx], result)
        if np.ndim(x) == 0:
            return float(result)
        return result

    def resample(self, N: int) -> "GridFn":
        """Перенос на сетку другой степени через интерполяцию."""
        _check_degree(N)
        if N == self.degree:
            return self
        return GridFn(C.chebval(2.0 * chebyshev_nodes(N) - 1.0, self.coeffs()))

    # --- анализ ---

    def cumint(self) -> "GridFn":
        """F(x) = ∫_0^x f(s) ds, точная для многочленов; F(0) = 0."""
        # dx = du / 2
        integral = C.chebint(self.coeffs(), lbnd=-1.0) * 0.5
        antiderivative = GridFn.from_coeffs(integral, self.degree)
        values = np.array(antiderivative.values)
        values[0] = 0.0
        return GridFn(values)

    def integral(self) -> float:
        """∫_0^1 f(s) ds."""
        return float(self.cumint().values[-1])

    def diff(self) -> "GridFn":
        """Спектральная производная."""
        return GridFn.from_coeffs(C.chebder(self.coeffs()) * 2.0, self.degree)

    def diff2(self) -> "GridFn":
        """Спектральная вторая производная."""
        return GridFn.from_coeffs(C.chebder(self.coeffs(), 2) * 4.0, self.degree)

    def max_abs(self) -> float:
        """
        Равномерная норма по плотному набору точек (не меньше 10N, с концами).

        Returns:
            float: max |f|
        """
        dense = np.linspace(0.0, 1.0, 10 * self.degree + 1)
        sampled = C.chebval(2.0 * dense - 1.0, self.coeffs())
        return float(max(np.max(np.abs(sampled)), np.max(np.abs(self.values))))

    def to_monomial(self, max_degree: int = MONOMIAL_MAX_DEGREE, tol: float = 1e-12) -> np.ndarray:
        """
        Коэффициенты в базисе 1, x, x², ... для сравнения с печатными многочленами.

        Args:
            max_degree: Наибольшая допустимая степень (не больше 16)
            tol: Порог отбрасывания хвоста коэффициентов Чебышёва (относительный)

        Returns:
            np.ndarray: Коэффициенты по возрастанию степени
        """
        if max_degree > MONOMIAL_MAX_DEGREE:
            raise GridError(f"Мономиальный вид поддерживается до степени {MONOMIAL_MAX_DEGREE}")
        coeffs = self.coeffs()
        scale = max(np.max(np.abs(coeffs)), 1e-300)
        significant = np.flatnonzero(np.abs(coeffs) > tol * scale)
        degree = int(significant[-1]) if len(significant) else 0
        if degree > max_degree:
            raise GridError(
                f"Функция не приводится к многочлену степени ≤ {max_degree} (фактическая степень {degree})"
            )
        if degree > MONOMIAL_WARN_DEGREE:
            logger.warning(f"Перевод в мономы степени {degree}: возможна потеря точности")
        series = Chebyshev(coeffs[:degree + 1], domain=[0.0, 1.0])
        return series.convert(kind=Polynomial, domain=[-1.0, 1.0], window=[-1.0, 1.0]).coef


def _check_degree(N: int) -> None:
    if N < MIN_DEGREE:
        raise GridError(f"Степень сетки должна быть не меньше {MIN_DEGREE}, получено {N}")


# Функциональные формы операций

def make_const(value: float, N: int) -> GridFn:
    """Постоянная функция."""
    return GridFn.const(value, N)


def add(f: GridFn, g: GridFn) -> GridFn:
    """Поточечная сумма."""
    return f + g


def scale(f: GridFn, alpha: float) -> GridFn:
    """Умножение на число."""
    return f * alpha


def mul(f: GridFn, g: GridFn) -> GridFn:
    """Поточечное произведение (без защиты от наложения частот)."""
    return f * g
