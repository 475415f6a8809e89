"""
Модуль функций Грина для сингулярных операторов (p y')' с условиями
y'(0) = 0, a·y(1) + b·y'(1) = 0.

Вес p(x) = x^k·g(x), g > 0 на [0, 1]. Ядро имеет вид
G(x, s) = -(Q(max(x, s)) + C), где Q(t) = ∫_t^1 dr/p(r), C = b/(a·p(1)).
"""
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Optional

import numpy as np
from numpy.polynomial import chebyshev as C
from scipy import integrate
from scipy.special import roots_jacobi

from expressions.evaluator import evaluate
from expressions.nodes import Expr
from expressions.parser import parse
from numerics.grid import GridFn, chebyshev_nodes, values_to_coeffs
from utils.errors import KernelError
from utils.logger import logger


@dataclass(frozen=True)
class Weight:
    """Вес p(x) = x^k·g(x); g = None означает g ≡ 1."""

    k: float
    g: Optional[Expr] = None

    def __post_init__(self):
        if self.k < 0:
            raise KernelError(f"Показатель веса должен быть неотрицательным, получено k={self.k}")

    @classmethod
    def power(cls, k: float) -> "Weight":
        return cls(float(k))

    @classmethod
    def general(cls, k: float, g_source: str) -> "Weight":
        return cls(float(k), parse(g_source))

    @property
    def is_power(self) -> bool:
        return self.g is None

    def g_values(self, x: np.ndarray) -> np.ndarray:
        """g(x) (массивом)."""
        x = np.asarray(x, dtype=float)
        if self.g is None:
            return np.ones_like(x)
        return np.broadcast_to(np.asarray(evaluate(self.g, x=x), dtype=float), x.shape)

    def __call__(self, x: np.ndarray) -> np.ndarray:
        x = np.asarray(x, dtype=float)
        return np.power(x, self.k) * self.g_values(x)

    def describe(self) -> str:
        if self.g is None:
            return f"x^{self.k:g}"
        return f"x^{self.k:g}*({self.g})"


@lru_cache(maxsize=64)
def _averaging_matrix(weight: Weight, N: int) -> np.ndarray:
    """
    Матрица A: (A w)_i = Φ(s_i)/p(s_i), Φ(s) = ∫_0^s p w.

    Используется представление Φ(s)/p(s) = (s/g(s))·∫_0^1 u^k g(su) w(su) du,
    интеграл по u считается квадратурой Гаусса–Якоби с весом u^k.
    """
    nodes = chebyshev_nodes(N)
    # Точность для многочленов степени N по u
    count = N // 2 + 2
    roots, weights = roots_jacobi(count, 0.0, weight.k)
    u_points = 0.5 * (roots + 1.0)
    u_weights = weights / 2.0 ** (weight.k + 1.0)

    # Матрица значения -> коэффициенты Чебышёва
    to_coeffs = values_to_coeffs(np.eye(N + 1))
    g_nodes = weight.g_values(nodes)

    matrix = np.zeros((N + 1, N + 1))
    for u, omega in zip(u_points, u_weights):
        points = nodes * u
        interpolation = C.chebvander(2.0 * points - 1.0, N) @ to_coeffs.T
        factor = omega * weight.g_values(points)
        matrix += factor[:, None] * interpolation
    matrix *= (nodes / g_nodes)[:, None]
    matrix.flags.writeable = False
    return matrix


@dataclass(frozen=True, eq=False)
class Kernel:
    """Функция Грина одной компоненты."""

    weight: Weight
    a: float
    b: float
    degree: int
    q_profile: GridFn = field(repr=False)
    C: float = 0.0

    def Q(self, t: np.ndarray) -> np.ndarray:
        """Q(t) = ∫_t^1 dr/p(r) (бесконечность в t=0 при k ≥ 1)."""
        return _q_values(self.weight, np.asarray(t, dtype=float))

    def green(self, x: float, s: float) -> float:
        """Значение G(x, s)."""
        return (-(self.Q(np.array(max(x, s))) + self.C)).item()

    def weighted_profile(self) -> GridFn:
        """p(s)·(Q(s) + C) на сетке; в s=0 берётся предел."""
        nodes = chebyshev_nodes(self.degree)
        return GridFn(self.weight(nodes) * self.C + self.q_profile.values)

    def apply(self, w: GridFn) -> GridFn:
        """I(x) = ∫_0^1 G(x, s) p(s) w(s) ds."""
        return apply(self, w)


def _q_values(weight: Weight, t: np.ndarray) -> np.ndarray:
    """Q(t): замкнутая форма для p = t^k, адаптивная квадратура иначе."""
    t = np.atleast_1d(np.asarray(t, dtype=float))
    result = np.empty_like(t)
    with np.errstate(divide="ignore"):
        if weight.is_power:
            k = weight.k
            if k == 1.0:
                result = -np.log(t)
            else:
                result = (1.0 - np.power(t, 1.0 - k)) / (1.0 - k)
        else:
            for i, point in enumerate(t):
                if point == 0.0 and weight.k >= 1.0:
                    result[i] = np.inf
                    continue
                value, _ = integrate.quad(lambda r: 1.0 / float(weight(np.array(r))), point, 1.0, limit=200)
                result[i] = value
    return result


def _weighted_q_nodes(weight: Weight, N: int) -> np.ndarray:
    """p(s)·Q(s) в узлах; предел в s=0."""
    nodes = chebyshev_nodes(N)
    values = np.zeros(N + 1)
    inner = nodes[1:]
    values[1:] = weight(inner) * _q_values(weight, inner)
    if weight.k == 0.0:
        values[0] = float(weight(np.array(0.0))) * float(_q_values(weight, np.array([0.0]))[0])
    elif not weight.is_power:
        # Односторонняя экстраполяция по четырём ближайшим узлам
        values[0] = float(np.polyval(np.polyfit(nodes[1:5], values[1:5], 3), 0.0))
    return values


def make_kernel(weight: Weight, a: float, b: float, N: int = 64) -> Kernel:
    """
    Строит функцию Грина для веса p, условия a·y(1) + b·y'(1) = 0.

    Args:
        weight: Вес p(x) = x^k·g(x)
        a: Коэффициент при y(1), ненулевой
        b: Коэффициент при y'(1)
        N: Степень сетки

    Returns:
        Kernel: Неизменяемое ядро
    """
    if a == 0:
        raise KernelError("Коэффициент a при y(1) не может быть нулевым")

    # Проверяем положительность веса на (0, 1]
    sample = np.linspace(0.0, 1.0, 201)[1:]
    p_sample = weight(sample)
    if not np.all(np.isfinite(p_sample)) or np.any(p_sample <= 0):
        raise KernelError(f"Вес {weight.describe()} должен быть положительным на (0, 1]")
    if not weight.is_power and float(weight.g_values(np.array(0.0))) <= 0:
        raise KernelError(f"Множитель g веса {weight.describe()} должен быть положителен в нуле")

    p_one = float(weight(np.array(1.0)))
    robin = float(b) / (float(a) * p_one)
    profile = GridFn(_weighted_q_nodes(weight, N))
    logger.debug(f"Построено ядро для p={weight.describe()}, a={a}, b={b}, C={robin:.6g}")
    return Kernel(weight=weight, a=float(a), b=float(b), degree=N, q_profile=profile, C=robin)


def apply(kern: Kernel, w: GridFn) -> GridFn:
    """
    Применяет интегральный оператор: I(x) = ∫_0^1 G(x, s) p(s) w(s) ds.

    После интегрирования по частям I(x) = -(b/a)·R(1) - ∫_x^1 R(s) ds,
    где R = Φ/p, Φ(s) = ∫_0^s p w.

    Args:
        kern: Ядро
        w: Источник

    Returns:
        GridFn: Значения интеграла в узлах
    """
    if w.degree != kern.degree:
        w = w.resample(kern.degree)
    ratio = GridFn(_averaging_matrix(kern.weight, kern.degree) @ w.values)
    running = ratio.cumint()
    tail = running.values[-1] - running.values
    return GridFn(-(kern.b / kern.a) * ratio.values[-1] - tail)


def bound_constant(kern1: Kernel, kern2: Kernel) -> float:
    """M = max по компонентам max_x |∫ G_i(x, s) p_i(s) ds|."""
    return max(
        apply(kern, GridFn.const(1.0, kern.degree)).max_abs()
        for kern in (kern1, kern2)
    )
