"""
Модели данных решателя: задача, настройки рекурсии, решение и отчёты.
"""
from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from expressions.nodes import Expr, free_parameters
from numerics.green import Weight
from numerics.grid import GridFn
from utils.errors import KernelError, UnboundParameterError

DEFAULT_RESIDUAL_NODES = 101


def equispaced_nodes(count: int = DEFAULT_RESIDUAL_NODES) -> tuple[float, ...]:
    """Равномерные узлы невязки на [0, 1] вместе с концами."""
    if count < 1:
        raise ValueError(f"Число узлов невязки должно быть положительным, получено {count}")
    if count == 1:
        return (0.5,)
    return tuple(float(v) for v in np.linspace(0.0, 1.0, count))


@dataclass(frozen=True)
class Problem:
    """Краевая задача для пары сингулярных уравнений (p_i y_i')' = p_i f_i."""

    weight1: Weight
    weight2: Weight
    a1: float
    b1: float
    c1: float
    a2: float
    b2: float
    c2: float
    f1: Expr
    f2: Expr
    params: dict = field(default_factory=dict, hash=False)
    exact1: Optional[Expr] = None
    exact2: Optional[Expr] = None
    name: str = ""
    description: str = ""

    def validate(self) -> "Problem":
        """
        Проверяет инварианты задачи.

        Returns:
            Problem: Та же задача (для цепочек вызовов)
        """
        if self.a1 == 0 or self.a2 == 0:
            raise KernelError("Коэффициенты a1 и a2 при y(1) должны быть ненулевыми")
        used = set()
        for expression in (self.f1, self.f2, self.exact1, self.exact2):
            if expression is not None:
                used |= free_parameters(expression)
        missing = used - set(self.params)
        if missing:
            raise UnboundParameterError(list(missing))
        return self

    @property
    def initial1(self) -> float:
        return self.c1 / self.a1

    @property
    def initial2(self) -> float:
        return self.c2 / self.a2

    @property
    def has_exact(self) -> bool:
        return self.exact1 is not None and self.exact2 is not None

    def component(self, index: int) -> tuple[Weight, float, float, float, Expr]:
        """(вес, a, b, c, f) компоненты 1 или 2."""
        if index == 1:
            return self.weight1, self.a1, self.b1, self.c1, self.f1
        return self.weight2, self.a2, self.b2, self.c2, self.f2


@dataclass(frozen=True)
class HamConfig:
    """Настройки рекурсии: порядок, параметры управления сходимостью, сетка."""

    order: int
    c10: float
    c20: float
    degree: int = 64
    residual_nodes: tuple[float, ...] = field(default_factory=equispaced_nodes)

    def __post_init__(self):
        if self.order < 1:
            raise ValueError(f"Порядок должен быть не меньше 1, получено {self.order}")
        if self.c10 == 0 or self.c20 == 0:
            raise ValueError("Параметры c10 и c20 должны быть ненулевыми")
        if self.degree < 16:
            raise ValueError(f"Степень сетки должна быть не меньше 16, получено {self.degree}")
        if not self.residual_nodes or any(x < 0 or x > 1 for x in self.residual_nodes):
            raise ValueError("Узлы невязки должны лежать в [0, 1]")


@dataclass
class ResidualTable:
    """Поточечные дифференциальные невязки."""

    xs: np.ndarray
    res1: np.ndarray
    res2: np.ndarray


@dataclass
class Solution:
    """Члены ряда, частичные суммы и невязки."""

    problem: Problem
    config: HamConfig
    terms1: list[GridFn]
    terms2: list[GridFn]
    partial1: list[GridFn] = field(default_factory=list)
    partial2: list[GridFn] = field(default_factory=list)
    E1: Optional[float] = None
    E2: Optional[float] = None
    residuals: Optional[ResidualTable] = None

    def __post_init__(self):
        if not self.partial1:
            self.partial1 = partial_sums(self.terms1)
        if not self.partial2:
            self.partial2 = partial_sums(self.terms2)

    @property
    def order(self) -> int:
        return len(self.terms1) - 1

    @property
    def phi1(self) -> GridFn:
        return self.partial1[-1]

    @property
    def phi2(self) -> GridFn:
        return self.partial2[-1]


def partial_sums(terms: list[GridFn]) -> list[GridFn]:
    """φ_m = Σ_{k≤m} y_k, накопленные слева направо."""
    sums = [terms[0]]
    for term in terms[1:]:
        sums.append(sums[-1] + term)
    return sums


@dataclass
class TuneReport:
    """Результат подбора (c10, c20): минимум E_1n + E_2n или точка частной стационарности."""

    c10_opt: float
    c20_opt: float
    E_opt: float
    E1_opt: float
    E2_opt: float
    history: list[tuple[tuple[float, float], float]]
    converged: bool
    evaluations: int
    order: int
    gradient: tuple[float, float] = (float("nan"), float("nan"))
    partial_stationarity: tuple[float, float] = (float("nan"), float("nan"))
    best_start: Optional[tuple[float, float]] = None
    criterion: str = "joint"
    landscape: Optional["Landscape"] = None


@dataclass
class Landscape:
    """Значения E на прямоугольной сетке (c10 по строкам, c20 по столбцам)."""

    c10: np.ndarray
    c20: np.ndarray
    values: np.ndarray

    def argmin(self) -> tuple[float, float]:
        i, j = np.unravel_index(int(np.argmin(self.values)), self.values.shape)
        return float(self.c10[i]), float(self.c20[j])


@dataclass
class BoundReport:
    """Диагностика сходимости: M, L, δ и оценки ошибки усечения."""

    M: float
    L: float
    l1: float
    l2: float
    delta: float
    delta_per_component: tuple[float, float]
    c0_abs: float
    max_source: float
    bound_per_order: list[float]
    cauchy_estimate: list[float]
    admissible: bool
    c_range_admissible: bool
    c_range_ratio: tuple[float, float]


@dataclass
class TableRow:
    """Строка таблицы сравнения в точке x."""

    x: float
    phi1: float
    phi2: float
    res1: float
    res2: float
    psi1: Optional[float] = None
    psi2: Optional[float] = None
    adm_res1: Optional[float] = None
    adm_res2: Optional[float] = None
    exact1: Optional[float] = None
    exact2: Optional[float] = None
    reference: dict = field(default_factory=dict)
    provenance: str = ""
    checks: dict = field(default_factory=dict)

    @property
    def err1(self) -> Optional[float]:
        return None if self.exact1 is None else abs(self.phi1 - self.exact1)

    @property
    def err2(self) -> Optional[float]:
        return None if self.exact2 is None else abs(self.phi2 - self.exact2)

    @property
    def passed(self) -> bool:
        return all(self.checks.values())
