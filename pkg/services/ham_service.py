"""
Модуль рекурсии гомотопического анализа и её частного случая (метод Адомиана).

y_i0 = c_i/a_i,
y_i1 = -c_i0 · apply(G_i, H_i0),
y_ik = (1 + c_i0) · y_i(k-1) - c_i0 · apply(G_i, H_i(k-1)),  k ≥ 2,
где H_ik - коэффициенты ряда f_i(x, Y1(q), Y2(q)).
"""
from functools import lru_cache
from typing import Optional, Sequence

import numpy as np

from config import config
from expressions.evaluator import evaluate
from expressions.series import QSeries, eval_series
from numerics.green import Kernel, Weight, apply, make_kernel
from numerics.grid import GridFn
from problems.models import HamConfig, Problem, ResidualTable, Solution, equispaced_nodes
from utils.errors import (
    ConsistencyError,
    DivergenceError,
    ExprDomainError,
    GridError,
    StageDomainError,
)
from utils.logger import logger

ADM_TOLERANCE = 1e-13


@lru_cache(maxsize=128)
def kernel_for(weight: Weight, a: float, b: float, N: int) -> Kernel:
    """Ядро с кэшированием по (вес, a, b, N)."""
    return make_kernel(weight, a, b, N)


def problem_kernels(problem: Problem, N: int) -> tuple[Kernel, Kernel]:
    """Пара ядер задачи на сетке степени N."""
    return (
        kernel_for(problem.weight1, problem.a1, problem.b1, N),
        kernel_for(problem.weight2, problem.a2, problem.b2, N),
    )


def _stage_sources(problem: Problem, x: GridFn, terms1: list[GridFn], terms2: list[GridFn],
                   stage: int) -> tuple[GridFn, GridFn]:
    """H_1(k-1), H_2(k-1) по уже построенным членам 0..k-1."""
    order = stage - 1
    Y1 = QSeries.from_gridfns(terms1)
    Y2 = QSeries.from_gridfns(terms2)
    sources = []
    for index, f in ((1, problem.f1), (2, problem.f2)):
        try:
            series = eval_series(f, x, Y1, Y2, order, problem.params)
        except ExprDomainError as e:
            raise StageDomainError(str(e), stage=stage, component=index) from e
        try:
            sources.append(GridFn(series.terms[order]))
        except GridError as e:
            raise DivergenceError("Коэффициент H не конечен", stage=stage, component=index) from e
    return sources[0], sources[1]


def _guard(term: GridFn, stage: int, component: int, limit: float) -> GridFn:
    size = term.max_abs()
    if not np.isfinite(size) or size > limit:
        raise DivergenceError(f"Член ряда превысил порог {limit:g} (max|y|={size:.3g})",
                              stage=stage, component=component)
    return term


def ham_solve(problem: Problem, cfg: HamConfig) -> Solution:
    """
    Строит члены ряда y_ik, k = 0..n, и частичные суммы φ_in.

    Args:
        problem: Задача
        cfg: Порядок, c10, c20, степень сетки

    Returns:
        Solution: Решение без невязок
    """
    N = cfg.degree
    limit = float(config.DIVERGENCE_LIMIT)
    kern1, kern2 = problem_kernels(problem, N)
    x = GridFn.identity(N)
    terms1 = [GridFn.const(problem.initial1, N)]
    terms2 = [GridFn.const(problem.initial2, N)]

    for stage in range(1, cfg.order + 1):
        H1, H2 = _stage_sources(problem, x, terms1, terms2, stage)
        try:
            corr1 = apply(kern1, H1)
            corr2 = apply(kern2, H2)
        except GridError as e:
            raise DivergenceError("Интеграл от H не конечен", stage=stage) from e
        if stage == 1:
            next1 = corr1 * (-cfg.c10)
            next2 = corr2 * (-cfg.c20)
        else:
            next1 = terms1[-1] * (1.0 + cfg.c10) - corr1 * cfg.c10
            next2 = terms2[-1] * (1.0 + cfg.c20) - corr2 * cfg.c20
        terms1.append(_guard(next1, stage, 1, limit))
        terms2.append(_guard(next2, stage, 2, limit))
        logger.debug(f"Шаг {stage}: max|y1k|={terms1[-1].max_abs():.3e}, max|y2k|={terms2[-1].max_abs():.3e}")

    return Solution(problem=problem, config=cfg, terms1=terms1, terms2=terms2)


def adm_solve(problem: Problem, order: int, N: int = 64,
              residual_nodes: Optional[Sequence[float]] = None) -> Solution:
    """
    Метод Адомиана как рекурсия с c10 = c20 = -1.

    Дополнительно сверяет члены с прямой рекурсией y_ik = apply(G_i, H_i(k-1)).

    Args:
        problem: Задача
        order: Порядок n
        N: Степень сетки
        residual_nodes: Узлы невязки (по умолчанию 101 равномерный)

    Returns:
        Solution: Решение с c10 = c20 = -1
    """
    nodes = tuple(residual_nodes) if residual_nodes is not None else equispaced_nodes()
    cfg = HamConfig(order=order, c10=-1.0, c20=-1.0, degree=N, residual_nodes=nodes)
    solution = ham_solve(problem, cfg)

    kern1, kern2 = problem_kernels(problem, N)
    x = GridFn.identity(N)
    for stage in range(1, order + 1):
        H1, H2 = _stage_sources(problem, x, solution.terms1[:stage], solution.terms2[:stage], stage)
        for index, kern, H, terms in ((1, kern1, H1, solution.terms1), (2, kern2, H2, solution.terms2)):
            direct = apply(kern, H)
            gap = float(np.max(np.abs(direct.values - terms[stage].values)))
            if gap > ADM_TOLERANCE:
                raise ConsistencyError(
                    f"Метод Адомиана расходится с рекурсией при c=-1 на шаге {stage}, "
                    f"компонента {index}: {gap:.3e}"
                )
    return solution


def source_terms(problem: Problem, phi1: GridFn, phi2: GridFn) -> tuple[GridFn, GridFn]:
    """f_i(x, φ1(x), φ2(x)) в узлах сетки."""
    nodes = phi1.nodes
    values = []
    for f in (problem.f1, problem.f2):
        raw = evaluate(f, x=nodes, y1=phi1.values, y2=phi2.values, params=problem.params)
        values.append(GridFn(np.broadcast_to(np.asarray(raw, dtype=float), nodes.shape)))
    return values[0], values[1]


def integral_residual(problem: Problem, phi1: GridFn, phi2: GridFn,
                      nodes: Sequence[float]) -> tuple[float, float]:
    """
    E_i = (1/N) Σ_k (φ_i - c_i/a_i - apply(G_i, f_i(·, φ1, φ2)))²(x_k).

    Args:
        problem: Задача
        phi1, phi2: Приближения
        nodes: Точки x_k из [0, 1]

    Returns:
        tuple[float, float]: (E1, E2)
    """
    points = np.asarray(nodes, dtype=float)
    if points.size == 0:
        raise ValueError("Набор узлов невязки пуст")
    if phi2.degree != phi1.degree:
        phi2 = phi2.resample(phi1.degree)
    kern1, kern2 = problem_kernels(problem, phi1.degree)
    F1, F2 = source_terms(problem, phi1, phi2)
    defect1 = phi1 - problem.initial1 - apply(kern1, F1)
    defect2 = phi2 - problem.initial2 - apply(kern2, F2)
    E1 = float(np.mean(np.asarray(defect1.eval(points)) ** 2))
    E2 = float(np.mean(np.asarray(defect2.eval(points)) ** 2))
    return E1, E2


def _log_derivative(weight: Weight, xs: np.ndarray, N: int) -> np.ndarray:
    """p'/p = k/x + g'/g."""
    ratio = weight.k / xs
    if not weight.is_power:
        g = GridFn.sample(weight.g_values, N)
        ratio = ratio + np.asarray(g.diff().eval(xs)) / np.asarray(g.eval(xs))
    return ratio


def differential_residual(problem: Problem, phi1: GridFn, phi2: GridFn,
                          xs: Sequence[float]) -> ResidualTable:
    """
    Res_i(x) = |(1/p_i)(p_i φ_i')' - f_i(x, φ1, φ2)| в точках xs ⊂ (0, 1].

    Args:
        problem: Задача
        phi1, phi2: Приближения
        xs: Точки

    Returns:
        ResidualTable: Невязки по компонентам
    """
    points = np.asarray(xs, dtype=float)
    if np.any(points <= 0) or np.any(points > 1):
        raise GridError("Дифференциальная невязка определена только на (0, 1]")
    N = phi1.degree
    values1 = np.asarray(phi1.eval(points))
    values2 = np.asarray(phi2.eval(points))
    residuals = []
    for index, phi in ((1, phi1), (2, phi2)):
        weight, _, _, _, f = problem.component(index)
        operator = np.asarray(phi.diff2().eval(points)) + \
            _log_derivative(weight, points, N) * np.asarray(phi.diff().eval(points))
        source = evaluate(f, x=points, y1=values1, y2=values2, params=problem.params)
        residuals.append(np.abs(operator - source))
    return ResidualTable(xs=points, res1=residuals[0], res2=residuals[1])


def solve_with_residuals(problem: Problem, cfg: HamConfig,
                         xs: Sequence[float] = (0.1, 0.3, 0.5, 0.7, 0.9)) -> Solution:
    """ham_solve вместе с E_1n, E_2n и таблицей Res."""
    solution = ham_solve(problem, cfg)
    solution.E1, solution.E2 = integral_residual(problem, solution.phi1, solution.phi2, cfg.residual_nodes)
    solution.residuals = differential_residual(problem, solution.phi1, solution.phi2, xs)
    logger.info(
        f"Решение порядка {cfg.order} при c=({cfg.c10:.6g}, {cfg.c20:.6g}): "
        f"E1={solution.E1:.3e}, E2={solution.E2:.3e}"
    )
    return solution


def residual_objective(problem: Problem, order: int, N: int, nodes: Sequence[float],
                       c10: float, c20: float) -> tuple[float, float]:
    """(E1, E2) частичных сумм порядка n при заданных c10, c20."""
    cfg = HamConfig(order=order, c10=c10, c20=c20, degree=N, residual_nodes=tuple(nodes))
    solution = ham_solve(problem, cfg)
    return integral_residual(problem, solution.phi1, solution.phi2, nodes)


def monomial_in_x(solution: Solution, component: int, degree: int = 16) -> np.ndarray:
    """
    Коэффициенты частичной суммы φ_in по степеням x.

    Args:
        solution: Решение
        component: 1 или 2
        degree: Наибольшая допустимая степень (не больше 16)

    Returns:
        np.ndarray: Коэффициенты по возрастанию степени
    """
    if component not in (1, 2):
        raise ValueError(f"Номер компоненты должен быть 1 или 2, получено {component}")
    phi = solution.phi1 if component == 1 else solution.phi2
    return phi.to_monomial(max_degree=degree)
