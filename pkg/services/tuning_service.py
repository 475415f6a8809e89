"""
Модуль подбора параметров управления сходимостью (c10, c20) и оценок сходимости.

Целевая функция F(c10, c20) = E_1n + E_2n минимизируется симплекс-методом
Нелдера–Мида по log F из точки ADM и нескольких точек грубой сетки.
Критерий "stationary" вместо этого ищет ближайшую к ADM точку, где
∂E1/∂c10 = ∂E2/∂c20 = 0.
"""
from concurrent.futures import ThreadPoolExecutor
from typing import Optional, Sequence

import numpy as np
from scipy.optimize import minimize

from config import config
from expressions.evaluator import evaluate
from numerics.green import bound_constant
from numerics.grid import GridFn
from problems.models import BoundReport, HamConfig, Landscape, Problem, TuneReport, equispaced_nodes
from services.ham_service import ham_solve, problem_kernels, residual_objective, source_terms
from utils.errors import ExprDomainError, GridError, LaneFowlerError, StageError, TunerError
from utils.logger import logger

Box = tuple[tuple[float, float], tuple[float, float]]

DEFAULT_SEARCH: Box = ((-1.5, -0.25), (-1.5, -0.25))
STATIONARITY_STEP = 1e-4
ADM_CONTROL = (-1.0, -1.0)
CRITERIA = ("joint", "stationary")
# E ниже этого порога неразличимы в двойной точности
NOISE_WINDOW = 1e-24
LOG_FLOOR = 1e-300
LOCAL_STEP = 1e-4
MAX_SWEEPS = 50
SWEEP_TOL = 1e-8
MAX_DESCENT_EVALUATIONS = 200
MIN_DESCENT_BUDGET = 10
MAX_LANDSCAPE_RESOLUTION = 201


def _workers(workers: Optional[int]) -> int:
    return max(1, workers if workers is not None else config.workers())


class ResidualObjective:
    """F(c) = E1 + E2; расходящиеся точки получают +inf."""

    def __init__(self, problem: Problem, order: int, N: int, nodes: Sequence[float]):
        self.problem = problem
        self.order = order
        self.N = N
        self.nodes = tuple(nodes)

    def components(self, c10: float, c20: float) -> tuple[float, float]:
        """(E1, E2) или (inf, inf) при расходимости."""
        if c10 == 0 or c20 == 0:
            return float("inf"), float("inf")
        try:
            return residual_objective(self.problem, self.order, self.N, self.nodes, c10, c20)
        except (StageError, ExprDomainError, GridError) as e:
            logger.debug(f"Точка c=({c10:.6g}, {c20:.6g}) отброшена: {e}")
            return float("inf"), float("inf")

    def __call__(self, c: Sequence[float]) -> float:
        E1, E2 = self.components(float(c[0]), float(c[1]))
        total = E1 + E2
        return total if np.isfinite(total) else float("inf")


def _grid_points(search: Box, resolution: int) -> list[tuple[float, float]]:
    first = np.linspace(search[0][0], search[0][1], resolution)
    second = np.linspace(search[1][0], search[1][1], resolution)
    return [(float(u), float(v)) for u in first for v in second]


def _log_scaled(value: float) -> float:
    return float(np.log(value + LOG_FLOOR)) if np.isfinite(value) else float("inf")


def _inside(point: Sequence[float], search: Box) -> bool:
    return all(low <= value <= high for value, (low, high) in zip(point, search))


def _initial_simplex(start: Sequence[float], search: Box, step: float) -> np.ndarray:
    """Симплекс с ребром step у start; шаг разворачивается у верхней границы."""
    start = np.asarray(start, dtype=float)
    vertices = [start.copy()]
    for axis, (low, high) in enumerate(search[:len(start)]):
        vertex = start.copy()
        vertex[axis] += step if start[axis] + step <= high else -step
        vertices.append(vertex)
    return np.array(vertices)


def _run_simplex(objective: ResidualObjective, start: tuple[float, float], search: Box,
                 maxfev: int, tol: float, step: Optional[float] = None) -> tuple[list, bool]:
    """
    Один запуск симплекса по log E; история хранит сами значения E.

    При заданном step начальный симплекс мал, и спуск остаётся в ближайшей
    к start впадине.
    """
    history: list[tuple[tuple[float, float], float]] = []

    def recorded(c: np.ndarray) -> float:
        value = objective(c)
        history.append(((float(c[0]), float(c[1])), value))
        return _log_scaled(value)

    options = dict(maxfev=maxfev, xatol=tol, fatol=tol)
    if step is not None:
        options["initial_simplex"] = _initial_simplex(start, search, step)
    result = minimize(recorded, np.array(start, dtype=float), method="Nelder-Mead",
                      bounds=list(search), options=options)
    return history, bool(result.success)


def _best_in_history(history: Sequence[tuple[tuple[float, float], float]]) -> tuple[tuple[float, float], float]:
    """Минимум по истории; среди значений в пределах NOISE_WINDOW берётся вычисленное раньше."""
    finite = [item for item in history if np.isfinite(item[1])]
    if not finite:
        raise TunerError("Все вычисленные точки расходятся")
    best_value = min(value for _, value in finite)
    return next(item for item in finite if item[1] <= best_value + NOISE_WINDOW)


def _descend_component(objective: ResidualObjective, point: tuple[float, float], component: int,
                       search: Box, maxfev: int, tol: float,
                       history: list) -> float:
    """Локальный спуск по c_i0 для E_i при фиксированной другой координате."""

    def value(c: np.ndarray) -> float:
        trial = list(point)
        trial[component] = float(c[0])
        E = objective.components(*trial)
        history.append(((trial[0], trial[1]), sum(E) if np.all(np.isfinite(E)) else float("inf")))
        return _log_scaled(E[component])

    bounds = [search[component]]
    start = np.array([point[component]])
    result = minimize(value, start, method="Nelder-Mead", bounds=bounds,
                      options=dict(maxfev=maxfev, xatol=tol, fatol=tol,
                                   initial_simplex=_initial_simplex(start, tuple(bounds), LOCAL_STEP)))
    return float(result.x[0])


def solve_partial_stationarity(objective: ResidualObjective, start: tuple[float, float], search: Box,
                               budget: int, tol: float) -> tuple[tuple[float, float], list, bool]:
    """
    Решает ∂E1/∂c10 = 0, ∂E2/∂c20 = 0 поочерёдными спусками от start.

    Каждый спуск начинается с шага LOCAL_STEP, поэтому находится ближайшая
    к start точка частной стационарности, а не глобальный минимум E1 + E2.

    Returns:
        tuple: (точка, история, признак сходимости)
    """
    history: list[tuple[tuple[float, float], float]] = []
    point = (float(start[0]), float(start[1]))
    for sweep in range(MAX_SWEEPS):
        previous = point
        for component in (0, 1):
            remaining = budget - len(history)
            if remaining < MIN_DESCENT_BUDGET:
                logger.warning(f"Бюджет исчерпан на проходе {sweep + 1}")
                return point, history, False
            value = _descend_component(objective, point, component, search,
                                       min(remaining, MAX_DESCENT_EVALUATIONS), tol, history)
            point = (value, point[1]) if component == 0 else (point[0], value)
        if max(abs(a - b) for a, b in zip(point, previous)) <= max(tol, SWEEP_TOL):
            logger.debug(f"Частная стационарность за {sweep + 1} проходов")
            return point, history, True
    return point, history, False


def optimize_c(
    problem: Problem,
    order: int,
    N: int = 64,
    search: Box = DEFAULT_SEARCH,
    budget: int = 2000,
    grid: int = 5,
    starts: int = 4,
    nodes: Optional[Sequence[float]] = None,
    tol: Optional[float] = None,
    workers: Optional[int] = None,
    criterion: str = "joint",
) -> TuneReport:
    """
    Подбирает (c10, c20).

    criterion="joint" минимизирует E1 + E2: точка ADM (-1, -1) и лучшие
    точки сетки запускают симплекс по log E. criterion="stationary" решает
    систему ∂E1/∂c10 = 0, ∂E2/∂c20 = 0 от точки ADM (или от лучшей точки
    сетки, если ADM вне прямоугольника).

    Args:
        problem: Задача
        order: Порядок n
        N: Степень сетки
        search: Прямоугольник поиска ((c10_min, c10_max), (c20_min, c20_max))
        budget: Общее число вычислений целевой функции
        grid: Размер стартовой сетки grid x grid
        starts: Сколько лучших точек сетки запускают симплекс
        nodes: Узлы невязки
        tol: Допуск по c (и по log E для симплекса)
        workers: Число параллельных исполнителей
        criterion: "joint" или "stationary"

    Returns:
        TuneReport: Лучшая точка и история
    """
    _check_search(search)
    if criterion not in CRITERIA:
        raise ValueError(f"Критерий должен быть одним из {', '.join(CRITERIA)}, получено '{criterion}'")
    if budget < 50:
        raise ValueError(f"Бюджет должен быть не меньше 50 вычислений, получено {budget}")
    nodes = tuple(nodes) if nodes is not None else equispaced_nodes()
    tol = float(config.SIMPLEX_TOL) if tol is None else tol
    objective = ResidualObjective(problem, order, N, nodes)
    pool_size = _workers(workers)
    with_adm = _inside(ADM_CONTROL, search)

    grid = max(1, min(grid, int(np.sqrt(budget // 2))))
    points = ([ADM_CONTROL] if with_adm else []) + [p for p in _grid_points(search, grid) if p != ADM_CONTROL]
    if criterion == "stationary" and with_adm:
        points = [ADM_CONTROL]
    logger.info(f"Подбор c ({criterion}): порядок {order}, сетка {grid}x{grid}, бюджет {budget}, "
                f"потоков {pool_size}")

    with ThreadPoolExecutor(max_workers=pool_size) as pool:
        values = list(pool.map(objective, points))
        history = list(zip(points, values))

        ranked = sorted((i for i, v in enumerate(values) if np.isfinite(v)), key=lambda i: values[i])
        chosen = [points[i] for i in ranked[:max(1, starts)]]
        if with_adm and np.isfinite(values[0]):
            chosen = [ADM_CONTROL] + [p for p in chosen if p != ADM_CONTROL][:max(1, starts)]
        if not chosen:
            raise TunerError("Все стартовые точки сетки расходятся")

        remaining = budget - len(points)
        if criterion == "stationary":
            best_point, run_history, converged = solve_partial_stationarity(
                objective, chosen[0], search, remaining, tol)
            history.extend(run_history)
        else:
            per_start = max(remaining // len(chosen), 0)
            if per_start < 10:
                chosen = chosen[:1]
                per_start = max(remaining, 10)
            runs = list(pool.map(
                lambda start: _run_simplex(objective, start, search, per_start, tol,
                                           LOCAL_STEP if start == ADM_CONTROL else None),
                chosen,
            ))
            for run_history, _ in runs:
                history.extend(run_history)
            best_point, _ = _best_in_history(history)

            # Сходимость засчитывается запуску, нашедшему лучшую точку
            converged = False
            for run_history, success in runs:
                if any(point == best_point for point, _ in run_history):
                    converged = success
                    break

    E1, E2 = objective.components(*best_point)
    if not np.isfinite(E1 + E2):
        raise TunerError(f"Найденная точка c=({best_point[0]:.6g}, {best_point[1]:.6g}) расходится")
    gradient, partial = stationarity(objective, best_point)
    report = TuneReport(
        c10_opt=best_point[0], c20_opt=best_point[1], E_opt=E1 + E2, E1_opt=E1, E2_opt=E2,
        history=history, converged=converged, evaluations=len(history), order=order,
        gradient=gradient, partial_stationarity=partial,
        best_start=chosen[0], criterion=criterion,
    )
    if not converged:
        logger.warning(f"Подбор не достиг допуска {tol:g} за {budget} вычислений; возвращена лучшая точка")
    logger.info(
        f"Подбор завершён: c=({report.c10_opt:.8g}, {report.c20_opt:.8g}), "
        f"E={report.E_opt:.3e}, вычислений {report.evaluations}"
    )
    return report


def stationarity(objective: ResidualObjective, point: tuple[float, float],
                 step: float = STATIONARITY_STEP) -> tuple[tuple[float, float], tuple[float, float]]:
    """
    Центральные разности в точке: градиент E1+E2 и частные ∂E1/∂c10, ∂E2/∂c20.

    Returns:
        tuple: (градиент, частная стационарность)
    """
    c10, c20 = point
    plus1 = objective.components(c10 + step, c20)
    minus1 = objective.components(c10 - step, c20)
    plus2 = objective.components(c10, c20 + step)
    minus2 = objective.components(c10, c20 - step)
    gradient = (
        (sum(plus1) - sum(minus1)) / (2 * step),
        (sum(plus2) - sum(minus2)) / (2 * step),
    )
    partial = (
        (plus1[0] - minus1[0]) / (2 * step),
        (plus2[1] - minus2[1]) / (2 * step),
    )
    return gradient, partial


def _check_search(search: Box) -> None:
    for low, high in search:
        if not low < high:
            raise ValueError(f"Некорректный интервал поиска [{low}, {high}]")
        if low <= 0 <= high:
            raise ValueError(f"Интервал поиска [{low}, {high}] не должен содержать c=0")


def landscape(
    problem: Problem,
    order: int,
    c10_range: tuple[float, float],
    c20_range: tuple[float, float],
    resolution: tuple[int, int] = (21, 21),
    N: int = 64,
    nodes: Optional[Sequence[float]] = None,
    workers: Optional[int] = None,
) -> Landscape:
    """
    Значения F(c10, c20) на сетке; расходящиеся ячейки равны +inf.

    Args:
        problem: Задача
        order: Порядок n
        c10_range, c20_range: Диапазоны по возрастанию
        resolution: Число точек по c10 и c20 (не больше 201)
        N: Степень сетки
        nodes: Узлы невязки
        workers: Число параллельных исполнителей

    Returns:
        Landscape: Матрица E (строки - c10, столбцы - c20)
    """
    rows, cols = resolution
    if not (1 <= rows <= MAX_LANDSCAPE_RESOLUTION and 1 <= cols <= MAX_LANDSCAPE_RESOLUTION):
        raise ValueError(f"Разрешение сетки не больше {MAX_LANDSCAPE_RESOLUTION}, получено {resolution}")
    c10_values = np.linspace(min(c10_range), max(c10_range), rows)
    c20_values = np.linspace(min(c20_range), max(c20_range), cols)
    objective = ResidualObjective(problem, order, N, nodes if nodes is not None else equispaced_nodes())
    points = [(float(u), float(v)) for u in c10_values for v in c20_values]
    with ThreadPoolExecutor(max_workers=_workers(workers)) as pool:
        values = list(pool.map(objective, points))
    logger.info(f"Карта E построена: {rows}x{cols} точек")
    return Landscape(c10=c10_values, c20=c20_values, values=np.array(values).reshape(rows, cols))


def estimate_lipschitz(
    problem: Problem,
    box: tuple[tuple[float, float], tuple[float, float]],
    samples: int = 11,
) -> tuple[float, float, float]:
    """
    Оценка констант Липшица центральными разностями на сетке samples³.

    Args:
        problem: Задача
        box: ((y1_min, y1_max), (y2_min, y2_max))
        samples: Число точек по каждой оси

    Returns:
        tuple[float, float, float]: (L, l1, l2), l_i = max |∂f/∂y_i| по обеим компонентам
    """
    (y1_low, y1_high), (y2_low, y2_high) = box
    if y1_low > y1_high or y2_low > y2_high:
        raise ValueError(f"Пустая область {box}")
    xs = np.linspace(0.0, 1.0, samples)
    X, Y1, Y2 = np.meshgrid(xs, np.linspace(y1_low, y1_high, samples),
                            np.linspace(y2_low, y2_high, samples), indexing="ij")
    h1 = 1e-6 * max(1.0, abs(y1_low), abs(y1_high))
    h2 = 1e-6 * max(1.0, abs(y2_low), abs(y2_high))

    def value(f, y1, y2):
        return np.broadcast_to(np.asarray(evaluate(f, x=X, y1=y1, y2=y2, params=problem.params), dtype=float), X.shape)

    l1 = l2 = 0.0
    for f in (problem.f1, problem.f2):
        d1 = (value(f, Y1 + h1, Y2) - value(f, Y1 - h1, Y2)) / (2 * h1)
        d2 = (value(f, Y1, Y2 + h2) - value(f, Y1, Y2 - h2)) / (2 * h2)
        l1 = max(l1, float(np.max(np.abs(d1))))
        l2 = max(l2, float(np.max(np.abs(d2))))
    return max(l1, l2), l1, l2


def solution_box(partials: Sequence[GridFn], inflation: float = 0.2) -> tuple[float, float]:
    """Диапазон значений частичных сумм, расширенный на inflation."""
    values = np.concatenate([np.asarray(p.eval(np.linspace(0.0, 1.0, 201))) for p in partials])
    low, high = float(np.min(values)), float(np.max(values))
    width = high - low
    pad = inflation * width / 2 if width > 0 else 0.1 * max(1.0, abs(low))
    return low - pad, high + pad


def contraction_constant(c0: float, L: float, M: float) -> float:
    """δ = |1 + c0| + 2·L·M·|c0|."""
    return abs(1.0 + c0) + 2.0 * L * M * abs(c0)


def convergence_report(
    problem: Problem,
    c10: float,
    c20: float,
    n: int,
    L: Optional[float] = None,
    N: int = 64,
    box: Optional[tuple[tuple[float, float], tuple[float, float]]] = None,
) -> BoundReport:
    """
    Оценки сходимости: M, L, δ, оценка ошибки усечения по порядкам.

    Args:
        problem: Задача
        c10, c20: Параметры управления сходимостью
        n: Порядок
        L: Константа Липшица (если None, оценивается по области частичных сумм)
        N: Степень сетки
        box: Область (y1, y2) для оценки L

    Returns:
        BoundReport: Отчёт
    """
    kern1, kern2 = problem_kernels(problem, N)
    M = bound_constant(kern1, kern2)
    l1 = l2 = float("nan")
    if L is None:
        if box is None:
            try:
                solution = ham_solve(problem, HamConfig(order=n, c10=c10, c20=c20, degree=N))
                box = (solution_box(solution.partial1), solution_box(solution.partial2))
            except LaneFowlerError as e:
                logger.warning(f"Область для оценки L взята по начальному приближению: {e}")
                box = (solution_box([GridFn.const(problem.initial1, N)]),
                       solution_box([GridFn.const(problem.initial2, N)]))
        L, l1, l2 = estimate_lipschitz(problem, box)

    per_component = (contraction_constant(c10, L, M), contraction_constant(c20, L, M))
    c0_abs = max(abs(c10), abs(c20))
    delta = max(abs(1.0 + c10), abs(1.0 + c20)) + 2.0 * L * M * c0_abs

    F1, F2 = source_terms(problem, GridFn.const(problem.initial1, N), GridFn.const(problem.initial2, N))
    max_source = max(F1.max_abs(), F2.max_abs())

    admissible = delta < 1.0
    bounds: list[float] = []
    cauchy: list[float] = []
    if admissible:
        first = ham_solve(problem, HamConfig(order=1, c10=c10, c20=c20, degree=N))
        first_norm = max(first.terms1[1].max_abs(), first.terms2[1].max_abs())
        for m in range(1, n + 1):
            bounds.append(delta ** m * M * c0_abs * max_source / (1.0 - delta))
            cauchy.append(delta ** m / (1.0 - delta) * first_norm)
    else:
        logger.warning(f"δ = {delta:.4g} ≥ 1: оценка сходимости неприменима")

    in_range = all(-1.0 <= c < 0.0 for c in (c10, c20))
    ratio = tuple((1.0 - abs(1.0 + c)) / abs(c) for c in (c10, c20))
    return BoundReport(
        M=M, L=L, l1=l1, l2=l2, delta=delta, delta_per_component=per_component,
        c0_abs=c0_abs, max_source=max_source, bound_per_order=bounds, cauchy_estimate=cauchy,
        admissible=admissible, c_range_admissible=in_range, c_range_ratio=ratio,
    )
