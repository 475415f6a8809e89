"""
Модуль воспроизведения опубликованных таблиц и выгрузки результатов.
"""
from concurrent.futures import ThreadPoolExecutor
from dataclasses import asdict, dataclass, field
from pathlib import Path
from typing import Optional, Sequence, Union

import numpy as np

from config import config
from expressions.evaluator import evaluate
from problems.catalog import PROVENANCE, TABLE_POINTS, CatalogEntry, ReferenceRow, entry, list_examples
from problems.models import HamConfig, Landscape, Solution, TableRow, TuneReport, equispaced_nodes
from services.ham_service import adm_solve, differential_residual, solve_with_residuals
from services.tuning_service import optimize_c
from utils.errors import LaneFowlerError
from utils.formatters import format_fixed, format_sci, format_table, to_csv, to_json
from utils.logger import logger

SOLUTION_TOLERANCE = 5e-4
RESIDUAL_FACTOR = 5.0
RESIDUAL_CHECKS = ("res1", "res2")


@dataclass
class BenchResult:
    """Результат воспроизведения одной таблицы."""

    entry: CatalogEntry
    rows: list[TableRow] = field(default_factory=list)
    tuned_rows: list[TableRow] = field(default_factory=list)
    tune: Optional[TuneReport] = None
    E1: Optional[float] = None
    E2: Optional[float] = None
    error: Optional[str] = None

    @property
    def passed(self) -> bool:
        return self.error is None and bool(self.rows) and all(row.passed for row in self.rows)

    @property
    def failures(self) -> list[str]:
        """Ячейки, не прошедшие сравнение."""
        if self.error is not None:
            return [self.error]
        return [f"x={row.x:g}: {name}" for row in self.rows for name, ok in row.checks.items() if not ok]


def _residual_matches(value: float, reference: float) -> bool:
    return reference / RESIDUAL_FACTOR <= value <= reference * RESIDUAL_FACTOR


def merge_residual_checks(rows: Sequence[TableRow], tuned_rows: Sequence[TableRow]) -> None:
    """Ячейка невязки проходит, если совпала при опубликованных c или при подобранных."""
    tuned_by_x = {round(row.x, 12): row for row in tuned_rows}
    for row in rows:
        tuned = tuned_by_x.get(round(row.x, 12))
        if tuned is None:
            continue
        for name in RESIDUAL_CHECKS:
            if name in row.checks and not row.checks[name]:
                row.checks[name] = tuned.checks.get(name, False)


def build_rows(solution: Solution, xs: Sequence[float] = TABLE_POINTS,
               adm: Optional[Solution] = None,
               reference: Sequence[ReferenceRow] = ()) -> list[TableRow]:
    """
    Строки таблицы решения: значения, невязки, ADM, точное решение, эталон.

    Args:
        solution: Решение HAM
        xs: Точки таблицы из (0, 1]
        adm: Решение ADM того же порядка (необязательно)
        reference: Опубликованные строки для сравнения

    Returns:
        list[TableRow]: Строки по возрастанию x
    """
    problem = solution.problem
    xs = sorted(float(x) for x in xs)
    points = np.array(xs)
    table = differential_residual(problem, solution.phi1, solution.phi2, points)
    phi1 = np.asarray(solution.phi1.eval(points))
    phi2 = np.asarray(solution.phi2.eval(points))

    psi1 = psi2 = adm_table = None
    if adm is not None:
        psi1 = np.asarray(adm.phi1.eval(points))
        psi2 = np.asarray(adm.phi2.eval(points))
        adm_table = differential_residual(problem, adm.phi1, adm.phi2, points)

    exact1 = exact2 = None
    if problem.has_exact:
        exact1 = np.broadcast_to(evaluate(problem.exact1, x=points, params=problem.params), points.shape)
        exact2 = np.broadcast_to(evaluate(problem.exact2, x=points, params=problem.params), points.shape)

    by_x = {round(ref.x, 12): ref for ref in reference}
    rows = []
    for i, x in enumerate(xs):
        row = TableRow(
            x=x, phi1=float(phi1[i]), phi2=float(phi2[i]),
            res1=float(table.res1[i]), res2=float(table.res2[i]),
            psi1=None if psi1 is None else float(psi1[i]),
            psi2=None if psi2 is None else float(psi2[i]),
            adm_res1=None if adm_table is None else float(adm_table.res1[i]),
            adm_res2=None if adm_table is None else float(adm_table.res2[i]),
            exact1=None if exact1 is None else float(exact1[i]),
            exact2=None if exact2 is None else float(exact2[i]),
        )
        ref = by_x.get(round(x, 12))
        if ref is not None:
            row.reference = asdict(ref)
            row.provenance = PROVENANCE
            row.checks = {
                "phi1": abs(row.phi1 - ref.phi1) <= SOLUTION_TOLERANCE,
                "phi2": abs(row.phi2 - ref.phi2) <= SOLUTION_TOLERANCE,
                "res1": _residual_matches(row.res1, ref.res1),
                "res2": _residual_matches(row.res2, ref.res2),
            }
        rows.append(row)
    return rows


def reproduce_table(
    example: int,
    variant: Optional[str] = None,
    tune: bool = True,
    N: Optional[int] = None,
    budget: Optional[int] = None,
    nodes: Optional[Sequence[float]] = None,
    tune_workers: Optional[int] = None,
) -> BenchResult:
    """
    Воспроизводит опубликованную таблицу встроенного примера.

    HAM и ADM считаются при опубликованных (c10, c20); при tune=True
    дополнительно подбирается собственный оптимум и строятся его строки.
    Сравнение ячеек: решения с допуском 5e-4, невязки с точностью до
    множителя 5 при опубликованных c или (если tune=True) при подобранных.
    Для примеров с точным решением и опубликованными c сравнивается
    погрешность с тем же допуском.

    Args:
        example: Номер примера
        variant: Вариант
        tune: Запускать ли подбор c
        N: Степень сетки
        budget: Бюджет подбора
        nodes: Узлы невязки E
        tune_workers: Потоки подбора

    Returns:
        BenchResult: Строки и признак прохождения
    """
    item = entry(example, variant)
    problem = item.build()
    N = N or int(config.DEFAULT_DEGREE)
    nodes = tuple(nodes) if nodes is not None else equispaced_nodes(int(config.DEFAULT_NODES))
    c10, c20 = item.control
    result = BenchResult(entry=item)
    logger.info(f"Воспроизведение {item.ref}: порядок {item.order}, c=({c10:g}, {c20:g})")

    try:
        solution = solve_with_residuals(problem, HamConfig(order=item.order, c10=c10, c20=c20,
                                                          degree=N, residual_nodes=nodes), TABLE_POINTS)
    except LaneFowlerError as e:
        result.error = f"Расходимость при опубликованных c: {e}"
        logger.error(f"{item.ref}: {result.error}")
        return result
    result.E1, result.E2 = solution.E1, solution.E2

    adm = None
    try:
        adm = adm_solve(problem, item.order, N, nodes)
    except LaneFowlerError as e:
        logger.warning(f"{item.ref}: ADM не построен: {e}")

    result.rows = build_rows(solution, TABLE_POINTS, adm, item.reference)
    if problem.has_exact and item.printed_c is not None:
        for row in result.rows:
            row.checks["err1"] = row.err1 <= SOLUTION_TOLERANCE
            row.checks["err2"] = row.err2 <= SOLUTION_TOLERANCE

    if tune:
        try:
            result.tune = optimize_c(
                problem, item.order, N=N, search=config.search_box(),
                budget=budget or int(config.DEFAULT_BUDGET), grid=int(config.DEFAULT_GRID),
                nodes=nodes, workers=tune_workers,
            )
            tuned = solve_with_residuals(
                problem,
                HamConfig(order=item.order, c10=result.tune.c10_opt, c20=result.tune.c20_opt,
                          degree=N, residual_nodes=nodes),
                TABLE_POINTS,
            )
            result.tuned_rows = build_rows(tuned, TABLE_POINTS, None, item.reference)
            merge_residual_checks(result.rows, result.tuned_rows)
        except LaneFowlerError as e:
            logger.warning(f"{item.ref}: подбор c не удался: {e}")

    status = "пройдено" if result.passed else f"не пройдено ({len(result.failures)} ячеек)"
    logger.info(f"{item.ref}: {status}")
    return result


def reproduce_all(
    refs: Optional[Sequence[tuple[int, Optional[str]]]] = None,
    tune: bool = True,
    N: Optional[int] = None,
    budget: Optional[int] = None,
    workers: Optional[int] = None,
) -> list[BenchResult]:
    """
    Воспроизводит несколько таблиц параллельно; порядок результатов совпадает с refs.

    Args:
        refs: Пары (номер, вариант); None - весь каталог
        tune: Запускать ли подбор c
        N: Степень сетки
        budget: Бюджет подбора
        workers: Число параллельных задач

    Returns:
        list[BenchResult]: Результаты
    """
    if refs is None:
        refs = [(item.example, item.variant) for item in list_examples()]
    pool_size = max(1, workers if workers is not None else config.workers())
    with ThreadPoolExecutor(max_workers=pool_size) as pool:
        futures = [
            pool.submit(reproduce_table, example, variant, tune, N, budget, None, 1)
            for example, variant in refs
        ]
        return [future.result() for future in futures]


# --- выгрузка ---

SOLUTION_COLUMNS = ("x", "phi1", "phi2", "res1", "res2")
EXACT_COLUMNS = ("exact1", "exact2", "err1", "err2")
BENCH_COLUMNS = (
    "example", "variant", "mode", "x", "phi1", "ref_phi1", "phi2", "ref_phi2",
    "res1", "ref_res1", "res2", "ref_res2", "psi1", "psi2", "adm_res1", "adm_res2", "passed",
)


def _solution_csv(rows: Sequence[TableRow]) -> str:
    with_exact = any(row.exact1 is not None for row in rows)
    headers = SOLUTION_COLUMNS + (EXACT_COLUMNS if with_exact else ())
    lines = []
    for row in rows:
        cells = [row.x, row.phi1, row.phi2, row.res1, row.res2]
        if with_exact:
            cells += [row.exact1, row.exact2, row.err1, row.err2]
        lines.append(cells)
    return to_csv(headers, lines)


def _bench_csv(results: Sequence[BenchResult]) -> str:
    lines = []
    for result in results:
        for mode, rows in (("printed", result.rows), ("tuned", result.tuned_rows)):
            for row in rows:
                ref = row.reference
                lines.append([
                    result.entry.example, result.entry.variant, mode, row.x,
                    row.phi1, ref.get("phi1"), row.phi2, ref.get("phi2"),
                    row.res1, ref.get("res1"), row.res2, ref.get("res2"),
                    row.psi1, row.psi2, row.adm_res1, row.adm_res2,
                    int(row.passed) if mode == "printed" else "",
                ])
    return to_csv(BENCH_COLUMNS, lines)


def _row_document(row: TableRow) -> dict:
    document = asdict(row)
    document["err1"], document["err2"] = row.err1, row.err2
    document["passed"] = row.passed
    return document


def _bench_document(result: BenchResult) -> dict:
    return {
        "example": result.entry.example,
        "variant": result.entry.variant,
        "order": result.entry.order,
        "printed_c": result.entry.printed_c,
        "E1": result.E1,
        "E2": result.E2,
        "passed": result.passed,
        "failures": result.failures,
        "rows": [_row_document(row) for row in result.rows],
        "tuned_rows": [_row_document(row) for row in result.tuned_rows],
        "tune": tune_document(result.tune) if result.tune else None,
    }


def tune_document(report: TuneReport) -> dict:
    """TuneReport без истории вычислений и карты."""
    document = asdict(report)
    document.pop("history")
    document.pop("landscape")
    return document


TUNE_COLUMNS = ("c10_opt", "c20_opt", "E_opt", "E1_opt", "E2_opt", "converged", "evaluations", "order", "criterion")


def tune_csv(report: TuneReport, extra: Optional[dict] = None) -> str:
    """Одна строка CSV с итогом подбора и дополнительными столбцами extra."""
    extra = extra or {}
    cells = [getattr(report, name) for name in TUNE_COLUMNS]
    cells[TUNE_COLUMNS.index("converged")] = int(report.converged)
    return to_csv(TUNE_COLUMNS + tuple(extra), [cells + list(extra.values())])


def solution_document(solution: Solution, rows: Sequence[TableRow], extra: Optional[dict] = None) -> dict:
    """JSON-документ решения: настройки, E, строки и дополнительные отчёты."""
    cfg = solution.config
    document = {
        "problem": solution.problem.name,
        "config": {"order": cfg.order, "c10": cfg.c10, "c20": cfg.c20, "degree": cfg.degree,
                   "residual_nodes": len(cfg.residual_nodes)},
        "E1": solution.E1,
        "E2": solution.E2,
        "rows": [_row_document(row) for row in rows],
    }
    document.update(extra or {})
    return document


def landscape_csv(surface: Landscape) -> str:
    """CSV карты: c10, c20, E (строки по возрастанию c10, затем c20)."""
    lines = [
        [float(c10), float(c20), float(surface.values[i, j])]
        for i, c10 in enumerate(surface.c10)
        for j, c20 in enumerate(surface.c20)
    ]
    return to_csv(("c10", "c20", "E"), lines)


def human_table(rows: Sequence[TableRow]) -> str:
    """Таблица в раскладке опубликованных: x | φ1 ψ1 φ2 ψ2 | Res1 res1 Res2 res2."""
    headers = ["x", "phi1", "psi1", "phi2", "psi2", "Res1", "res1", "Res2", "res2"]
    with_exact = any(row.exact1 is not None for row in rows)
    if with_exact:
        headers += ["err1", "err2"]
    body = []
    for row in rows:
        cells = [f"{row.x:.1f}", format_fixed(row.phi1), format_fixed(row.psi1),
                 format_fixed(row.phi2), format_fixed(row.psi2),
                 format_sci(row.res1), format_sci(row.adm_res1),
                 format_sci(row.res2), format_sci(row.adm_res2)]
        if with_exact:
            cells += [format_sci(row.err1), format_sci(row.err2)]
        body.append(cells)
    return format_table(headers, body)


def report(
    payload: Union[Sequence[TableRow], Sequence[BenchResult], Landscape],
    fmt: str = "csv",
    destination: Optional[Union[str, Path]] = None,
    solution: Optional[Solution] = None,
    extra: Optional[dict] = None,
) -> str:
    """
    Выгружает строки решения, результаты сравнения или карту E.

    Args:
        payload: Строки решения, список BenchResult или Landscape
        fmt: csv | json | table
        destination: Путь файла; None - только вернуть текст
        solution: Решение (для эха настроек в JSON)
        extra: Дополнительные разделы JSON (tune, bounds)

    Returns:
        str: Текст документа
    """
    if fmt not in ("csv", "json", "table"):
        raise ValueError(f"Неизвестный формат '{fmt}'")
    if isinstance(payload, Landscape):
        if fmt == "json":
            text = to_json({"c10": payload.c10, "c20": payload.c20, "E": payload.values})
        else:
            text = landscape_csv(payload)
    elif payload and isinstance(payload[0], BenchResult):
        if fmt == "json":
            text = to_json([_bench_document(result) for result in payload])
        elif fmt == "csv":
            text = _bench_csv(payload)
        else:
            parts = []
            for result in payload:
                state = "OK" if result.passed else "FAIL"
                parts.append(f"Пример {result.entry.ref} (порядок {result.entry.order}): {state}")
                if result.rows:
                    parts.append(human_table(result.rows))
                for failure in result.failures:
                    parts.append(f"  не совпало: {failure}")
                if result.tune is not None:
                    parts.append(f"  подбор: c=({result.tune.c10_opt:.6f}, {result.tune.c20_opt:.6f}), "
                                 f"E={result.tune.E_opt:.3e}")
                parts.append("")
            text = "\n".join(parts)
    else:
        rows = list(payload)
        if fmt == "json":
            document = solution_document(solution, rows, extra) if solution else {"rows": [_row_document(r) for r in rows]}
            text = to_json(document)
        elif fmt == "csv":
            text = _solution_csv(rows)
        else:
            text = human_table(rows) + "\n"

    if destination is not None:
        try:
            Path(destination).write_text(text, encoding="utf-8")
        except OSError as e:
            logger.error(f"Не удалось записать {destination}: {e}")
            raise
        logger.info(f"Результат записан в {destination}")
    return text
