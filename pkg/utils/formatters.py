"""
Модуль для форматирования результатов: числа, текстовые таблицы, CSV и JSON.
"""
import csv
import io
import json
import math
from typing import Any, Iterable, Optional, Sequence

SIGNIFICANT_DIGITS = 9


def format_value(value: Optional[float]) -> str:
    """Число с 9 значащими цифрами; пустая строка для None."""
    if value is None:
        return ""
    value = float(value)
    if math.isnan(value):
        return "nan"
    if math.isinf(value):
        return "inf" if value > 0 else "-inf"
    return f"{value:.{SIGNIFICANT_DIGITS}g}"


def format_fixed(value: Optional[float], digits: int = 7) -> str:
    """Значение решения в виде 1.9898484."""
    return "-" if value is None else f"{value:.{digits}f}"


def format_sci(value: Optional[float]) -> str:
    """Невязка в виде 2.46E-04."""
    return "-" if value is None else f"{value:.2E}"


def format_table(headers: Sequence[str], rows: Iterable[Sequence[str]]) -> str:
    """
    Выравнивает таблицу по столбцам.

    Args:
        headers: Заголовки столбцов
        rows: Строки уже отформатированных ячеек

    Returns:
        str: Текст таблицы
    """
    rows = [list(row) for row in rows]
    widths = [len(h) for h in headers]
    for row in rows:
        widths = [max(w, len(cell)) for w, cell in zip(widths, row)]
    line = "  ".join(h.rjust(w) for h, w in zip(headers, widths))
    rule = "-" * len(line)
    body = ["  ".join(cell.rjust(w) for cell, w in zip(row, widths)) for row in rows]
    return "\n".join([line, rule, *body])


def to_csv(headers: Sequence[str], rows: Iterable[Sequence[Any]]) -> str:
    """CSV с фиксированным форматом чисел и переводом строки \\n."""
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(headers)
    for row in rows:
        writer.writerow([format_value(cell) if isinstance(cell, float) or cell is None else cell for cell in row])
    return buffer.getvalue()


def jsonable(value: Any) -> Any:
    """Приводит значение к виду, пригодному для json (числа округляются до 9 цифр)."""
    if isinstance(value, dict):
        return {str(key): jsonable(item) for key, item in value.items()}
    if isinstance(value, (list, tuple)):
        return [jsonable(item) for item in value]
    if hasattr(value, "tolist"):
        return jsonable(value.tolist())
    if isinstance(value, bool) or value is None or isinstance(value, (int, str)):
        return value
    if isinstance(value, float):
        if not math.isfinite(value):
            return None
        return float(format_value(value))
    return str(value)


def to_json(document: Any) -> str:
    """JSON с отступами и фиксированным порядком ключей."""
    return json.dumps(jsonable(document), ensure_ascii=False, indent=2, sort_keys=True) + "\n"
