"""
Модуль для валидации аргументов командной строки и файлов задач.
"""
import re
from typing import Optional

SearchBox = tuple[tuple[float, float], tuple[float, float]]

_INTERVAL_PATTERN = re.compile(r'^\s*([^:,]+?)\s*:\s*([^:,]+?)\s*$')
_EXAMPLE_PATTERN = re.compile(r'^\s*([1-9]\d*)\s*(?::\s*([A-Za-z0-9_]+))?\s*$')


def parse_interval(text: str) -> tuple[float, float]:
    """
    Разбирает интервал вида "a:b".

    Args:
        text: Строка интервала

    Returns:
        tuple[float, float]: (a, b) с a < b
    """
    match = _INTERVAL_PATTERN.match(text)
    if not match:
        raise ValueError(f"Интервал должен иметь вид a:b, получено '{text}'")
    try:
        low, high = float(match.group(1)), float(match.group(2))
    except ValueError:
        raise ValueError(f"Границы интервала должны быть числами: '{text}'") from None
    if not low < high:
        raise ValueError(f"Левая граница интервала должна быть меньше правой: '{text}'")
    return low, high


def parse_search_box(text: str) -> SearchBox:
    """
    Разбирает прямоугольник поиска вида "a:b,c:d".

    Интервалы не должны содержать c = 0: при нулевом параметре рекурсия
    вырождается.

    Args:
        text: Строка вида "-1.5:-0.25,-1.5:-0.25"

    Returns:
        SearchBox: ((c10_min, c10_max), (c20_min, c20_max))
    """
    parts = text.split(",")
    if len(parts) != 2:
        raise ValueError(f"Прямоугольник поиска должен иметь вид a:b,c:d, получено '{text}'")
    box = (parse_interval(parts[0]), parse_interval(parts[1]))
    for low, high in box:
        if low <= 0 <= high:
            raise ValueError(f"Интервал [{low}, {high}] содержит c = 0")
    return box


def parse_example_ref(text: str) -> tuple[int, Optional[str]]:
    """
    Разбирает ссылку на встроенный пример вида "N" или "N:вариант".

    Returns:
        tuple[int, Optional[str]]: (номер, вариант или None)
    """
    match = _EXAMPLE_PATTERN.match(text)
    if not match:
        raise ValueError(f"Ссылка на пример должна иметь вид N или N:вариант, получено '{text}'")
    return int(match.group(1)), match.group(2)


def validate_order(order: int) -> int:
    """Проверяет порядок приближения n ≥ 1."""
    if order < 1:
        raise ValueError(f"Порядок должен быть не меньше 1, получено {order}")
    return order


def validate_degree(degree: int) -> int:
    """Проверяет степень сетки N ≥ 16."""
    if degree < 16:
        raise ValueError(f"Степень сетки должна быть не меньше 16, получено {degree}")
    return degree


def validate_control(value: float, name: str) -> float:
    """Параметр управления сходимостью должен быть ненулевым."""
    if value == 0:
        raise ValueError(f"Параметр {name} должен быть ненулевым")
    return value


def validate_resolution(text: str) -> tuple[int, int]:
    """
    Разбирает разрешение карты "R" или "RxC".

    Returns:
        tuple[int, int]: Число точек по c10 и c20
    """
    parts = text.lower().split("x")
    try:
        values = [int(part) for part in parts]
    except ValueError:
        raise ValueError(f"Разрешение должно иметь вид R или RxC, получено '{text}'") from None
    if len(values) == 1:
        values = values * 2
    if len(values) != 2 or any(v < 1 or v > 201 for v in values):
        raise ValueError(f"Разрешение должно лежать в [1, 201], получено '{text}'")
    return values[0], values[1]
