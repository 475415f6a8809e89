"""
Иерархия исключений решателя.
"""
from typing import Optional


class LaneFowlerError(Exception):
    """Базовое исключение библиотеки."""


class ExprSyntaxError(LaneFowlerError):
    """Синтаксическая ошибка в выражении."""

    def __init__(self, message: str, line: int, column: int):
        self.line = line
        self.column = column
        super().__init__(f"{message} (строка {line}, столбец {column})")


class UnknownFunctionError(ExprSyntaxError):
    """Неизвестное имя функции в выражении."""


class UnboundParameterError(LaneFowlerError):
    """Параметр выражения не задан."""

    def __init__(self, names: list[str]):
        self.names = sorted(names)
        super().__init__(f"Не заданы параметры: {', '.join(self.names)}")


class ExprDomainError(LaneFowlerError):
    """Выход за область определения (деление на ноль, ln(v<=0), 0^отрицательное)."""

    def __init__(self, message: str, subexpression: str):
        self.subexpression = subexpression
        super().__init__(f"{message} в подвыражении '{subexpression}'")


class SeriesDegeneracyError(ExprDomainError):
    """Старший коэффициент ряда слишком близок к нулю."""


class GridError(LaneFowlerError):
    """Ошибка операции над сеточной функцией."""


class KernelError(LaneFowlerError):
    """Некорректные данные для построения функции Грина."""


class StageError(LaneFowlerError):
    """Ошибка на конкретном шаге рекурсии."""

    def __init__(self, message: str, stage: int, component: Optional[int] = None):
        self.stage = stage
        self.component = component
        where = f"шаг {stage}" if component is None else f"шаг {stage}, компонента {component}"
        super().__init__(f"{message} ({where})")


class DivergenceError(StageError):
    """Член ряда превысил порог расходимости или стал не конечным."""


class StageDomainError(StageError):
    """Ошибка области определения на шаге рекурсии."""


class ConsistencyError(LaneFowlerError):
    """Нарушено внутреннее тождество (например, ADM против HAM при c=-1)."""


class TunerError(LaneFowlerError):
    """Подбор параметров не дал ни одной допустимой точки."""


class ProblemFileError(LaneFowlerError):
    """Ошибка в файле задачи."""

    def __init__(self, message: str, location: Optional[str] = None):
        self.location = location
        text = message if location is None else f"{location}: {message}"
        super().__init__(text)


class CatalogError(LaneFowlerError):
    """Неизвестный пример или вариант."""
