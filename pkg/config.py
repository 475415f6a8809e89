"""
Модуль конфигурации для загрузки и валидации переменных окружения.
"""
import os
from typing import Optional
from dotenv import load_dotenv

# Загружаем переменные из .env файла
load_dotenv()


def _parse_bool(value: Optional[str]) -> bool:
    """Преобразует строковое значение переменной окружения в bool."""
    return str(value).strip().lower() in ("1", "true", "yes", "on")


class Config:
    """Класс для управления конфигурацией решателя."""

    # Логирование
    LOG_LEVEL: str = os.getenv("LOG_LEVEL", "INFO")
    LOG_TO_FILE: bool = _parse_bool(os.getenv("LOG_TO_FILE", "false"))
    LOG_DIR: str = os.getenv("LOG_DIR", "logs")

    # Параллелизм (0 - по числу ядер)
    LANEFOWLER_THREADS: str = os.getenv("LANEFOWLER_THREADS", "0")

    # Параметры решателя по умолчанию
    DEFAULT_ORDER: str = os.getenv("LANEFOWLER_ORDER", "4")
    DEFAULT_DEGREE: str = os.getenv("LANEFOWLER_DEGREE", "64")
    DEFAULT_NODES: str = os.getenv("LANEFOWLER_NODES", "101")
    DIVERGENCE_LIMIT: str = os.getenv("LANEFOWLER_DIVERGENCE_LIMIT", "1e12")

    # Параметры подбора c0
    DEFAULT_BUDGET: str = os.getenv("LANEFOWLER_BUDGET", "2000")
    DEFAULT_SEARCH: str = os.getenv("LANEFOWLER_SEARCH", "-1.5:-0.25,-1.5:-0.25")
    DEFAULT_GRID: str = os.getenv("LANEFOWLER_GRID", "5")
    SIMPLEX_TOL: str = os.getenv("LANEFOWLER_SIMPLEX_TOL", "1e-10")
    # joint - минимум E1 + E2, stationary - частная стационарность от точки ADM
    TUNER_CRITERION: str = os.getenv("LANEFOWLER_CRITERION", "joint")

    @classmethod
    def validate(cls) -> None:
        """Проверяет корректность всех числовых переменных окружения."""
        invalid_vars = []

        integer_vars = {
            "LANEFOWLER_THREADS": (cls.LANEFOWLER_THREADS, 0),
            "LANEFOWLER_ORDER": (cls.DEFAULT_ORDER, 1),
            "LANEFOWLER_DEGREE": (cls.DEFAULT_DEGREE, 16),
            "LANEFOWLER_NODES": (cls.DEFAULT_NODES, 1),
            "LANEFOWLER_BUDGET": (cls.DEFAULT_BUDGET, 50),
            "LANEFOWLER_GRID": (cls.DEFAULT_GRID, 1),
        }
        for name, (raw, minimum) in integer_vars.items():
            try:
                if int(raw) < minimum:
                    invalid_vars.append(f"{name} (минимум {minimum}, получено {raw})")
            except ValueError:
                invalid_vars.append(f"{name} (ожидается целое, получено {raw})")

        for name, raw in (("LANEFOWLER_DIVERGENCE_LIMIT", cls.DIVERGENCE_LIMIT),
                          ("LANEFOWLER_SIMPLEX_TOL", cls.SIMPLEX_TOL)):
            try:
                if float(raw) <= 0:
                    invalid_vars.append(f"{name} (должно быть > 0, получено {raw})")
            except ValueError:
                invalid_vars.append(f"{name} (ожидается число, получено {raw})")

        if cls.TUNER_CRITERION not in ("joint", "stationary"):
            invalid_vars.append(f"LANEFOWLER_CRITERION (ожидается joint или stationary, получено {cls.TUNER_CRITERION})")

        if cls.LOG_LEVEL.upper() not in ("DEBUG", "INFO", "WARNING", "ERROR", "CRITICAL"):
            invalid_vars.append(f"LOG_LEVEL (неизвестный уровень {cls.LOG_LEVEL})")

        if invalid_vars:
            raise ValueError(
                f"Некорректные переменные окружения: {', '.join(invalid_vars)}. "
                f"Пожалуйста, проверьте файл .env или используйте .env.example как шаблон."
            )

    @classmethod
    def workers(cls) -> int:
        """
        Возвращает допустимое число параллельных исполнителей.

        Returns:
            int: LANEFOWLER_THREADS, либо число ядер при значении 0
        """
        try:
            threads = int(cls.LANEFOWLER_THREADS)
        except ValueError:
            threads = 0
        if threads <= 0:
            threads = os.cpu_count() or 1
        return threads

    @classmethod
    def search_box(cls) -> tuple[tuple[float, float], tuple[float, float]]:
        """Возвращает прямоугольник поиска (c10, c20) по умолчанию."""
        from utils.validators import parse_search_box
        return parse_search_box(cls.DEFAULT_SEARCH)


# Создаём экземпляр конфигурации
config = Config()
