"""
Модуль для настройки логирования решателя.
"""
import logging
import sys
from datetime import datetime
from pathlib import Path
from config import config


def setup_logger() -> logging.Logger:
    """
    Настраивает и возвращает логгер приложения.

    Консольный вывод идёт в stderr: stdout занят таблицами и CSV.

    Returns:
        logging.Logger: Настроенный логгер
    """
    logger = logging.getLogger("lanefowler")
    level = getattr(logging, config.LOG_LEVEL.upper(), logging.INFO)
    logger.setLevel(level)

    # Очищаем существующие handlers
    logger.handlers.clear()

    # Формат логов
    formatter = logging.Formatter(
        '%(asctime)s - %(name)s - %(levelname)s - %(message)s',
        datefmt='%Y-%m-%d %H:%M:%S'
    )

    # Handler для консоли
    console_handler = logging.StreamHandler(sys.stderr)
    console_handler.setLevel(level)
    console_handler.setFormatter(formatter)
    logger.addHandler(console_handler)

    # Handler для файла (по желанию)
    if config.LOG_TO_FILE:
        log_dir = Path(config.LOG_DIR)
        log_dir.mkdir(exist_ok=True)
        log_file = log_dir / f"lanefowler_{datetime.now().strftime('%Y%m%d')}.log"
        file_handler = logging.FileHandler(log_file, encoding='utf-8')
        file_handler.setLevel(level)
        file_handler.setFormatter(formatter)
        logger.addHandler(file_handler)

    return logger


def set_verbosity(verbosity: int) -> None:
    """
    Меняет уровень логгера по числу флагов -v / -q.

    Args:
        verbosity: >0 - подробнее, <0 - тише, 0 - как в конфигурации
    """
    if verbosity > 0:
        level = logging.DEBUG
    elif verbosity < 0:
        level = logging.ERROR
    else:
        level = getattr(logging, config.LOG_LEVEL.upper(), logging.INFO)
    logger.setLevel(level)
    for handler in logger.handlers:
        handler.setLevel(level)


# Создаём глобальный логгер
logger = setup_logger()
