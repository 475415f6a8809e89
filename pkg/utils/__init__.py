"""Модуль утилит решателя."""
from utils.logger import logger

__all__ = ['logger']
