"""Модуль сервисов решателя: рекурсия, подбор параметров, сравнение с таблицами."""
