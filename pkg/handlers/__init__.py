"""Модуль обработчиков подкоманд командной строки."""
