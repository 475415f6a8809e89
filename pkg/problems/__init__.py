"""Модели задач, каталог примеров и формат файлов задач."""
