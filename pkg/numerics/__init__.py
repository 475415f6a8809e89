"""Численные основы: сеточные функции и функции Грина."""
