"""Язык выражений для правых частей и коэффициентов."""
