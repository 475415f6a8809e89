"""
Общие фикстуры тестов.
"""
import numpy as np
import pytest

from expressions.parser import parse
from numerics.green import Weight
from problems.catalog import builtin
from problems.models import Problem

DEGREE = 64


def make_problem(f1: str, f2: str, k1: float = 2, k2: float = 2, c1: float = 1.0, c2: float = 0.5,
                 a1: float = 1.0, b1: float = 0.0, a2: float = 1.0, b2: float = 0.0,
                 params: dict = None, name: str = "test") -> Problem:
    """Задача по строкам правых частей."""
    return Problem(
        weight1=Weight.power(k1), weight2=Weight.power(k2),
        a1=a1, b1=b1, c1=c1, a2=a2, b2=b2, c2=c2,
        f1=parse(f1), f2=parse(f2), params=params or {}, name=name,
    ).validate()


@pytest.fixture
def degree() -> int:
    return DEGREE


@pytest.fixture
def polynomial_problem() -> Problem:
    """Система с точным решением (3 - x², x² - 1)."""
    return builtin(3)


@pytest.fixture
def trivial_problem() -> Problem:
    """f1 = f2 = 0: решение постоянно и равно c/a."""
    return make_problem("0", "0", c1=1.5, c2=-2.0, name="trivial")


@pytest.fixture
def linear_problem() -> Problem:
    """Слабо связанная линейная система с δ < 1 при c = -1."""
    return make_problem("0.1*y2 + 1", "0.1*y1")


@pytest.fixture
def dense() -> np.ndarray:
    return np.linspace(0.0, 1.0, 401)
