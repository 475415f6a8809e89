from math import factorial

import numpy as np
import pytest

from expressions.evaluator import evaluate
from expressions.parser import parse
from expressions.series import QSeries, eval_series
from numerics.grid import GridFn
from problems.catalog import list_examples
from utils.errors import ExprDomainError, SeriesDegeneracyError

N = 16


def _series(*terms: float) -> QSeries:
    """Ряд с постоянными по x коэффициентами."""
    return QSeries.from_gridfns([GridFn.const(t, N) for t in terms])


def _coefficients(source: str, y1: QSeries, m: int, y2: QSeries = None) -> np.ndarray:
    x = GridFn.identity(N)
    result = eval_series(parse(source), x, y1, y2 or y1, m)
    return result.terms[:, 0]


def test_exp_of_q():
    coeffs = _coefficients("exp(y1)", _series(0.0, 1.0, 0.0, 0.0, 0.0, 0.0), 5)
    assert coeffs == pytest.approx([1 / factorial(k) for k in range(6)], rel=1e-14)


def test_geometric_quotient():
    coeffs = _coefficients("1/(1 - y1)", _series(0.0, 1.0, 0.0, 0.0, 0.0), 4)
    assert coeffs == pytest.approx([1.0] * 5)


def test_log_of_one_plus_q():
    coeffs = _coefficients("ln(y1)", _series(1.0, 1.0, 0.0, 0.0, 0.0), 4)
    assert coeffs == pytest.approx([0.0, 1.0, -0.5, 1 / 3, -0.25])


def test_sqrt_and_real_power_follow_binomial_series():
    y = _series(1.0, 1.0, 0.0, 0.0, 0.0)
    assert _coefficients("sqrt(y1)", y, 4) == pytest.approx([1.0, 0.5, -0.125, 0.0625, -0.0390625])
    alpha = 2.5
    expected = [1.0]
    for k in range(1, 5):
        expected.append(expected[-1] * (alpha - k + 1) / k)
    assert _coefficients("y1^2.5", y, 4) == pytest.approx(expected)


def test_integer_and_negative_powers():
    y = _series(2.0, 1.0, 0.0, 0.0)
    # (2 + q)^3 = 8 + 12q + 6q² + q³
    assert _coefficients("y1^3", y, 3) == pytest.approx([8.0, 12.0, 6.0, 1.0])
    # (2 + q)^-2 = 1/4 - q/4 + 3q²/16 - q³/8
    assert _coefficients("y1^(-2)", y, 3) == pytest.approx([0.25, -0.25, 3 / 16, -0.125])


def test_product_of_two_components():
    y1 = _series(1.0, 2.0, 0.0)
    y2 = _series(3.0, 0.0, 1.0)
    x = GridFn.identity(N)
    result = eval_series(parse("y1*y2"), x, y1, y2, 2)
    assert result.terms[:, 0] == pytest.approx([3.0, 6.0, 1.0])


def test_degenerate_leading_coefficient():
    with pytest.raises(SeriesDegeneracyError):
        _coefficients("1/y1", _series(0.0, 1.0, 0.0), 2)


def test_log_of_negative_leading_coefficient():
    with pytest.raises(ExprDomainError):
        _coefficients("ln(y1)", _series(-1.0, 1.0, 0.0), 2)


def test_truncate_and_at():
    y = _series(1.0, 2.0, 3.0)
    assert y.truncate(1).order == 1
    assert y.at(0.5)[0] == pytest.approx(1.0 + 1.0 + 0.75)
    with pytest.raises(ValueError):
        y.truncate(3)


def _perturbed(problem, degree: int, order: int) -> tuple[QSeries, QSeries]:
    """Ряды Y_i(q) вокруг y_i0 с гладкими коэффициентами по x."""
    x = GridFn.identity(degree)
    rows = []
    for start in (problem.initial1, problem.initial2):
        terms = [GridFn.const(start, degree)]
        for j in range(1, order + 1):
            terms.append((1.0 - x * x) * (0.2 / j) + x * (0.05 * (-1) ** j))
        rows.append(QSeries.from_gridfns(terms))
    return rows[0], rows[1]


PROBLEMS = [item.build() for item in list_examples()]


@pytest.mark.parametrize("problem", PROBLEMS, ids=[p.name for p in PROBLEMS])
def test_leading_coefficient_matches_pointwise_evaluation(problem):
    x = GridFn.identity(N)
    Y1, Y2 = _perturbed(problem, N, 4)
    for f in (problem.f1, problem.f2):
        series = eval_series(f, x, Y1, Y2, 4, problem.params)
        direct = evaluate(f, x=x.values, y1=Y1.terms[0], y2=Y2.terms[0], params=problem.params)
        direct = np.broadcast_to(direct, x.values.shape)
        assert np.array_equal(series.terms[0], direct)


def test_taylor_consistency_across_catalog():
    rng = np.random.default_rng(2024)
    x = GridFn.identity(N)
    m, extra = 3, 8
    for trial in range(200):
        problem = PROBLEMS[trial % len(PROBLEMS)]
        f = (problem.f1, problem.f2)[(trial // len(PROBLEMS)) % 2]
        Y1, Y2 = _perturbed(problem, N, m + extra)
        series = eval_series(f, x, Y1, Y2, m + extra, problem.params)
        q0 = float(rng.uniform(-0.1, 0.1))

        exact = np.broadcast_to(
            evaluate(f, x=x.values, y1=Y1.at(q0), y2=Y2.at(q0), params=problem.params), x.values.shape
        )
        truncated = series.truncate(m).at(q0)
        tail = sum(np.max(np.abs(series.terms[j])) * abs(q0) ** j for j in range(m + 1, m + extra + 1))
        scale = 1.0 + np.max(np.abs(exact))
        assert np.max(np.abs(exact - truncated)) <= 1.5 * tail + 1e-12 * scale


@pytest.mark.parametrize("problem", PROBLEMS, ids=[p.name for p in PROBLEMS])
def test_coefficient_k_depends_only_on_first_k_terms(problem):
    x = GridFn.identity(N)
    m = 5
    Y1, Y2 = _perturbed(problem, N, m)
    for k in range(m):
        changed1 = np.array(Y1.terms)
        changed2 = np.array(Y2.terms)
        changed1[k + 1:] *= -3.0
        changed2[k + 1:] += 0.7
        for f in (problem.f1, problem.f2):
            base = eval_series(f, x, Y1, Y2, m, problem.params)
            other = eval_series(f, x, QSeries(changed1), QSeries(changed2), m, problem.params)
            assert np.allclose(other.terms[:k + 1], base.terms[:k + 1], rtol=1e-13, atol=1e-13)
