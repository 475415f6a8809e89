import numpy as np
import pytest

from config import config
from numerics.grid import GridFn
from problems.catalog import builtin, list_examples
from problems.models import HamConfig
from services.ham_service import (
    adm_solve,
    differential_residual,
    ham_solve,
    integral_residual,
    monomial_in_x,
    solve_with_residuals,
)
from utils.errors import DivergenceError, GridError, StageDomainError
from conftest import make_problem


def test_polynomial_system_is_reproduced(polynomial_problem, dense):
    solution = ham_solve(polynomial_problem, HamConfig(order=3, c10=-1.0, c20=-1.0))
    assert np.max(np.abs(solution.phi1.eval(dense) - (3 - dense ** 2))) < 1e-10
    assert np.max(np.abs(solution.phi2.eval(dense) - (dense ** 2 - 1))) < 1e-10


def test_polynomial_system_residuals(polynomial_problem):
    solution = solve_with_residuals(polynomial_problem, HamConfig(order=3, c10=-1.0, c20=-1.0))
    assert solution.E1 < 1e-20
    assert solution.E2 < 1e-20
    assert np.max(solution.residuals.res1) < 1e-6
    assert np.max(solution.residuals.res2) < 1e-6


def test_higher_terms_vanish_for_polynomial_system(polynomial_problem):
    solution = ham_solve(polynomial_problem, HamConfig(order=4, c10=-1.0, c20=-1.0))
    for term in solution.terms1[2:] + solution.terms2[2:]:
        assert term.max_abs() < 1e-11


@pytest.mark.parametrize("item", list_examples(), ids=lambda item: item.ref)
def test_adm_matches_direct_recursion(item):
    solution = adm_solve(item.build(), order=4, N=32)
    assert solution.order == 4
    assert solution.config.c10 == -1.0


@pytest.mark.parametrize("item", list_examples(), ids=lambda item: item.ref)
def test_boundary_conditions_hold_for_every_partial_sum(item):
    problem = item.build()
    c10, c20 = item.control
    solution = ham_solve(problem, HamConfig(order=3, c10=c10, c20=c20, degree=32))
    for phi1, phi2 in zip(solution.partial1, solution.partial2):
        assert phi1(1.0) == pytest.approx(problem.initial1, abs=1e-12)
        assert phi2(1.0) == pytest.approx(problem.initial2, abs=1e-12)
    for term in solution.terms1[1:] + solution.terms2[1:]:
        assert abs(term.diff()(0.0)) < 1e-7


def test_robin_boundary_condition():
    problem = make_problem("1 + 0.2*y2", "x - 0.1*y1^2", b1=0.5, a2=2.0, b2=-0.25, c2=1.0)
    solution = ham_solve(problem, HamConfig(order=4, c10=-0.9, c20=-1.1))
    for phi, a, b, c in ((solution.phi1, 1.0, 0.5, 1.0), (solution.phi2, 2.0, -0.25, 1.0)):
        assert a * phi(1.0) + b * phi.diff()(1.0) == pytest.approx(c, abs=1e-9)


def test_trivial_problem(trivial_problem):
    solution = ham_solve(trivial_problem, HamConfig(order=5, c10=-0.7, c20=-1.3))
    assert np.allclose(solution.phi1.values, 1.5)
    assert np.allclose(solution.phi2.values, -2.0)
    for term in solution.terms1[1:] + solution.terms2[1:]:
        assert term.max_abs() == 0.0


def test_partial_sums_accumulate_terms(linear_problem):
    solution = ham_solve(linear_problem, HamConfig(order=3, c10=-0.8, c20=-0.8, degree=32))
    total = solution.terms1[0] + solution.terms1[1] + solution.terms1[2] + solution.terms1[3]
    assert np.allclose(solution.phi1.values, total.values, atol=1e-15)
    assert len(solution.partial1) == 4


def test_first_order_is_independent_of_previous_term(linear_problem):
    base = ham_solve(linear_problem, HamConfig(order=1, c10=-1.0, c20=-1.0, degree=32))
    scaled = ham_solve(linear_problem, HamConfig(order=1, c10=-0.5, c20=-1.0, degree=32))
    assert np.allclose(scaled.terms1[1].values, 0.5 * base.terms1[1].values, atol=1e-15)


def test_linear_problem_converges_geometrically(linear_problem, dense):
    reference = ham_solve(linear_problem, HamConfig(order=20, c10=-1.0, c20=-1.0))
    errors = []
    for n in range(1, 6):
        solution = ham_solve(linear_problem, HamConfig(order=n, c10=-1.0, c20=-1.0))
        errors.append(max(
            np.max(np.abs(solution.phi1.eval(dense) - reference.phi1.eval(dense))),
            np.max(np.abs(solution.phi2.eval(dense) - reference.phi2.eval(dense))),
        ))
    # связь через y2 -> y1 даёт множитель 0.1 только за два шага
    for previous, current in zip(errors, errors[2:]):
        assert current < previous / 10 or current < 1e-13
    assert all(current <= previous for previous, current in zip(errors, errors[1:]))


def test_integral_residual_decreases_with_order(linear_problem):
    values = []
    for n in (1, 2, 3):
        solution = ham_solve(linear_problem, HamConfig(order=n, c10=-1.0, c20=-1.0))
        values.append(sum(integral_residual(linear_problem, solution.phi1, solution.phi2, (0.0, 0.5, 1.0))))
    assert values[0] > values[1] > values[2]


def test_integral_residual_needs_nodes(polynomial_problem):
    solution = ham_solve(polynomial_problem, HamConfig(order=1, c10=-1.0, c20=-1.0, degree=32))
    with pytest.raises(ValueError):
        integral_residual(polynomial_problem, solution.phi1, solution.phi2, ())


def test_differential_residual_rejects_origin(polynomial_problem):
    phi = GridFn.const(1.0, 32)
    with pytest.raises(GridError):
        differential_residual(polynomial_problem, phi, phi, (0.0, 0.5))


def test_exact_solution_has_small_differential_residual(polynomial_problem):
    phi1 = GridFn.sample(lambda x: 3 - x ** 2, 32)
    phi2 = GridFn.sample(lambda x: x ** 2 - 1, 32)
    table = differential_residual(polynomial_problem, phi1, phi2, (0.1, 0.5, 0.9))
    assert np.max(table.res1) < 1e-8
    assert np.max(table.res2) < 1e-8


def test_divergence_is_reported(monkeypatch):
    monkeypatch.setattr(config, "DIVERGENCE_LIMIT", "10")
    with pytest.raises(DivergenceError) as info:
        ham_solve(builtin(2, "v1"), HamConfig(order=3, c10=-20.0, c20=-20.0, degree=32))
    assert info.value.stage == 2


def test_stage_domain_error():
    problem = make_problem("ln(y1)", "0", c1=-1.0)
    with pytest.raises(StageDomainError) as info:
        ham_solve(problem, HamConfig(order=2, c10=-1.0, c20=-1.0, degree=32))
    assert info.value.stage == 1
    assert info.value.component == 1


@pytest.mark.parametrize("kwargs", [
    dict(order=0, c10=-1.0, c20=-1.0),
    dict(order=2, c10=0.0, c20=-1.0),
    dict(order=2, c10=-1.0, c20=-1.0, degree=8),
    dict(order=2, c10=-1.0, c20=-1.0, residual_nodes=(0.5, 1.5)),
])
def test_invalid_configuration(kwargs):
    with pytest.raises(ValueError):
        HamConfig(**kwargs)


def test_monomial_coefficients_of_partial_sums(polynomial_problem):
    solution = ham_solve(polynomial_problem, HamConfig(order=3, c10=-1.0, c20=-1.0, degree=32))
    assert np.allclose(monomial_in_x(solution, 1, 4), [3.0, 0.0, -1.0], atol=1e-10)
    assert np.allclose(monomial_in_x(solution, 2, 4), [-1.0, 0.0, 1.0], atol=1e-10)
    with pytest.raises(ValueError):
        monomial_in_x(solution, 3)


def test_monomial_rejects_transcendental_partial_sums():
    solution = ham_solve(builtin(5, "exact"), HamConfig(order=3, c10=-1.0, c20=-1.0, degree=32))
    with pytest.raises(GridError):
        monomial_in_x(solution, 1, 2)
