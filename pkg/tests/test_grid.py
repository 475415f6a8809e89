import numpy as np
import pytest

from numerics.grid import GridFn, add, chebyshev_nodes, coeffs_to_values, make_const, mul, scale, values_to_coeffs
from utils.errors import GridError


def test_nodes_are_symmetric_and_hit_endpoints():
    nodes = chebyshev_nodes(64)
    assert nodes[0] == 0.0
    assert nodes[-1] == 1.0
    assert nodes[32] == 0.5
    assert np.all(np.diff(nodes) > 0)
    assert np.allclose(nodes + nodes[::-1], 1.0, atol=1e-15)


def test_nodes_are_read_only():
    with pytest.raises(ValueError):
        chebyshev_nodes(16)[3] = 0.0


def test_transform_pair_is_inverse():
    values = np.cos(3 * chebyshev_nodes(32)) + chebyshev_nodes(32) ** 5
    assert np.allclose(coeffs_to_values(values_to_coeffs(values)), values, atol=1e-14)


def test_eval_between_nodes():
    f = GridFn.sample(lambda x: x ** 3 - 2 * x, 32)
    assert f(0.37) == pytest.approx(0.37 ** 3 - 2 * 0.37, abs=1e-13)
    assert f.eval(np.array([0.0, 1.0])) == pytest.approx([0.0, -1.0], abs=1e-14)


def test_eval_returns_stored_value_at_nodes():
    f = GridFn.sample(np.exp, 32)
    assert f(f.nodes[5]) == f.values[5]


def test_eval_outside_interval_raises():
    f = GridFn.const(1.0, 16)
    with pytest.raises(GridError):
        f(1.5)
    with pytest.raises(GridError):
        f(-0.01)


def test_rejects_non_finite_values():
    values = np.ones(17)
    values[4] = np.nan
    with pytest.raises(GridError):
        GridFn(values)


def test_rejects_tiny_grids():
    with pytest.raises(GridError):
        GridFn(np.ones(5))
    with pytest.raises(GridError):
        GridFn.const(1.0, 4)


def test_values_are_immutable():
    f = GridFn.const(2.0, 16)
    with pytest.raises(ValueError):
        f.values[0] = 1.0


def test_cumint_of_polynomial_is_exact():
    f = GridFn.sample(lambda x: x ** 2, 32)
    F = f.cumint()
    assert F.values[0] == 0.0
    assert np.allclose(F.values, F.nodes ** 3 / 3, atol=1e-14)
    assert f.integral() == pytest.approx(1 / 3, abs=1e-14)


def test_integral_of_exponential():
    assert GridFn.sample(np.exp, 32).integral() == pytest.approx(np.e - 1, abs=1e-13)


def test_derivatives(dense):
    f = GridFn.sample(np.sin, 64)
    assert np.max(np.abs(f.diff().eval(dense) - np.cos(dense))) < 1e-11
    assert np.max(np.abs(f.diff2().eval(dense) + np.sin(dense))) < 1e-7


def test_arithmetic_resamples_to_finer_grid():
    f = GridFn.sample(lambda x: x, 16)
    g = GridFn.sample(lambda x: x ** 2, 32)
    h = f * g + 1.0
    assert h.degree == 32
    assert h(0.3) == pytest.approx(0.3 ** 3 + 1.0, abs=1e-13)
    assert (2.0 - f)(0.25) == pytest.approx(1.75)
    assert (-f)(0.5) == pytest.approx(-0.5)


def test_resample_preserves_polynomials():
    f = GridFn.sample(lambda x: 1 - 3 * x ** 4, 16)
    g = f.resample(48)
    assert np.allclose(g.values, 1 - 3 * g.nodes ** 4, atol=1e-13)


def test_max_abs_sees_interior_extremum():
    f = GridFn.sample(lambda x: np.sin(2 * np.pi * x), 64)
    assert f.max_abs() == pytest.approx(1.0, abs=1e-4)


def test_to_monomial():
    f = GridFn.sample(lambda x: 1.0 + 2.0 * x ** 2 - 0.5 * x ** 6, 64)
    coeffs = f.to_monomial()
    expected = [1.0, 0.0, 2.0, 0.0, 0.0, 0.0, -0.5]
    assert len(coeffs) == len(expected)
    assert np.allclose(coeffs, expected, atol=1e-10)


def test_to_monomial_rejects_non_polynomials():
    with pytest.raises(GridError):
        GridFn.sample(np.exp, 64).to_monomial(max_degree=4)


def test_functional_forms():
    x = GridFn.identity(32)
    assert add(make_const(1.0, 32), make_const(2.0, 32))(0.4) == pytest.approx(3.0)
    assert scale(mul(x, x), -1.0)(0.5) == pytest.approx(-0.25)
    assert mul(x, x)(0.3) == pytest.approx(0.09)
    assert make_const(0.0, 16).integral() == 0.0
