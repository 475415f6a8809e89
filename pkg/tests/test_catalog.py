import numpy as np
import pytest

from expressions.evaluator import evaluate
from expressions.nodes import Neg, free_parameters, to_source
from numerics.grid import GridFn
from problems.catalog import TABLE_POINTS, builtin, entry, list_examples
from services.ham_service import differential_residual
from utils.errors import CatalogError

EXACT = [item for item in list_examples() if item.variant == "exact"]


def test_catalog_order_and_references():
    refs = [item.ref for item in list_examples()]
    assert refs[:7] == ["1:k1", "1:k2", "1:k1_printed", "1:k2_printed", "2:v1", "2:v2", "3:exact"]
    assert len(refs) == len(set(refs))
    assert {item.example for item in list_examples()} == set(range(1, 8))


def test_published_rows_use_table_points():
    for item in list_examples():
        if item.reference:
            assert tuple(row.x for row in item.reference) == TABLE_POINTS


def test_control_defaults_to_adm():
    assert entry(4, "exact").printed_c is None
    assert entry(4, "exact").control == (-1.0, -1.0)
    assert entry(1, "k2").control == (-0.995713, -0.996167)


def test_substrate_parameters():
    problem = builtin(1, "k1")
    assert problem.params["a"] == 5.0
    assert problem.params["m2"] == 1e-4
    assert problem.weight1.k == 1.0
    assert problem.initial1 == 1.0 and problem.initial2 == 1.0
    assert "c" in problem.params
    assert "c" not in free_parameters(problem.f1)
    assert builtin(1, "k2").weight2.k == 2.0


@pytest.mark.parametrize("k", [1, 2])
def test_printed_substrate_variant_keeps_c_term(k):
    table = builtin(1, f"k{k}")
    printed = builtin(1, f"k{k}_printed")
    assert printed.name == f"1:k{k}_printed"
    assert "c" in free_parameters(printed.f1)
    assert printed.f2 == table.f2
    assert entry(1, f"k{k}_printed").reference == ()
    y1, y2 = 1.5, 1.02
    params = printed.params
    g2 = y1 * y2 / ((params["l2"] + y1) * (params["m2"] + y2))
    difference = (evaluate(table.f1, y1=y1, y2=y2, params=params)
                  - evaluate(printed.f1, y1=y1, y2=y2, params=params))
    assert difference == pytest.approx(params["c"] * g2, rel=1e-12)


def test_first_variant_is_default():
    assert builtin(2).name == "2:v1"
    assert entry(5).variant == "table"


def test_polynomial_system_exact_solution_source():
    problem = builtin(3)
    assert to_source(problem.exact1) == "3 - x^2"
    assert to_source(problem.exact2) == "-1 + x^2"
    assert to_source(builtin(6, "exact").exact1) == "-3*ln(2 + x^2)"


@pytest.mark.parametrize("item", EXACT, ids=lambda item: item.ref)
def test_exact_solutions_satisfy_equations(item):
    problem = item.build()
    assert problem.has_exact
    phi1 = GridFn.sample(lambda x: evaluate(problem.exact1, x=x) + 0 * x, 64)
    phi2 = GridFn.sample(lambda x: evaluate(problem.exact2, x=x) + 0 * x, 64)
    table = differential_residual(problem, phi1, phi2, TABLE_POINTS + (1.0,))
    assert np.max(table.res1) < 1e-6
    assert np.max(table.res2) < 1e-6
    assert phi1(1.0) == pytest.approx(problem.initial1, abs=1e-12)
    assert phi2(1.0) == pytest.approx(problem.initial2, abs=1e-12)
    assert abs(phi1.diff()(0.0)) < 1e-8
    assert abs(phi2.diff()(0.0)) < 1e-8


@pytest.mark.parametrize("example", [4, 5, 6, 7])
def test_table_variant_negates_right_hand_side(example):
    table = builtin(example, "table")
    exact = builtin(example, "exact")
    assert table.f1 == Neg(exact.f1)
    assert table.f2 == Neg(exact.f2)
    assert (table.weight1.k, table.weight2.k) == (exact.weight1.k, exact.weight2.k)


def test_exponential_variants_differ_only_in_example_five():
    assert builtin(5, "table").initial1 == pytest.approx(np.log(4))
    assert builtin(5, "exact").initial1 == pytest.approx(np.log(5))
    assert builtin(6, "table").initial2 == builtin(6, "exact").initial2


@pytest.mark.parametrize("example, variant", [(0, None), (8, None), (3, "table"), (1, "k3")])
def test_unknown_entries(example, variant):
    with pytest.raises(CatalogError):
        entry(example, variant)
