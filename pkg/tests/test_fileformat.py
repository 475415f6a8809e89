import math

import pytest

from expressions.parser import parse
from problems.catalog import list_examples
from problems.fileformat import emit_problem, load_problem, read_problem_file
from utils.errors import ProblemFileError

MINIMAL = """
[weights]
k1 = 2
k2 = 2

[boundary]
a1 = 1
b1 = 0
c1 = 1
a2 = 1
b2 = 0
c2 = 0.5

[rhs]
f1 = 0
f2 = 0
"""


@pytest.mark.parametrize("item", list_examples(), ids=lambda item: item.ref)
def test_builtin_problems_survive_emit_and_load(item):
    problem = item.build()
    assert load_problem(emit_problem(problem)) == problem


def test_minimal_document():
    problem = load_problem(MINIMAL)
    assert problem.weight1.k == 2.0
    assert problem.initial2 == 0.5
    assert problem.params == {}
    assert problem.name == ""
    assert not problem.has_exact


def test_constant_expressions_in_boundary():
    text = MINIMAL.replace("c1 = 1", "c1 = -2*ln(2)").replace("c2 = 0.5", "c2 = 1/sqrt(2)  # комментарий")
    problem = load_problem(text)
    assert problem.c1 == pytest.approx(-2 * math.log(2), rel=1e-15)
    assert problem.c2 == pytest.approx(1 / math.sqrt(2), rel=1e-15)


def test_parameters_are_available_to_boundary_and_rhs():
    text = MINIMAL.replace("c1 = 1", "c1 = 2*s").replace("f1 = 0", "f1 = s*y2") + "\n[params]\ns = 0.25\n"
    problem = load_problem(text)
    assert problem.c1 == 0.5
    assert problem.params == {"s": 0.25}


def test_general_weight_by_product():
    text = MINIMAL.replace("k1 = 2", "p1 = x^2*(1 + x)")
    weight = load_problem(text).weight1
    assert weight.k == 2.0
    assert weight.g == parse("1 + x")


def test_general_weight_by_factor():
    text = MINIMAL.replace("k2 = 2", "k2 = 1\ng2 = 2 + x^2")
    problem = load_problem(text)
    assert problem.weight2.g == parse("2 + x^2")
    assert load_problem(emit_problem(problem)) == problem


def test_solver_and_tuner_sections():
    text = MINIMAL + "\n[solver]\norder = 6\ndegree = 48\n\n[tuner]\nsearch = -2:-0.5,-1.5:-0.25\nbudget = 300\n"
    document = read_problem_file(text)
    assert document.solver == {"order": 6, "degree": 48}
    assert document.tuner == {"search": ((-2.0, -0.5), (-1.5, -0.25)), "budget": 300}
    again = read_problem_file(emit_problem(document.problem, document.solver, document.tuner))
    assert again.solver == document.solver
    assert again.tuner == document.tuner


def test_load_from_path(tmp_path):
    path = tmp_path / "problem.ini"
    path.write_text(MINIMAL, encoding="utf-8")
    assert load_problem(path).c1 == 1.0
    assert load_problem(str(path)).c1 == 1.0


@pytest.mark.parametrize("text, location", [
    (MINIMAL.replace("f1 = 0", "f1 = y1 +"), "[rhs] f1"),
    (MINIMAL.replace("c1 = 1", "c1 = x"), "[boundary] c1"),
    (MINIMAL.replace("k1 = 2\n", ""), "[weights]"),
    (MINIMAL.replace("k1 = 2", "k1 = 2\np1 = x^2"), "[weights] p1"),
    (MINIMAL.replace("k1 = 2", "p1 = 1 + x"), "[weights] p1"),
    (MINIMAL.replace("b2 = 0\n", ""), "[boundary]"),
    (MINIMAL + "\n[solver]\norder = three\n", "[solver] order"),
    (MINIMAL + "\n[tuner]\nsearch = -1:1,-1:-0.5\n", "[tuner]"),
])
def test_errors_carry_location(text, location):
    with pytest.raises(ProblemFileError) as info:
        load_problem(text)
    assert info.value.location == location


@pytest.mark.parametrize("text", [
    MINIMAL.replace("[rhs]", "[equations]"),
    MINIMAL + "\n[extra]\nkey = 1\n",
    MINIMAL.replace("f2 = 0", "f2 = q*y1"),
    MINIMAL.replace("a1 = 1", "a1 = 0"),
    "[weights\nk1 = 2\n",
])
def test_invalid_documents(text):
    with pytest.raises(ProblemFileError):
        load_problem(text)


def test_missing_file(tmp_path):
    with pytest.raises(ProblemFileError):
        load_problem(tmp_path / "absent.ini")
