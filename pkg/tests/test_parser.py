import numpy as np
import pytest

from expressions.evaluator import eval_scalar, evaluate
from expressions.nodes import Binary, Neg, Num, Param, Var, free_parameters, to_source
from expressions.parser import parse
from utils.errors import ExprDomainError, ExprSyntaxError, UnboundParameterError, UnknownFunctionError


@pytest.mark.parametrize("source, expected", [
    ("1 + 2*3^2", 19.0),
    ("-2^2", -4.0),
    ("2^3^2", 512.0),
    ("2**3", 8.0),
    ("(1 + 2)*3", 9.0),
    ("8/2/2", 2.0),
    ("2^-1", 0.5),
    ("exp(0) + ln(1) + sqrt(16)", 5.0),
    ("1.5e-3*1000", 1.5),
    ("+3 - -2", 5.0),
])
def test_precedence_and_associativity(source, expected):
    assert eval_scalar(parse(source)) == pytest.approx(expected)


def test_tree_shape():
    assert parse("-x^2") == Neg(Binary("^", Var("x"), Num(2.0)))
    assert parse("a*y1") == Binary("*", Param("a"), Var("y1"))


@pytest.mark.parametrize("source", [
    "b - a*y1*y2/((l1 + y1)*(m1 + y2))",
    "-(y1*y2 + 7 + (y1 - 1)^2)",
    "(4*y1^(-2) + 1)*y2^(-3)",
    "-6*(exp(y2/3) + 4)*exp(2*y1/3)",
    "x - (y1 - y2)",
    "(x^2)^3",
    "1/sqrt(1 + x^2)",
    "0.0001*y1 - 1e-05",
])
def test_pretty_printer_round_trips(source):
    tree = parse(source)
    assert parse(to_source(tree)) == tree


def test_pretty_printer_uses_minimal_parentheses():
    assert to_source(parse("((3)) - ((x^2))")) == "3 - x^2"
    assert to_source(parse("(a*y1)^2")) == "(a*y1)^2"


def test_syntax_error_reports_position():
    with pytest.raises(ExprSyntaxError) as info:
        parse("y1 +\n  * 2")
    assert info.value.line == 2
    assert info.value.column == 3


def test_unexpected_end():
    with pytest.raises(ExprSyntaxError):
        parse("(y1 + 1")


def test_invalid_character():
    with pytest.raises(ExprSyntaxError) as info:
        parse("y1 $ 2")
    assert info.value.column == 4


def test_unknown_function():
    with pytest.raises(UnknownFunctionError):
        parse("sin(x)")


def test_function_name_without_call():
    with pytest.raises(ExprSyntaxError):
        parse("exp + 1")


def test_free_parameters():
    tree = parse("b - a*y1*y2/((l1 + y1)*(m1 + y2))")
    assert free_parameters(tree) == {"a", "b", "l1", "m1"}


def test_unbound_parameter():
    with pytest.raises(UnboundParameterError) as info:
        eval_scalar(parse("a*y1 + b"), y1=1.0, params={"a": 2.0})
    assert info.value.names == ["b"]


@pytest.mark.parametrize("source", ["ln(y1)", "sqrt(y1 - 1)", "1/y1", "y1^(-2)", "y1^0.5"])
def test_domain_errors(source):
    with pytest.raises(ExprDomainError):
        eval_scalar(parse(source), y1=0.0 if "sqrt" not in source and "0.5" not in source else -1.0)


def test_exponent_must_be_constant():
    with pytest.raises(ExprDomainError):
        eval_scalar(parse("y1^x"), x=1.0, y1=2.0)


def test_parameter_exponent():
    assert eval_scalar(parse("y1^n"), y1=3.0, params={"n": 2}) == 9.0


def test_vectorized_evaluation():
    x = np.linspace(0.0, 1.0, 5)
    values = evaluate(parse("3 - x^2"), x=x)
    assert np.allclose(values, 3 - x ** 2)
