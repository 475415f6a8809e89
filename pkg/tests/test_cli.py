import csv
import io
import json

import pytest

from config import Config
from main import join_interval_values, run
from utils.validators import (
    parse_example_ref,
    parse_interval,
    parse_search_box,
    validate_resolution,
)


def _rows(text: str) -> list[dict]:
    return list(csv.DictReader(io.StringIO(text)))


def test_examples_lists_catalog(capsys):
    assert run(["examples"]) == 0
    out = capsys.readouterr().out
    assert "1:k1" in out
    assert "7:exact" in out


def test_solve_polynomial_system_as_csv(capsys):
    assert run(["solve", "--example", "3", "--degree", "32", "--format", "csv", "--exact"]) == 0
    captured = capsys.readouterr()
    rows = _rows(captured.out)
    assert len(rows) == 5
    assert float(rows[0]["phi1"]) == pytest.approx(2.99, abs=1e-9)
    assert "E1 =" in captured.err
    assert "max|phi1 - y1|" in captured.err


def test_solve_json_with_adm_and_points(capsys):
    code = run(["solve", "--example", "2:v1", "--degree", "32", "--adm", "--points", "0.2", "0.6",
                "--format", "json"])
    assert code == 0
    document = json.loads(capsys.readouterr().out)
    assert [row["x"] for row in document["rows"]] == [0.2, 0.6]
    assert document["rows"][0]["psi1"] is not None
    assert document["config"]["c10"] == pytest.approx(-0.767463)


def test_solve_writes_output_file(tmp_path):
    destination = tmp_path / "rows.csv"
    assert run(["solve", "--example", "3", "--degree", "32", "--output", str(destination)]) == 0
    assert destination.read_text(encoding="utf-8").startswith("x,phi1,phi2")


@pytest.mark.parametrize("argv", [
    [],
    ["solve"],
    ["solve", "--example", "3", "--problem", "p.ini"],
    ["solve", "--example", "three"],
    ["solve", "--example", "3", "--order", "0"],
    ["solve", "--example", "3", "--degree", "8"],
    ["solve", "--example", "3", "--c1", "0"],
    ["tune", "--example", "3", "--search", "-1:1,-1:-0.5"],
    ["landscape", "--example", "3", "--resolution", "0"],
    ["bench"],
    ["nonsense"],
])
def test_usage_errors(argv, capsys):
    assert run(argv) == 2


def test_unknown_example_is_a_failure():
    assert run(["solve", "--example", "9"]) == 1
    assert run(["solve", "--example", "3:table"]) == 1


def test_missing_exact_solution_is_a_failure():
    assert run(["solve", "--example", "1:k1", "--degree", "32", "--exact"]) == 1


def test_invalid_configuration(monkeypatch):
    monkeypatch.setattr(Config, "DEFAULT_DEGREE", "eight")
    assert run(["examples"]) == 2


@pytest.mark.parametrize("command", ["solve", "tune", "bench", "landscape", "examples", "emit"])
def test_help(command, capsys):
    assert run([command, "--help"]) == 0
    assert "usage" in capsys.readouterr().out


def test_emit_then_solve_from_file(tmp_path, capsys):
    path = tmp_path / "problem.ini"
    assert run(["emit", "--example", "3", "--output", str(path)]) == 0
    assert "[rhs]" in path.read_text(encoding="utf-8")
    assert run(["solve", "--problem", str(path), "--degree", "32", "--format", "csv", "--exact"]) == 0
    rows = _rows(capsys.readouterr().out)
    assert float(rows[-1]["err1"]) < 1e-10


def test_bench_single_example(capsys):
    assert run(["bench", "--example", "3", "--no-tune", "--degree", "32"]) == 0
    assert "3:exact" in capsys.readouterr().out


def test_bench_csv(capsys):
    assert run(["bench", "--example", "3", "--no-tune", "--degree", "32", "--format", "csv"]) == 0
    rows = _rows(capsys.readouterr().out)
    assert {row["passed"] for row in rows} == {"1"}


def test_landscape_command(capsys):
    code = run(["landscape", "--example", "3", "--order", "2", "--degree", "32", "--nodes", "11",
                "--c10-range=-1.5:-0.5", "--c20-range", "-1.5:-0.5", "--resolution", "3"])
    assert code == 0
    rows = _rows(capsys.readouterr().out)
    assert len(rows) == 9
    assert list(rows[0]) == ["c10", "c20", "E"]


def test_tune_command_json(capsys):
    code = run(["tune", "--example", "3", "--degree", "32", "--nodes", "11", "--search", "-1.5:-0.5,-1.5:-0.5",
                "--budget", "100", "--grid", "3", "--starts", "1", "--format", "json"])
    assert code == 0
    document = json.loads(capsys.readouterr().out)
    assert document["tune"]["c10_opt"] == pytest.approx(-1.0, abs=5e-3)
    assert "delta" in document["bounds"]


def test_validators():
    assert parse_interval("-1.5:-0.25") == (-1.5, -0.25)
    assert parse_search_box("-2:-1,-1.5:-0.5") == ((-2.0, -1.0), (-1.5, -0.5))
    assert parse_example_ref("2:v1") == (2, "v1")
    assert parse_example_ref("4") == (4, None)
    assert validate_resolution("7") == (7, 7)
    assert validate_resolution("3x5") == (3, 5)
    with pytest.raises(ValueError):
        validate_resolution("202")
    with pytest.raises(ValueError):
        parse_search_box("-1:-0.5")


def test_solve_reports_monomial_coefficients(capsys):
    assert run(["solve", "--example", "3", "--degree", "32", "--monomial", "4", "--format", "json"]) == 0
    document = json.loads(capsys.readouterr().out)
    assert document["monomial"]["phi1"] == pytest.approx([3.0, 0.0, -1.0], abs=1e-8)


def test_negative_interval_values_are_not_flags():
    argv = ["landscape", "--c10-range", "-1.5:-0.5", "--search=-2:-1,-2:-1", "--c20-range", "-1:-0.5"]
    assert join_interval_values(argv) == [
        "landscape", "--c10-range=-1.5:-0.5", "--search=-2:-1,-2:-1", "--c20-range=-1:-0.5",
    ]
    assert join_interval_values(["tune", "--search"]) == ["tune", "--search"]
    assert run(["tune", "--example", "3", "--search"]) == 2


def test_tune_command_csv(capsys):
    code = run(["tune", "--example", "3", "--degree", "32", "--nodes", "11", "--search=-1.5:-0.5,-1.5:-0.5",
                "--budget", "100", "--grid", "3", "--starts", "1", "--format", "csv"])
    assert code == 0
    [row] = _rows(capsys.readouterr().out)
    assert float(row["c10_opt"]) == pytest.approx(-1.0, abs=5e-3)
    assert row["order"] == "3"
    assert row["converged"] in {"0", "1"}
    assert "delta" in row
