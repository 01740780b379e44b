import io
import json
from pathlib import Path

import pytest

import src.main
from src.main import main
from src.reports.report import COUNTEREXAMPLE, AnalysisReport, Section

PROBLEMS = Path(__file__).resolve().parent.parent / "problems"


def test_classify_prints_a_text_report(capsys):
    assert main(["classify", str(PROBLEMS / "ci-x2-y3.calg")]) == 0
    out = capsys.readouterr().out
    assert "[classify]" in out
    assert "I is Gorenstein: yes  (Gorenstein top Betti number)" in out


def test_json_output_with_overrides(capsys):
    assert main(["resolve", str(PROBLEMS / "twisted-cubic.calg"), "--format", "json", "--bound", "4"]) == 0
    document = json.loads(capsys.readouterr().out)
    assert document["analyses"]["resolve"]["totals"] == [1, 3, 2]
    assert "bound D=4;" in document["input"]


def test_problem_from_stdin(monkeypatch, capsys):
    monkeypatch.setattr("sys.stdin", io.StringIO("ring Q[x]; ideal (x^2);"))
    assert main(["classify", "-"]) == 0
    assert "[classify]" in capsys.readouterr().out


def test_link_with_a_regular_sequence_flag(capsys):
    assert main(["link", str(PROBLEMS / "maximal-square.calg"), "--regseq", "x^2, y^2"]) == 0
    assert "link: x, y" in capsys.readouterr().out


def test_link_auto_ignores_the_sequence_in_the_file(tmp_path, capsys):
    problem = tmp_path / "square.calg"
    problem.write_text("ring Q[x,y]; ideal (x^2, x*y, y^2); regseq (x^2, x*y); analyze link;", encoding="utf-8")
    assert main(["link", str(problem)]) == 3
    assert "the sequence is not regular" in capsys.readouterr().err
    assert main(["link", str(problem), "--auto", "--format", "json"]) == 0
    document = json.loads(capsys.readouterr().out)
    assert sorted(document["analyses"]["link"]["link"]) == ["x", "y"]


def test_link_auto_and_regseq_are_exclusive():
    with pytest.raises(SystemExit):
        main(["link", str(PROBLEMS / "maximal-square.calg"), "--auto", "--regseq", "x^2, y^2"])


def test_parse_errors_exit_with_code_two(tmp_path, capsys):
    problem = tmp_path / "bad.calg"
    problem.write_text("ring Q[x,y]; ideal (x^2 + y);", encoding="utf-8")
    assert main(["classify", str(problem)]) == 2
    assert capsys.readouterr().err.startswith("Error: line 1")


def test_non_positive_flags_exit_with_code_three(capsys):
    assert main(["classify", str(PROBLEMS / "double-point.calg"), "--bound", "0"]) == 3
    assert "--bound must be positive" in capsys.readouterr().err


def test_failing_preconditions_exit_with_code_three(tmp_path):
    problem = tmp_path / "linear.calg"
    problem.write_text("ring Q[x,y]; ideal (x, y^2); analyze tate;", encoding="utf-8")
    assert main(["tate", str(problem)]) == 3


def test_missing_file_exits_with_code_one(tmp_path, capsys):
    assert main(["classify", str(tmp_path / "missing.calg")]) == 1
    assert capsys.readouterr().err.startswith("Error:")


def test_counterexample_exits_with_code_four(monkeypatch, capsys):
    section = Section("classify")
    section.verdict("probe", "implication", COUNTEREXAMPLE)
    monkeypatch.setattr(src.main, "run_analyses", lambda spec: AnalysisReport("ring Q[x];\n", [section]))
    assert main(["classify", str(PROBLEMS / "double-point.calg")]) == 4
    captured = capsys.readouterr()
    assert COUNTEREXAMPLE in captured.out
    assert COUNTEREXAMPLE in captured.err


def test_harness_command(capsys):
    assert main(["harness", str(PROBLEMS / "ci-x2-y3.calg")]) == 0
    assert "[harness]" in capsys.readouterr().out


def test_unknown_command_is_an_argparse_error():
    with pytest.raises(SystemExit):
        main(["frobnicate", "x.calg"])
