import dataclasses
import json
from fractions import Fraction
from pathlib import Path

import pytest

from src import __version__
from src.errors import PreconditionError
from src.parser.parser import ANALYSES, parse_problem
from src.reports.harness import CONSISTENT, VACUOUS, implication_status, run_conjecture_harness
from src.reports.report import COUNTEREXAMPLE, AnalysisReport, Section, emit_report, run_analyses

PROBLEMS = Path(__file__).resolve().parent.parent / "problems"


def load(name):
    return parse_problem((PROBLEMS / f"{name}.calg").read_text(encoding="utf-8"), name)


@pytest.fixture(scope="module")
def double_point_report():
    return run_analyses(load("double-point"))


def test_every_analysis_runs_on_a_hypersurface(double_point_report):
    report = double_point_report
    assert [s.name for s in report.sections] == list(ANALYSES)
    assert not report.counterexample
    for section in report.sections:
        for verdict in section.verdicts:
            if isinstance(verdict.value, bool):
                assert verdict.value, (section.name, verdict.statement)
    assert report.section("link").payload["degenerate"]
    assert report.section("series").payload["vanishing_index"] == 3
    assert report.section("deviations").payload["eps"] == [1, 1, 0, 0, 0, 0]


def test_text_report_layout(double_point_report):
    text = emit_report(double_point_report)
    lines = text.splitlines()
    assert lines[0] == f"calg report (engine {__version__})"
    assert lines[1] == "input:"
    assert "  ring Q[x];" in lines
    assert "[classify]" in lines
    assert "  I is a complete intersection: yes  (complete intersection criterion)" in lines


def test_json_report_is_deterministic(double_point_report):
    first = emit_report(double_point_report, "json")
    assert first == emit_report(double_point_report, "json")
    document = json.loads(first)
    assert sorted(document) == ["analyses", "caveats", "input", "verdicts", "version"]
    assert document["analyses"]["resolve"]["betti"] == {"0,0": 1, "1,2": 1}
    assert "timings" in json.loads(emit_report(double_point_report, "json", include_timing=True))


def test_report_without_analyses_has_only_the_header():
    spec = dataclasses.replace(load("ci-x2-y3"), analyses=())
    report = run_analyses(spec)
    lines = emit_report(report).splitlines()
    assert lines[:2] == [f"calg report (engine {__version__})", "input:"]
    assert all(line.startswith("  ") for line in lines[2:])
    assert json.loads(emit_report(report, "json"))["analyses"] == {}


def test_rationals_are_written_as_strings():
    report = AnalysisReport("ring Q[x];\n", [Section("series", {"value": Fraction(1, 2)})])
    assert json.loads(emit_report(report, "json"))["analyses"]["series"]["value"] == "1/2"


def test_unknown_format_is_rejected(double_point_report):
    with pytest.raises(PreconditionError):
        emit_report(double_point_report, "yaml")


def test_counterexample_verdicts_are_flagged():
    section = Section("harness")
    section.verdict("probe", "implication", COUNTEREXAMPLE)
    assert AnalysisReport("", [section]).counterexample


def test_classification_and_link_sections_for_the_square_of_the_maximal_ideal():
    spec = dataclasses.replace(load("maximal-square"), analyses=("classify", "link"))
    report = run_analyses(spec)
    classify = report.section("classify").payload
    assert classify["almost_complete_intersection"] and not classify["gorenstein"]
    link = report.section("link").payload
    assert link["link"] == ["x", "y"]
    assert link["length_transfer"] == [0, 0]


def test_resolvent_steps_cut_by_the_degree_cap_are_reported():
    spec = dataclasses.replace(load("maximal-square"), analyses=("tate",), degree_cap=2)
    report = run_analyses(spec)
    assert report.section("tate").payload["checks"]["window_limited"]
    assert "window-limited: resolvent steps 2 leave homology above internal degree 2" in report.caveats


def test_implication_status():
    assert implication_status(False, False) == VACUOUS
    assert implication_status(True, True) == CONSISTENT
    assert implication_status(True, False) == COUNTEREXAMPLE


def test_harness_on_a_complete_intersection():
    report = run_conjecture_harness(load("ci-x2-y3"))
    harness = report.section("harness")
    values = [v.value for v in harness.verdicts]
    assert values[0] == CONSISTENT
    assert values[2] == CONSISTENT
    assert harness.payload["C3"]["first_nonvanishing"] is None
    assert not report.counterexample


def test_harness_on_an_almost_complete_intersection():
    report = run_conjecture_harness(load("maximal-square"))
    harness = report.section("harness")
    assert harness.verdicts[0].value == VACUOUS
    assert harness.payload["C3"]["first_nonvanishing"] == 4
    assert not report.counterexample


def test_harness_with_a_small_bound_skips_the_vanishing_probe():
    spec = dataclasses.replace(load("ci-x2-y3"), bound=4)
    report = run_conjecture_harness(spec)
    assert report.section("harness").payload["C3"] == {"applicable": False}
    assert any(c.startswith("C3 not probed") for c in report.caveats)
