#!/usr/bin/env python3
"""
Smoke script to validate the application components on the problem corpus.
"""

from pathlib import Path

from src.parser.parser import echo_problem, parse_problem
from src.reports.harness import run_conjecture_harness
from src.reports.report import emit_report, run_analyses
from src.report_server.server import setup_report_server


def test_parser():
    """Parse every problem file and check the echo round trip."""
    print("Testing parser...")
    specs = []
    for path in sorted(Path("problems").glob("*.calg")):
        spec = parse_problem(path.read_text(encoding="utf-8"), path.stem)
        assert parse_problem(echo_problem(spec)) == spec, path.name
        specs.append(spec)
    print(f"Parsed {len(specs)} problems")
    return specs


def test_reports(specs):
    """Run the analyses and the harness on every problem."""
    print("Testing reports...")
    for spec in specs:
        report = run_analyses(spec)
        print(emit_report(report, "text", include_timing=True))
        harness = run_conjecture_harness(spec)
        assert not harness.counterexample, spec.name
        print(emit_report(harness, "text"))


def test_server():
    """Test the server setup."""
    print("Testing server setup...")
    server = setup_report_server("problems")
    print(f"Server setup successful with {len(server.reports)} reports")
    return server


if __name__ == "__main__":
    try:
        problems = test_parser()
        test_reports(problems)
        test_server()
        print("All tests passed!")
    except Exception as e:
        print(f"Test failed: {e}")
