import json
import shutil
from pathlib import Path

import pytest

from src.parser.parser import parse_problem
from src.report_server.server import ReportServer, setup_report_server
from src.reports.report import run_analyses

PROBLEMS = Path(__file__).resolve().parent.parent / "problems"


@pytest.fixture(scope="module")
def client():
    spec = parse_problem("ring Q[x]; ideal (x^2);", "double point")
    server = ReportServer({"Double Point": run_analyses(spec)})
    return server.app.test_client()


def test_report_listing(client):
    response = client.get("/reports")
    assert response.status_code == 200
    assert response.mimetype == "text/html"
    assert "double-point" in response.get_data(as_text=True)


def test_json_and_text_reports(client):
    response = client.get("/reports/double-point.json")
    assert response.status_code == 200
    assert json.loads(response.get_data(as_text=True))["analyses"]["classify"]["complete_intersection"]
    text = client.get("/reports/double-point.txt")
    assert text.mimetype == "text/plain"
    assert "[resolve]" in text.get_data(as_text=True)


def test_unknown_report_is_not_found(client):
    assert client.get("/reports/nothing.json").status_code == 404
    assert client.get("/reports/nothing.txt").status_code == 404


def test_posted_problem_is_analysed(client):
    response = client.post("/analyze", data="ring Q[x,y]; ideal (x^2, y^3); analyze classify;")
    assert response.status_code == 200
    assert "classify" in json.loads(response.get_data(as_text=True))["analyses"]


def test_posted_problem_errors(client):
    bad = client.post("/analyze", data="ring Q[x,y]; ideal (x^2 + y);")
    assert bad.status_code == 400
    assert bad.get_data(as_text=True).startswith("Error: line 1")
    rejected = client.post("/analyze", data="ring Q[x,y]; ideal (x, y^2); analyze tate;")
    assert rejected.status_code == 422


def test_directory_loading_skips_broken_files(tmp_path):
    shutil.copy(PROBLEMS / "x2-xy-y3.calg", tmp_path)
    (tmp_path / "broken.calg").write_text("ring Q[x]; ideal (x^2 + 1);", encoding="utf-8")
    server = setup_report_server(str(tmp_path))
    assert list(server.reports) == ["x2-xy-y3"]
