"""
Report server component for publishing analysis reports.
Uses Flask to serve text and JSON reports of a directory of problem files.
"""

import logging
import re
from html import escape
from pathlib import Path
from typing import Dict, Optional
from urllib.parse import quote

from flask import Flask, Response, request

from src.config import DEFAULT_CONFIG, EngineConfig
from src.errors import CalgError, ParseError
from src.parser.parser import parse_problem
from src.reports.report import AnalysisReport, emit_report, run_analyses

logger = logging.getLogger(__name__)


class ReportServer:
    """
    Flask server holding analysed problems keyed by slug.
    """

    def __init__(self, reports: Dict[str, AnalysisReport] = None, config: EngineConfig = DEFAULT_CONFIG):
        """
        Initialize server with reports.

        Args:
            reports: Reports keyed by problem name
            config: Configuration used for POST /analyze
        """
        self.app = Flask(__name__)
        self.config = config
        self.reports: Dict[str, AnalysisReport] = {}
        for name, report in (reports or {}).items():
            self.add_report(name, report)
        self.setup_routes()

    def _create_slug(self, name: str) -> str:
        """Create a URL-safe slug from a problem name."""
        slug = re.sub(r'[^\w\s-]', '', name).strip().replace(' ', '-').lower()
        return quote(slug, safe='')

    def add_report(self, name: str, report: AnalysisReport) -> str:
        slug = self._create_slug(name)
        self.reports[slug] = report
        return slug

    def load_directory(self, directory: str) -> int:
        """
        Analyse every *.calg problem file of a directory.

        Args:
            directory: Directory of problem files

        Returns:
            Number of reports loaded; files that fail are logged and skipped
        """
        loaded = 0
        for path in sorted(Path(directory).glob("*.calg")):
            try:
                spec = parse_problem(path.read_text(encoding="utf-8"), path.stem)
                self.add_report(path.stem, run_analyses(spec, self.config))
                loaded += 1
            except CalgError as e:
                logger.warning("skipping %s: %s", path.name, e)
        logger.info("loaded %d reports from %s", loaded, directory)
        return loaded

    def setup_routes(self):
        """Set up Flask routes."""

        @self.app.route('/reports')
        def list_reports():
            """List available reports."""
            base_url = request.host_url.rstrip('/')
            html = "<h1>Analysis reports</h1><ul>"
            for slug in sorted(self.reports):
                analyses = ", ".join(s.name for s in self.reports[slug].sections)
                html += f'''
            <li>
                <strong>{escape(slug)}</strong> ({escape(analyses)})<br>
                <a href="{base_url}/reports/{slug}.txt">text</a> |
                <a href="{base_url}/reports/{slug}.json">json</a>
            </li>
            '''
            html += "</ul>"
            return Response(html, mimetype='text/html')

        @self.app.route('/reports/<slug>.json')
        def get_json_report(slug: str):
            report = self.reports.get(slug)
            if report is None:
                return Response("Report not found", 404)
            return Response(emit_report(report, "json"), mimetype='application/json')

        @self.app.route('/reports/<slug>.txt')
        def get_text_report(slug: str):
            report = self.reports.get(slug)
            if report is None:
                return Response("Report not found", 404)
            return Response(emit_report(report, "text"), mimetype='text/plain')

        @self.app.route('/analyze', methods=['POST'])
        def analyze():
            """Analyse the problem text in the request body and return its JSON report."""
            text = request.get_data(as_text=True)
            try:
                report = run_analyses(parse_problem(text, "posted"), self.config)
            except CalgError as e:
                status = 400 if isinstance(e, ParseError) else 422
                logger.info("rejected posted problem: %s", e)
                return Response(f"Error: {e}\n", status, mimetype='text/plain')
            return Response(emit_report(report, "json"), mimetype='application/json')

    def run(self, host: str = '0.0.0.0', port: int = 5000):
        """
        Run the Flask server.

        Args:
            host: Host to bind to
            port: Port to listen on
        """
        logger.info("serving reports at http://%s:%d/reports", host, port)
        self.app.run(host=host, port=port)


def setup_report_server(directory: Optional[str] = None, config: EngineConfig = DEFAULT_CONFIG) -> ReportServer:
    """
    Convenience function to set up the report server.

    Args:
        directory: Directory of problem files to analyse up front
        config: Engine configuration

    Returns:
        Configured ReportServer instance
    """
    server = ReportServer(config=config)
    if directory is not None:
        server.load_directory(directory)
    return server
