"""
Report component: runs the requested analyses on a problem and renders the
results as text or JSON.
"""

import json
import logging
import time
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Dict, List, Optional

from src import __version__
from src.config import DEFAULT_CONFIG, EngineConfig
from src.cotangent.cotangent import (CotangentReport, cotangent_modules, deviation_identity, filtered_homology_check,
                                     linear_part_kernel_check, t3_cross_check)
from src.errors import PreconditionError
from src.groebner.ideal import Ideal, height, krull_dimension
from src.koszul.koszul import koszul_homology_algebra
from src.koszul.tate import TateResolvent, minimal_resolvent, verify_resolvent
from src.linkage.linkage import cm_transfer_lengths, find_regular_sequence, link
from src.modules.classify import IdealClassification, classify_ideal
from src.modules.modules import depth, free_resolution, quotient_module, residue_field
from src.parser.parser import ANALYSES, ProblemSpec, echo_problem
from src.series.analysis import alpha_coefficients, ci_series_test, deviations, poincare_from_deviations

logger = logging.getLogger(__name__)


@dataclass
class Verdict:
    """A checked statement with the short tag of the result it comes from."""

    tag: str
    statement: str
    value: object

    def to_dict(self) -> Dict[str, object]:
        return {"tag": self.tag, "statement": self.statement, "value": self.value}


@dataclass
class Section:
    name: str
    payload: Dict[str, object] = field(default_factory=dict)
    lines: List[str] = field(default_factory=list)
    verdicts: List[Verdict] = field(default_factory=list)

    def verdict(self, tag: str, statement: str, value: object) -> None:
        self.verdicts.append(Verdict(tag, statement, value))


@dataclass
class AnalysisReport:
    """Per-analysis sections with caveats, timings, the engine version and the input echo."""

    echo: str
    sections: List[Section] = field(default_factory=list)
    caveats: List[str] = field(default_factory=list)
    timings: Dict[str, float] = field(default_factory=dict)
    version: str = __version__

    def section(self, name: str) -> Optional[Section]:
        return next((s for s in self.sections if s.name == name), None)

    @property
    def counterexample(self) -> bool:
        return any(v.value == COUNTEREXAMPLE for s in self.sections for v in s.verdicts)

    def to_dict(self, include_timing: bool = False) -> Dict[str, object]:
        result = {
            "version": self.version,
            "input": self.echo,
            "analyses": {s.name: s.payload for s in self.sections},
            "verdicts": {s.name: [v.to_dict() for v in s.verdicts] for s in self.sections},
            "caveats": list(self.caveats),
        }
        if include_timing:
            result["timings"] = dict(self.timings)
        return result


COUNTEREXAMPLE = "COUNTEREXAMPLE CANDIDATE"


class AnalysisRun:
    """
    Shared state of one run: the ideal, its config and lazily built
    resolvent, classification and cotangent report.
    """

    def __init__(self, spec: ProblemSpec, config: EngineConfig):
        self.spec = spec
        self.config = config
        self.ideal: Ideal = spec.ideal()
        self._resolvent: Optional[TateResolvent] = None
        self._classification: Optional[IdealClassification] = None
        self._cotangent: Optional[CotangentReport] = None

    @property
    def bound(self) -> int:
        return self.config.bound

    def resolvent(self) -> TateResolvent:
        if self._resolvent is None:
            self._resolvent = minimal_resolvent(self.ideal, self.bound, self.config)
        return self._resolvent

    def classification(self) -> IdealClassification:
        if self._classification is None:
            self._classification = classify_ideal(self.ideal, self.config)
        return self._classification

    def cotangent(self) -> CotangentReport:
        if self._cotangent is None:
            self._cotangent = cotangent_modules(self.ideal, self.bound, self.config, self.resolvent())
        return self._cotangent


def _classify(run: AnalysisRun) -> Section:
    c = run.classification()
    section = Section("classify", c.to_dict())
    pd = "unbounded" if c.projective_dimension is None else c.projective_dimension
    section.lines.append(f"mu(I) = {c.num_generators}, height = {c.height}, pd_R(R/I) = {pd}")
    section.lines.append(f"Betti numbers of R/I: {c.betti}")
    section.lines.append(f"generators of the canonical module: {c.canonical_generators}")
    section.verdict("complete intersection criterion", "I is a complete intersection", c.complete_intersection)
    section.verdict("almost complete intersection", "mu(I) <= height(I) + 1", c.almost_complete_intersection)
    section.verdict("perfection", "pd_R(R/I) = height(I)", c.perfect)
    section.verdict("Gorenstein top Betti number", "I is Gorenstein", c.gorenstein)
    section.verdict("quasi-Gorenstein canonical module", "Ext^g_R(S, R) is cyclic with annihilator I",
                    c.quasi_gorenstein)
    return section


def _resolve(run: AnalysisRun) -> Section:
    I = run.ideal
    n = I.ring.n
    _, betti = free_resolution(quotient_module(I), n + 2, run.config)
    section = Section("resolve", {"betti": betti.to_dict(), "totals": betti.totals(), "complete": betti.complete})
    section.lines.extend(betti.to_text().splitlines())
    if betti.complete:
        d = depth(quotient_module(I), run.config.seed)
        section.payload["depth"] = d
        section.lines.append(f"depth of R/I: {d}")
        section.verdict("Auslander-Buchsbaum equality", "pd_R(R/I) + depth(R/I) = n", betti.length + d == n)
    else:
        section.lines.append(f"resolution not finished within {n + 2} steps")
    return section


def _koszul(run: AnalysisRun) -> Section:
    gens = run.ideal.minimal_generators()
    upto = run.config.hilbert_degree + max((sum(g.LM) for g in gens), default=0)
    section = Section("koszul")
    for i in range(1, min(3, len(gens)) + 1):
        H = koszul_homology_algebra(gens, i, run.config)
        module = H.module.minimal()
        section.payload[f"H{i}"] = {"mu": module.num_generators(), "hilbert": module.hilbert_prefix(upto)}
        section.lines.append(f"H{i}: mu = {module.num_generators()}, hilbert {module.hilbert_prefix(upto)}")
        if H.quotient is not None:
            quotient = H.quotient.minimal()
            section.payload["H2/H1^2"] = {"mu": quotient.num_generators(), "hilbert": quotient.hilbert_prefix(upto)}
            section.lines.append(f"H2/H1^2: mu = {quotient.num_generators()}")
    return section


def _tate(run: AnalysisRun) -> Section:
    X = run.resolvent()
    flags = verify_resolvent(X)
    section = Section("tate", {"counts": X.counts(), "windows": {str(i): w for i, w in sorted(X.windows.items())},
                               "checks": flags})
    section.lines.append(f"variables per degree: {X.counts()}")
    section.lines.extend(X.dump().splitlines())
    section.verdict("resolvent acyclicity", "the resolvent is acyclic and minimal below the bound",
                    all(v for k, v in flags.items() if k != "window_limited"))
    return section


def _cotangent(run: AnalysisRun) -> Section:
    if run.bound < 3:
        raise PreconditionError("cotangent modules need a resolvent bound D >= 3")
    report = run.cotangent()
    c = run.classification()
    section = Section("cotangent", report.to_dict())
    top = max(report.entries)
    for i, entry in sorted(report.entries.items()):
        state = "0" if entry.zero else f"mu = {entry.mu}, hilbert {entry.hilbert}"
        section.lines.append(f"T{i}: {state}")
    vanishing = all(report.is_zero(i) for i in range(2, top + 1))
    section.verdict("syzygetic ideal", "T2 = 0", report.is_zero(2))
    section.verdict("complete intersection vanishing", "complete intersection implies T_i = 0 for i >= 2",
                    not c.complete_intersection or vanishing)
    if 3 in report.entries:
        section.verdict("T3 from Koszul homology", "T3 agrees with H2/H1^2",
                        t3_cross_check(run.ideal, run.config, report))
    if c.almost_complete_intersection and not c.complete_intersection and 3 in report.entries:
        section.verdict("almost complete intersection criterion", "T3 = 0", report.is_zero(3))
        if 5 in report.entries:
            section.verdict("almost complete intersection criterion", "T4 and T5 are not both zero",
                            not (report.is_zero(4) and report.is_zero(5)))
    if c.perfect and c.height == 2 and not c.complete_intersection and 4 in report.entries:
        section.verdict("height-two perfect vanishing", "T3 = 0 and T4 != 0",
                        report.is_zero(3) and not report.is_zero(4))
    filtered = filtered_homology_check(report)
    if filtered:
        section.verdict("filtered homology comparison", "T_{i+1} matches H_i(F_{i-1}X)", all(filtered.values()))
    section.verdict("linear part kernel comparison", "T_i matches the kernel of eta_{i-1}",
                    all(linear_part_kernel_check(report).values()))
    return section


def _deviations(run: AnalysisRun) -> Section:
    X = run.resolvent()
    dev = deviations(X)
    identity = deviation_identity(X)
    D = run.bound
    P = poincare_from_deviations(dev, D)
    b = min(D, run.config.module_bound)
    _, oracle = free_resolution(residue_field(run.ideal), b, run.config, decide_end=False)
    totals = oracle.totals()
    expected = [totals[i] if i < len(totals) else 0 for i in range(b + 1)]
    product = [int(P[i]) for i in range(b + 1)]
    section = Section("deviations", {"eps": dev.eps, "horizon": dev.horizon, "poincare": P.to_strings(),
                                     "resolution": expected})
    section.lines.append(f"eps: {dev.eps}")
    section.lines.append(f"Poincare series of k: {product}")
    section.verdict("deviation identity", "eps_{i+1} = rank L_i = dim T_i(S/R, k)",
                    all(r == d for r, d in identity.values())
                    and all(dev[i + 1] == identity[i][0] for i in range(1, D)))
    section.verdict("product formula", "Betti numbers of k agree with the product over deviations",
                    product == expected)
    return section


def _series(run: AnalysisRun) -> Section:
    D = run.bound
    verdict = ci_series_test(run.ideal, D, run.config, run.resolvent())
    payload = {
        "eps": verdict.deviations.eps,
        "vanishing_index": verdict.vanishing_index,
        "complete_intersection": verdict.is_ci_certified,
        "zero_pattern": verdict.mahler_flag,
        "caveats": list(verdict.caveats),
    }
    if verdict.mahler is not None:
        payload["mahler"] = verdict.mahler.describe()
    horizon = verdict.deviations.horizon
    top = min(run.config.series_order, 2 * horizon)
    payload["alpha"] = alpha_coefficients(verdict.deviations, top).to_strings()
    section = Section("series", payload)
    section.lines.append(f"first vanishing deviation past eps_2: {verdict.vanishing_index}")
    section.lines.append(f"alpha zero pattern: {verdict.mahler_flag}")
    section.verdict("deviation vanishing test", "some eps_i = 0 with i >= 3 exactly for complete intersections",
                    verdict.is_ci_certified)
    section.verdict("divisor-sum zero pattern", "zeros of alpha", verdict.mahler_flag)
    return section


def _link(run: AnalysisRun) -> Section:
    I = run.ideal
    x = run.spec.regseq
    if x is None:
        x = find_regular_sequence(I, height(I), run.config.seed, run.config)
    result = link(I, x, run.config)
    section = Section("link", result.to_dict())
    section.lines.append("sequence: " + ", ".join(result.to_dict()["sequence"]))
    section.lines.append("link: " + ", ".join(result.to_dict()["link"]))
    if result.degenerate:
        section.lines.append("degenerate: I equals the ideal of the sequence")
    elif result.resolution is not None:
        section.lines.extend(result.resolution.betti_table().to_text().splitlines())
    holds = result.degenerate or (result.grade_equal and result.double_link_recovers and result.J_perfect
                                  and result.cone_matches_direct)
    section.verdict("linkage of perfect ideals", "J is perfect of the same grade, (x):J = I, cone resolves R/J",
                    holds)
    if krull_dimension(I) == 0 and not result.degenerate:
        transfer = cm_transfer_lengths(I, x, run.config)
        section.payload["length_transfer"] = [transfer.lhs, transfer.rhs]
        section.verdict("length transfer under linkage", "l(I (x) K_S) - g l(S) is preserved", transfer.equal)
    return section


RUNNERS: Dict[str, Callable[[AnalysisRun], Section]] = {
    "classify": _classify,
    "resolve": _resolve,
    "koszul": _koszul,
    "tate": _tate,
    "cotangent": _cotangent,
    "deviations": _deviations,
    "series": _series,
    "link": _link,
}


def run_analyses(spec: ProblemSpec, config: Optional[EngineConfig] = None) -> AnalysisReport:
    """
    Run every analysis the problem asks for.

    Args:
        spec: Parsed problem
        config: Base configuration; the problem's overrides are applied on top

    Returns:
        AnalysisReport with one section per analysis, in canonical order
    """
    config = spec.config(config or DEFAULT_CONFIG)
    run = AnalysisRun(spec, config)
    report = AnalysisReport(echo_problem(spec))
    for name in ANALYSES:
        if name not in spec.analyses:
            continue
        start = time.perf_counter()
        section = RUNNERS[name](run)
        report.timings[name] = time.perf_counter() - start
        report.sections.append(section)
        logger.info("analysis %s finished in %.2fs", name, report.timings[name])
    if run._resolvent is not None and run._resolvent.window_limited:
        steps = ", ".join(str(i) for i in run._resolvent.window_limited)
        report.caveats.append(f"window-limited: resolvent steps {steps} leave homology above internal degree "
                              f"{run._resolvent.cap}")
    if run._cotangent is not None:
        report.caveats.extend(run._cotangent.caveats)
    series = report.section("series")
    if series is not None:
        report.caveats.extend(series.payload["caveats"])
    return report


def _encode(value):
    if isinstance(value, Fraction):
        return str(value)
    raise TypeError(f"cannot serialize {type(value).__name__}")


def _format_value(value: object) -> str:
    if isinstance(value, bool):
        return "yes" if value else "no"
    return str(value)


def emit_report(report: AnalysisReport, format: str = "text", include_timing: bool = False) -> str:
    """
    Render a report.

    Args:
        report: The report
        format: "text" or "json"
        include_timing: Add per-analysis timings

    Returns:
        The document; JSON is stable-keyed and carries exact rationals as strings
    """
    if format == "json":
        return json.dumps(report.to_dict(include_timing), sort_keys=True, indent=2, default=_encode) + "\n"
    if format != "text":
        raise PreconditionError(f"unknown report format '{format}'")
    lines = [f"calg report (engine {report.version})", "input:"]
    lines.extend("  " + line for line in report.echo.splitlines())
    for section in report.sections:
        lines.append("")
        lines.append(f"[{section.name}]")
        lines.extend("  " + line for line in section.lines)
        for v in section.verdicts:
            lines.append(f"  {v.statement}: {_format_value(v.value)}  ({v.tag})")
        if include_timing and section.name in report.timings:
            lines.append(f"  time: {report.timings[section.name]:.2f}s")
    if report.caveats:
        lines.append("")
        lines.append("caveats:")
        lines.extend(f"  - {c}" for c in report.caveats)
    return "\n".join(lines) + "\n"
