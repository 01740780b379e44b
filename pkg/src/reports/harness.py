"""
Conjecture harness: desk-scale probes of three implications whose
consequent is "I is a complete intersection".

  C1  pd_S(I/I^2) < oo            =>  CI
  C2  pd_S(Omega_{S/k}) < oo      =>  CI
  C3  T_i(S/R, S) = 0 for i >= 3  =>  CI

Each antecedent is probed within the configured bounds. A probe that holds
while I is not a complete intersection is a counterexample candidate; for
these statements that can only mean an engine bug.
"""

import logging
from typing import Optional

from src.config import DEFAULT_CONFIG, EngineConfig
from src.cotangent.cotangent import kaehler_module
from src.modules.modules import conormal_module, free_resolution
from src.parser.parser import ProblemSpec, echo_problem
from src.reports.report import COUNTEREXAMPLE, AnalysisReport, AnalysisRun, Section

logger = logging.getLogger(__name__)

CONSISTENT = "consistent"
VACUOUS = "vacuous (antecedent fails)"


def implication_status(antecedent: bool, consequent: bool) -> str:
    if not antecedent:
        return VACUOUS
    return CONSISTENT if consequent else COUNTEREXAMPLE


def run_conjecture_harness(spec: ProblemSpec, config: Optional[EngineConfig] = None,
                           probe_bound: Optional[int] = None) -> AnalysisReport:
    """
    Probe the three implications on one problem.

    Args:
        spec: Parsed problem
        config: Base configuration; the problem's overrides apply on top
        probe_bound: Resolution bound for the pd probes over S (default: D)

    Returns:
        AnalysisReport with a single "harness" section; its verdict values
        are the implication statuses
    """
    config = spec.config(config or DEFAULT_CONFIG)
    run = AnalysisRun(spec, config)
    bound = probe_bound or config.bound
    I = run.ideal
    ci = run.classification().complete_intersection
    section = Section("harness", {"complete_intersection": ci, "probe_bound": bound})
    report = AnalysisReport(echo_problem(spec), [section])

    _, conormal = free_resolution(conormal_module(I), bound, config)
    section.payload["C1"] = {"betti": conormal.totals(), "finite": conormal.complete}
    section.lines.append(f"C1: Betti numbers of I/I^2 over S {conormal.totals()}"
                         f"{'' if conormal.complete else ' (no end within the bound)'}")
    section.verdict("conormal module of finite projective dimension", "pd_S(I/I^2) < oo implies CI",
                    implication_status(conormal.complete, ci))

    omega = kaehler_module(I, config, bound)
    section.payload["C2"] = {"betti": omega.betti, "finite": omega.betti_complete}
    section.lines.append(f"C2: Betti numbers of Omega over S {omega.betti}"
                         f"{'' if omega.betti_complete else ' (no end within the bound)'}")
    section.verdict("Kaehler differentials of finite projective dimension", "pd_S(Omega_{S/k}) < oo implies CI",
                    implication_status(omega.betti_complete, ci))

    D = config.bound
    if D - 1 < 4:
        section.payload["C3"] = {"applicable": False}
        section.lines.append(f"C3: needs D - 1 >= 4, bound is {D}")
        report.caveats.append(f"C3 not probed: resolvent bound {D} too small")
    else:
        cotangent = run.cotangent()
        nonzero = [i for i in range(3, D) if not cotangent.is_zero(i)]
        first = nonzero[0] if nonzero else None
        section.payload["C3"] = {"applicable": True, "first_nonvanishing": first}
        section.lines.append(f"C3: first nonvanishing T_i with i >= 3: {first if first is not None else 'none'}")
        section.verdict("vanishing of higher cotangent modules", "T_i = 0 for 3 <= i <= D - 1 implies CI",
                        implication_status(first is None, ci))
        report.caveats.extend(cotangent.caveats)

    report.caveats.append("finite probes: antecedents are tested within the resolution bounds only")
    if report.counterexample:
        logger.error("counterexample candidate on %s", I)
    return report
