"""
Engine defaults. Problem files and CLI flags override them via merged().
"""

from dataclasses import dataclass, replace
from typing import Optional


@dataclass(frozen=True)
class EngineConfig:
    """
    Bounds and seeds used by the computations.

    Attributes:
        bound: Homological bound D for resolvents and resolutions over R/I
        series_order: Truncation order N for Poincare and alpha series
        seed: Seed for every randomized search
        degree_cap: Hard ceiling on inspected internal degrees (None: (D+1)*d_max)
        degree_slack: Extra internal degrees inspected beyond a computed window
        hilbert_degree: Length of Hilbert-function prefixes used in comparisons
        module_bound: Resolution bound for modules over R/I
        attempt_budget: Candidates tried when searching regular sequences
        monomial_order: degrevlex, deglex or lex
    """

    bound: int = 6
    series_order: int = 40
    seed: int = 7
    degree_cap: Optional[int] = None
    degree_slack: int = 1
    hilbert_degree: int = 6
    module_bound: int = 8
    attempt_budget: int = 50
    monomial_order: str = "degrevlex"

    def merged(self, **overrides) -> "EngineConfig":
        """Return a copy with every non-None override applied."""
        return replace(self, **{k: v for k, v in overrides.items() if v is not None})


DEFAULT_CONFIG = EngineConfig()
