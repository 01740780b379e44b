"""
Predicates on homogeneous ideals and the length and duality checks built on
Ext, exterior powers and duals.
"""

import logging
from dataclasses import asdict, dataclass
from typing import Dict, List, Optional, Sequence

from src.config import DEFAULT_CONFIG, EngineConfig
from src.errors import PreconditionError
from src.groebner.ideal import Ideal, height, krull_dimension
from src.modules.modules import (UNDETERMINED, PresentedModule, annihilator, change_base, conormal_module,
                                 dual_module, euler_rank, exterior_power, ext_module, free_resolution,
                                 is_free_cyclic, module_length, quotient_by_element, quotient_module)

logger = logging.getLogger(__name__)


@dataclass
class IdealClassification:
    """Invariants of I with the five predicates."""

    num_generators: int
    height: int
    projective_dimension: Optional[int]
    betti: List[int]
    complete_intersection: bool
    almost_complete_intersection: bool
    perfect: bool
    gorenstein: bool
    quasi_gorenstein: bool
    canonical_generators: int

    def to_dict(self) -> Dict[str, object]:
        return asdict(self)


def classify_ideal(I: Ideal, config: EngineConfig = DEFAULT_CONFIG) -> IdealClassification:
    """
    Classify a proper homogeneous ideal.

    Args:
        I: Proper homogeneous ideal
        config: Engine configuration

    Returns:
        IdealClassification with mu(I), height, pd_R(R/I) and the predicates
    """
    if I.is_unit():
        raise PreconditionError("the unit ideal cannot be classified")
    mu = len(I.minimal_generators())
    g = height(I)
    _, betti = free_resolution(quotient_module(I), I.ring.n + 2, config)
    pd = betti.length if betti.complete else None
    totals = betti.totals()
    perfect = pd == g
    gorenstein = perfect and totals[-1] == 1
    canonical = ext_module(I, g, config)
    canonical_generators = canonical.num_generators()
    quasi = canonical_generators == 1 and annihilator(canonical, config).same_as(I)
    result = IdealClassification(
        num_generators=mu,
        height=g,
        projective_dimension=pd,
        betti=totals,
        complete_intersection=mu == g,
        almost_complete_intersection=mu <= g + 1,
        perfect=perfect,
        gorenstein=gorenstein,
        quasi_gorenstein=quasi,
        canonical_generators=canonical_generators,
    )
    logger.info("classified %s: mu=%d height=%d pd=%s", I, mu, g, pd)
    return result


def artinian_length(J: Ideal) -> int:
    total, d = 0, 0
    while True:
        h = J.hilbert_function(d)
        if h == 0:
            return total
        total += h
        d += 1


def cm_length_criterion(M: PresentedModule, sop: Sequence, rank: Optional[int] = None,
                        config: EngineConfig = DEFAULT_CONFIG) -> bool:
    """
    l(M/(s)M) = rank(M) * l(S/(s)S) for a system of parameters s of S.

    Args:
        M: Module over S = R/I
        sop: Homogeneous system of parameters of S
        rank: Rank of M; the Euler characteristic of its resolution by default
        config: Engine configuration

    Returns:
        True iff the length equation holds
    """
    I = M.base
    ring = I.ring
    sop = list(sop)
    J = Ideal(ring, list(I.generators) + sop)
    if len(sop) != krull_dimension(I) or krull_dimension(J) > 0:
        raise PreconditionError("the given sequence is not a system of parameters of S")
    if rank is None:
        rank = euler_rank(M, config=config)
        if rank == UNDETERMINED:
            raise PreconditionError("the module has no Euler rank within the resolution bound")
    quotient = M
    for s in sop:
        quotient = quotient_by_element(quotient, s)
    lhs = module_length(quotient, config)
    rhs = rank * artinian_length(J)
    logger.debug("length criterion: %s against %s", lhs, rhs)
    return lhs == rhs


def top_wedge_dual_check(I: Ideal, config: EngineConfig = DEFAULT_CONFIG) -> bool:
    """Whether the dual of the top exterior power of I/I^2 is free cyclic over S."""
    g = height(I)
    dual = dual_module(exterior_power(conormal_module(I), g), config)
    return is_free_cyclic(dual, config.hilbert_degree)


@dataclass
class CanonicalComparison:
    canonical: List[int]
    wedge_dual: List[int]

    @property
    def agree(self) -> bool:
        return self.canonical == self.wedge_dual


def canonical_dual_check(I: Ideal, config: EngineConfig = DEFAULT_CONFIG) -> CanonicalComparison:
    """Aligned Hilbert prefixes of Ext^g_R(S, R) and of the dual of the top exterior power of I/I^2."""
    g = height(I)
    length = config.hilbert_degree + 1
    canonical = change_base(ext_module(I, g, config), I)
    dual = dual_module(exterior_power(conormal_module(I), g), config)
    return CanonicalComparison(canonical.aligned_hilbert(length), dual.aligned_hilbert(length))
