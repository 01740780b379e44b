"""
Submodules of graded free modules over R, through sympy's distributed-module
Groebner bases.

Only the leading terms are used: the Hilbert series of F / N is the sum over
the components of the Hilbert series of R modulo the leading monomials found
there, shifted by the generator degree. Comparing two such numerators decides
whether a submodule found degree by degree is the whole of a kernel.
"""

import logging
from typing import Dict, List, Optional, Sequence

from sympy.polys.agca.modules import ModuleOrder
from sympy.polys.distributedmodules import sdm_LM, sdm_from_dict, sdm_groebner, sdm_nf_mora
from sympy.polys.domains import QQ
from sympy.polys.orderings import lex
from sympy.polys.rings import PolyElement

from src.groebner.ideal import Ideal, monomial_numerator
from src.poly.ring import Monomial

logger = logging.getLogger(__name__)

Numerator = Dict[int, int]


def module_order(base: Ideal) -> ModuleOrder:
    """Position over term, with the ring's own order inside a component."""
    return ModuleOrder(lex, base.ring.order, False)


def column_to_sdm(column: Sequence[PolyElement], order: ModuleOrder) -> list:
    terms: Dict[tuple, object] = {}
    for j, p in enumerate(column):
        for m, c in p.items():
            terms[(j,) + tuple(m)] = c
    return sdm_from_dict(terms, order)


def module_groebner_basis(base: Ideal, rank: int, columns: Sequence[Sequence[PolyElement]]) -> List[list]:
    """
    Standard basis of the submodule of R^rank spanned by the columns and I R^rank.

    Args:
        base: Ideal I; its Groebner basis enters every component
        rank: Rank of the ambient free module
        columns: Lists of `rank` polynomials

    Returns:
        Minimal standard basis in sympy's distributed-module form
    """
    order = module_order(base)
    gens = []
    for j in range(rank):
        for g in base.basis:
            gens.append(sdm_from_dict({(j,) + tuple(m): c for m, c in g.items()}, order))
    gens.extend(column_to_sdm(c, order) for c in columns)
    gens = [g for g in gens if g]
    if not gens:
        return []
    basis = sdm_groebner(gens, sdm_nf_mora, order, QQ)
    logger.debug("module groebner basis: rank %d, %d generators, %d basis elements", rank, len(gens), len(basis))
    return basis


def quotient_numerator(base: Ideal, degrees: Sequence[int], columns: Sequence[Sequence[PolyElement]]) -> Numerator:
    """
    N(t) with Hilbert series of F / (columns + I F) equal to N(t) / (1 - t)^n.

    Args:
        base: Ideal I
        degrees: Generator degrees of the free module F over R
        columns: Homogeneous elements of F

    Returns:
        {power of t: coefficient}; powers follow the generator degrees and may be negative
    """
    leading: List[List[Monomial]] = [[] for _ in degrees]
    nonzero = [c for c in columns if any(c)]
    if nonzero:
        for g in module_groebner_basis(base, len(degrees), nonzero):
            lm = sdm_LM(g)
            leading[lm[0]].append(tuple(lm[1:]))
    else:
        for component in leading:
            component.extend(base.leading_monomials)
    total: Numerator = {}
    for j, d in enumerate(degrees):
        for k, c in monomial_numerator(leading[j]).items():
            total[k + d] = total.get(k + d, 0) + c
    return {k: c for k, c in total.items() if c}


def subtract(a: Numerator, b: Numerator) -> Numerator:
    out = dict(a)
    for k, c in b.items():
        out[k] = out.get(k, 0) - c
    return {k: c for k, c in out.items() if c}


def multiply(a: Numerator, b: Numerator) -> Numerator:
    out: Numerator = {}
    for k, c in a.items():
        for l, e in b.items():
            out[k + l] = out.get(k + l, 0) + c * e
    return {k: c for k, c in out.items() if c}


def first_difference(a: Numerator, b: Numerator) -> Optional[int]:
    """
    Lowest degree where the two Hilbert series differ, or None.

    Dividing by (1 - t)^n keeps the lowest nonzero term of a - b in place.
    """
    diff = subtract(a, b)
    return min(diff) if diff else None
