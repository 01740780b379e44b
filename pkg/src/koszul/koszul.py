"""
Koszul complexes and the products of their homology classes.
"""

import logging
from dataclasses import dataclass
from itertools import combinations
from typing import List, Optional, Sequence, Tuple

from sympy.polys.rings import PolyElement

from src.config import DEFAULT_CONFIG, EngineConfig
from src.errors import StructuralError
from src.groebner.graded import GradedMatrix
from src.groebner.ideal import Ideal
from src.modules.modules import (ChainComplex, PresentedModule, change_base, homology_generators, homology_module)
from src.poly.ring import PolyRing, is_homogeneous, ring_of

logger = logging.getLogger(__name__)


def _subset_sign(S: Tuple[int, ...], T: Tuple[int, ...]) -> int:
    """Sign of e_S ^ e_T rewritten with sorted indices."""
    inversions = sum(1 for s in S for t in T if s > t)
    return -1 if inversions % 2 else 1


def koszul_complex(gens: Sequence[PolyElement], ring: Optional[PolyRing] = None) -> ChainComplex:
    """
    The Koszul complex on gens over R.

    Args:
        gens: Nonzero homogeneous polynomials a_1..a_m
        ring: Ambient ring, needed only when gens is empty

    Returns:
        Complex with K_j free on the j-subsets of {1..m} and
        d(e_S) = sum_k (-1)^k a_{S_k} e_{S - S_k}
    """
    if ring is None:
        if not gens:
            raise StructuralError("an empty Koszul complex needs its ring")
        ring = ring_of(gens[0])
    for g in gens:
        if not g or not is_homogeneous(g):
            raise StructuralError("Koszul generators must be nonzero and homogeneous")
    R = Ideal.zero(ring)
    degs = [sum(g.LM) for g in gens]
    m = len(gens)
    subsets = [list(combinations(range(m), j)) for j in range(m + 1)]
    diffs = []
    for j in range(1, m + 1):
        rows = {S: k for k, S in enumerate(subsets[j - 1])}
        entries = [[ring.zero] * len(subsets[j]) for _ in subsets[j - 1]]
        for c, S in enumerate(subsets[j]):
            for pos, s in enumerate(S):
                entries[rows[S[:pos] + S[pos + 1:]]][c] = gens[s] if pos % 2 == 0 else -gens[s]
        diffs.append(GradedMatrix(R, entries, [sum(degs[s] for s in S) for S in subsets[j - 1]],
                                  [sum(degs[s] for s in S) for S in subsets[j]]))
    return ChainComplex(R, diffs, degrees0=[0])


def wedge_vectors(u: Sequence[PolyElement], v: Sequence[PolyElement], p: int, q: int, m: int) -> List[PolyElement]:
    """Product of an element of K_p and one of K_q in K_{p+q}."""
    ring = (list(u) + list(v))[0].ring
    source_p = list(combinations(range(m), p))
    source_q = list(combinations(range(m), q))
    target = {S: k for k, S in enumerate(combinations(range(m), p + q))}
    out = [ring.zero] * len(target)
    for a, S in enumerate(source_p):
        if not u[a]:
            continue
        for b, T in enumerate(source_q):
            if not v[b] or set(S) & set(T):
                continue
            k = target[tuple(sorted(S + T))]
            out[k] = out[k] + u[a] * v[b] * _subset_sign(S, T)
    return out


@dataclass
class KoszulHomology:
    """H_i of the Koszul complex, with the products of 1-cycles when i = 2."""

    index: int
    module: PresentedModule
    cycles: GradedMatrix
    products: Optional[GradedMatrix] = None
    quotient: Optional[PresentedModule] = None


def koszul_homology_algebra(gens: Sequence[PolyElement], i: int,
                            config: EngineConfig = DEFAULT_CONFIG) -> KoszulHomology:
    """
    H_i of the Koszul complex on gens as an S-module, S = R/(gens).

    Args:
        gens: Minimal generators of I
        i: Homological degree
        config: Engine configuration

    Returns:
        KoszulHomology; for i = 2 also the span of the products z z' of the
        chosen 1-cycles and the quotient H_2 / H_1^2
    """
    K = koszul_complex(gens)
    R = K.base
    I = Ideal(R.ring, gens)
    slack = config.degree_slack
    outgoing = K.differential(i) if i >= 1 else None
    incoming = K.differential(i + 1)
    degrees = K.degrees(i)
    cycles = homology_generators(R, degrees, outgoing, incoming, slack=slack)
    module = change_base(homology_module(R, degrees, outgoing, incoming, slack), I)
    result = KoszulHomology(i, module, cycles)
    if i == 2:
        ones = homology_generators(R, K.degrees(1), K.differential(1), K.differential(2), slack=slack)
        m = len(gens)
        columns, col_degrees = [], []
        for a, b in combinations(range(ones.ncols), 2):
            prod = wedge_vectors(ones.column(a), ones.column(b), 1, 1, m)
            if any(prod):
                columns.append(prod)
                col_degrees.append(ones.col_degrees[a] + ones.col_degrees[b])
        products = GradedMatrix.from_columns(R, columns, degrees, col_degrees)
        relations = incoming.hstack(products) if incoming is not None else products
        result.products = products
        result.quotient = change_base(homology_module(R, degrees, outgoing, relations, slack), I)
        logger.info("Koszul H2: %d generators, %d products of 1-cycles", cycles.ncols, products.ncols)
    return result
