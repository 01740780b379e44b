"""
Linkage of perfect ideals: regular sequences inside I, the link J = (x) : I,
its resolution from the mapping cone of K(x) -> F, and short linkage chains.
"""

import logging
import random
from dataclasses import dataclass, field
from itertools import combinations
from typing import List, Optional, Sequence

from sympy.polys.rings import PolyElement

from src.config import DEFAULT_CONFIG, EngineConfig
from src.errors import InvariantError, PreconditionError
from src.groebner.colon import ideal_quotient
from src.groebner.graded import GradedMatrix, devectorize, vectorize
from src.groebner.ideal import Ideal, height, krull_dimension
from src.groebner.linalg import solve
from src.koszul.koszul import koszul_complex
from src.modules.classify import artinian_length, classify_ideal
from src.modules.modules import (ChainComplex, change_base, conormal_module, ext_module,
                                 free_resolution, homology_at, homology_generators, module_length,
                                 quotient_module, tensor_product)
from src.poly.ring import format_poly, monomials_of_degree

logger = logging.getLogger(__name__)


def is_regular_sequence(xs: Sequence[PolyElement], config: EngineConfig = DEFAULT_CONFIG) -> bool:
    """height((x)) = len(x) and the Koszul complex on x has no H_1."""
    xs = list(xs)
    if not xs:
        return True
    if any(not x or x.is_ground for x in xs):
        return False
    K = koszul_complex(xs)
    ideal = Ideal(K.base.ring, xs)
    if height(ideal) != len(xs):
        return False
    cycles = homology_generators(K.base, K.degrees(1), K.differential(1), K.differential(2),
                                 slack=config.degree_slack)
    return cycles.ncols == 0


def _degree_basis(I: Ideal, d: int) -> List[PolyElement]:
    ring = I.ring
    elements = []
    for g in I.minimal_generators():
        e = sum(g.LM)
        if e > d:
            continue
        for m in monomials_of_degree(ring.n, d - e, ring.order_tag):
            elements.append(ring.monomial(m) * g)
    return elements


def find_regular_sequence(I: Ideal, g: int, seed: int = 7, config: EngineConfig = DEFAULT_CONFIG) -> List[PolyElement]:
    """
    g homogeneous elements of I forming a regular sequence.

    Subsets of the minimal generators are tried first, then random integer
    combinations of I_d in increasing degree d.

    Args:
        I: Proper homogeneous ideal
        g: Length, at most height(I)
        seed: Seed of the random search
        config: Engine configuration (attempt budget)

    Returns:
        The sequence
    """
    if I.is_unit():
        raise PreconditionError("the unit ideal has no regular sequence to look for")
    if g > height(I):
        raise PreconditionError(f"I has height {height(I)}, no regular sequence of length {g} exists in it")
    if g <= 0:
        return []
    gens = I.minimal_generators()
    tried = 0
    for subset in combinations(gens, g):
        if tried >= config.attempt_budget:
            break
        tried += 1
        if is_regular_sequence(subset, config):
            return list(subset)
    rng = random.Random(seed)
    degrees = sorted({sum(f.LM) for f in gens})
    d = degrees[0]
    while tried < config.attempt_budget:
        basis = _degree_basis(I, d)
        for _ in range(5):
            if tried >= config.attempt_budget:
                break
            tried += 1
            candidate = []
            for _ in range(g):
                element = I.ring.zero
                for b in basis:
                    element = element + b * rng.randint(-9, 9)
                candidate.append(element)
            if all(candidate) and is_regular_sequence(candidate, config):
                logger.info("regular sequence found in degree %d after %d attempts", d, tried)
                return candidate
        d += 1
    raise PreconditionError(f"no regular sequence of length {g} found within {config.attempt_budget} attempts")


@dataclass
class LinkResult:
    """J = (x) : I with its checks."""

    source: Ideal
    sequence: List[PolyElement]
    link: Ideal
    resolution: Optional[ChainComplex]
    degenerate: bool = False
    grade_equal: bool = False
    double_link_recovers: bool = False
    J_perfect: bool = False
    cone_matches_direct: bool = False
    improper: bool = False

    def to_dict(self) -> dict:
        return {
            "sequence": [format_poly(x) for x in self.sequence],
            "link": [format_poly(f) for f in self.link.minimal_generators()] if not self.link.is_unit() else ["1"],
            "degenerate": self.degenerate,
            "grade_equal": self.grade_equal,
            "double_link_recovers": self.double_link_recovers,
            "J_perfect": self.J_perfect,
            "cone_matches_direct": self.cone_matches_direct,
            "improper": self.improper,
            "betti": self.resolution.betti_table().to_dict() if self.resolution is not None else {},
        }


def double_link(I: Ideal, x: Sequence[PolyElement]) -> Ideal:
    """(x) : ((x) : I)."""
    X = Ideal(I.ring, list(x))
    return ideal_quotient(X, ideal_quotient(X, I))


def _check_sequence(I: Ideal, x: Sequence[PolyElement], config: EngineConfig) -> int:
    g = height(I)
    for f in x:
        if not I.contains(f):
            raise PreconditionError(f"{format_poly(f)} does not lie in I")
    if len(x) != g:
        raise PreconditionError(f"the sequence has length {len(x)}, the height of I is {g}")
    if not is_regular_sequence(x, config):
        raise PreconditionError("the sequence is not regular")
    if not classify_ideal(I, config).perfect:
        raise PreconditionError("I is not perfect")
    return g


def link(I: Ideal, x: Sequence[PolyElement], config: EngineConfig = DEFAULT_CONFIG) -> LinkResult:
    """
    The link J = (x) : I of a perfect ideal.

    Args:
        I: Perfect homogeneous ideal of height g
        x: Regular sequence of length g inside I
        config: Engine configuration

    Returns:
        LinkResult; when (x) = I the link is the unit ideal and the result is
        marked degenerate
    """
    x = list(x)
    g = _check_sequence(I, x, config)
    ring = I.ring
    X = Ideal(ring, x)
    if X.same_as(I):
        logger.info("degenerate link: I equals (x)")
        return LinkResult(I, x, Ideal(ring, [ring.one]), None, degenerate=True, double_link_recovers=True)
    J = ideal_quotient(X, I)
    result = LinkResult(I, x, J, None)
    result.grade_equal = height(J) == g
    result.double_link_recovers = ideal_quotient(X, J).same_as(I)
    result.improper = not result.double_link_recovers
    _, direct = free_resolution(quotient_module(J), ring.n + 2, config)
    result.J_perfect = direct.complete and direct.length == g
    result.resolution = mapping_cone_resolution(I, x, config)
    result.cone_matches_direct = result.resolution.betti_table().entries == direct.entries
    logger.info("link of %s by %s: %s", I, X, J)
    return result


def minimize_complex(C: ChainComplex) -> ChainComplex:
    """
    Cancel unit entries of the differentials.

    A unit u at (r, c) of d_j removes basis c of C_j and r of C_{j-1}: d_j
    becomes d_j - d_j[:, c] d_j[r, :] / u, d_{j+1} loses row c and d_{j-1}
    loses column r.
    """
    base = C.base
    degrees = [list(C.degrees(i)) for i in range(C.length + 1)]
    mats = [None] + [[list(row) for row in d.entries] for d in C.differentials]
    while True:
        found = None
        for j in range(1, len(mats)):
            for r, row in enumerate(mats[j]):
                for c, e in enumerate(row):
                    if e and e.is_ground:
                        found = (j, r, c)
                        break
                if found:
                    break
            if found:
                break
        if found is None:
            break
        j, r, c = found
        M = mats[j]
        u = M[r][c]
        pivot_row = M[r]
        for a in range(len(M)):
            if a == r or not M[a][c]:
                continue
            factor = M[a][c].quo_ground(u.LC)
            M[a] = [base.normal_form(M[a][b] - factor * pivot_row[b]) for b in range(len(M[a]))]
        del M[r]
        for row in M:
            del row[c]
        if j + 1 < len(mats):
            del mats[j + 1][c]
        if j - 1 >= 1:
            for row in mats[j - 1]:
                del row[r]
        del degrees[j][c]
        del degrees[j - 1][r]
    while len(degrees) > 1 and not degrees[-1]:
        degrees.pop()
        mats.pop()
    diffs = [GradedMatrix(base, mats[j], degrees[j - 1], degrees[j]) for j in range(1, len(mats))]
    return ChainComplex(base, diffs, degrees0=degrees[0])


def _entries(M: Optional[GradedMatrix], nrows: int, ncols: int, zero) -> List[List]:
    if M is None or not M.nrows or not M.ncols:
        return [[zero] * ncols for _ in range(nrows)]
    return [list(row) for row in M.entries]


def _comparison_maps(F: ChainComplex, K: ChainComplex, g: int) -> List[GradedMatrix]:
    """phi_k: K_k -> F_k over the identity of R, with d^F phi_k = phi_{k-1} d^K."""
    R = F.base
    phis = [GradedMatrix.identity(R, [0])]
    for k in range(1, g + 1):
        dF = F.differential(k)
        target = phis[k - 1].compose(K.differential(k))
        columns = []
        for e in range(target.ncols):
            t = target.col_degrees[e]
            cols, src, tgt = dF.piece(t)
            solution = solve(cols, len(tgt), vectorize(R, tgt, target.column(e)))
            if solution is None:
                raise InvariantError(f"the Koszul complex does not lift to F in degree {k}")
            columns.append(devectorize(R, src, solution, dF.ncols))
        phis.append(GradedMatrix.from_columns(R, columns, F.degrees(k), K.degrees(k)))
    return phis


def mapping_cone_resolution(I: Ideal, x: Sequence[PolyElement],
                            config: EngineConfig = DEFAULT_CONFIG) -> ChainComplex:
    """
    Minimal free resolution of R/J, J = (x) : I, from the dual of the cone of K(x) -> F.

    Args:
        I: Perfect ideal of height g
        x: Regular sequence of length g inside I
        config: Engine configuration

    Returns:
        The minimized complex; its exactness is checked
    """
    x = list(x)
    ring = I.ring
    R = Ideal.zero(ring)
    g = len(x)
    F, betti = free_resolution(quotient_module(I), ring.n + 2, config)
    if not betti.complete or F.length != g:
        raise PreconditionError("R/I must have projective dimension equal to the length of x")
    K = koszul_complex(x)
    phis = _comparison_maps(F, K, g)
    zero = ring.zero
    cone = []
    for k in range(1, g + 2):
        rows_f, rows_k = F.degrees(k - 1), K.degrees(k - 2) if k >= 2 else []
        cols_f, cols_k = F.degrees(k), K.degrees(k - 1)
        top_left = _entries(F.differential(k), len(rows_f), len(cols_f), zero)
        top_right = _entries(phis[k - 1], len(rows_f), len(cols_k), zero)
        bottom_right = _entries(K.differential(k - 1).scale(-1) if k >= 2 else None, len(rows_k), len(cols_k), zero)
        entries = [a + b for a, b in zip(top_left, top_right)]
        entries += [[zero] * len(cols_f) + row for row in bottom_right]
        cone.append(GradedMatrix(R, entries, rows_f + rows_k, cols_f + cols_k))
    shift = sum(sum(f.LM) for f in x)
    dual = [cone[g + 1 - j].transpose().shift(shift) for j in range(1, g + 2)]
    complex_ = minimize_complex(ChainComplex(R, dual, degrees0=dual[0].row_degrees))
    for i in range(1, complex_.length):
        if not homology_at(complex_, i, config).is_zero():
            raise InvariantError(f"the mapping cone resolution has homology at spot {i}")
    return complex_


@dataclass
class LengthTransfer:
    lhs: int
    rhs: int
    degenerate: bool = False

    @property
    def equal(self) -> bool:
        return self.lhs == self.rhs


def _transfer_side(I: Ideal, g: int, config: EngineConfig) -> int:
    canonical = change_base(ext_module(I, g, config), I)
    tensor = module_length(tensor_product(conormal_module(I), canonical), config)
    if not isinstance(tensor, int):
        raise InvariantError("I/I^2 (x) K_S has infinite length over an Artinian ring")
    return tensor - g * artinian_length(I)


def cm_transfer_lengths(I: Ideal, x: Sequence[PolyElement], config: EngineConfig = DEFAULT_CONFIG) -> LengthTransfer:
    """
    l(I (x) K_S) - g l(S) against l(J (x) K_T) - g l(T) for the link J.

    Args:
        I: m-primary perfect ideal
        x: Regular sequence of length g inside I
        config: Engine configuration

    Returns:
        LengthTransfer with both sides
    """
    if I.is_unit() or krull_dimension(I) != 0:
        raise PreconditionError("the length equation is checked for Artinian S only")
    result = link(I, x, config)
    g = len(result.sequence)
    lhs = _transfer_side(I, g, config)
    if result.degenerate:
        return LengthTransfer(lhs, 0, degenerate=True)
    return LengthTransfer(lhs, _transfer_side(result.link, g, config))


@dataclass
class LicciChain:
    links: List[LinkResult] = field(default_factory=list)
    reached_ci: bool = False


def licci_chain(I: Ideal, depth: int = 2, seed: int = 7, config: EngineConfig = DEFAULT_CONFIG) -> LicciChain:
    """Link repeatedly until a complete intersection appears or depth links are made."""
    if depth < 0 or depth > 2:
        raise PreconditionError("licci chains are explored to depth 2 at most")
    chain = LicciChain()
    current = I
    for step in range(depth + 1):
        g = height(current)
        if len(current.minimal_generators()) == g:
            chain.reached_ci = True
            break
        if step == depth:
            break
        result = link(current, find_regular_sequence(current, g, seed + step, config), config)
        chain.links.append(result)
        if result.degenerate:
            break
        current = result.link
    return chain
