"""
Finitely presented graded modules over R or S = R/I.

A module is the cokernel of a GradedMatrix P: F1 -> F0. Everything here is
computed degree by degree with exact linear algebra over Q: Hilbert functions,
minimal presentations, resolutions, homology, Ext, exterior powers, duals and
tensor products.
"""

import logging
import random
from dataclasses import dataclass, field
from itertools import combinations, product
from typing import Dict, List, Optional, Sequence, Tuple, Union

from sympy.polys.domains import QQ

from src.config import DEFAULT_CONFIG, EngineConfig
from src.errors import InvariantError, PreconditionError, StructuralError
from src.groebner.colon import ideal_intersection
from src.groebner.graded import (GradedMatrix, complete_generators, free_piece, generator_matrix, image_generators,
                                 image_numerator, kernel_window, syzygy_matrix)
from src.groebner.ideal import Ideal, krull_dimension
from src.groebner.linalg import Vector, rank
from src.groebner.submodule import first_difference, multiply, quotient_numerator

logger = logging.getLogger(__name__)

INFINITE = "infinite"
UNDETERMINED = "undetermined"


class PresentedModule:
    """
    coker(P: F1 -> F0) over the base ring R/I.

    The generators of the module are the basis of F0, with degrees
    presentation.row_degrees.
    """

    def __init__(self, base: Ideal, presentation: GradedMatrix):
        self.base = base
        self.presentation = presentation if presentation.base is base else presentation.change_base(base)
        self._minimal: Optional["PresentedModule"] = None

    @classmethod
    def free(cls, base: Ideal, degrees: Sequence[int]) -> "PresentedModule":
        return cls(base, GradedMatrix.zeros(base, degrees, []))

    @classmethod
    def zero(cls, base: Ideal) -> "PresentedModule":
        return cls.free(base, [])

    @property
    def generator_degrees(self) -> List[int]:
        return self.presentation.row_degrees

    def hilbert_function(self, t: int) -> int:
        """dim M_t = dim F0_t - rank P_t."""
        P = self.presentation
        size = len(free_piece(self.base, P.row_degrees, t))
        if size == 0 or P.ncols == 0:
            return size
        return size - P.rank_at(t)

    def hilbert_prefix(self, upto: int, start: int = 0) -> List[int]:
        return [self.hilbert_function(t) for t in range(start, upto + 1)]

    def aligned_hilbert(self, length: int) -> List[int]:
        """Hilbert function read from the lowest generator degree on."""
        m = self.minimal()
        if not m.generator_degrees:
            return [0] * length
        start = min(m.generator_degrees)
        return [m.hilbert_function(start + k) for k in range(length)]

    def num_generators(self) -> int:
        """mu(M) = rank F0 - rank of the scalar part of P."""
        P = self.presentation
        columns: Dict[int, Vector] = {}
        for (i, j), c in P.constant_entries().items():
            columns.setdefault(j, {})[i] = c
        return P.nrows - rank(list(columns.values()), P.nrows)

    def minimal(self) -> "PresentedModule":
        if self._minimal is None:
            self._minimal = minimal_presentation(self)
        return self._minimal

    def is_zero(self) -> bool:
        return self.num_generators() == 0

    def __repr__(self) -> str:
        return f"PresentedModule(generators in degrees {self.generator_degrees}, {self.presentation.ncols} relations)"


def quotient_module(J: Ideal) -> PresentedModule:
    """R/J as a cyclic module over R, generated in degree 0."""
    R = Ideal.zero(J.ring)
    gens = J.minimal_generators()
    return PresentedModule(R, GradedMatrix(R, [gens], [0], [sum(g.LM) for g in gens]))


def residue_field(I: Ideal) -> PresentedModule:
    """k = S/m as a module over S = R/I."""
    ring = I.ring
    return PresentedModule(I, GradedMatrix(I, [ring.gens], [0], [1] * ring.n))


def conormal_module(I: Ideal) -> PresentedModule:
    """I/I^2 over S, presented by the syzygies of I reduced mod I."""
    ring = I.ring
    R = Ideal.zero(ring)
    gens = I.minimal_generators()
    degrees = [sum(g.LM) for g in gens]
    syz = syzygy_matrix(GradedMatrix(R, [gens], [0], degrees))
    return PresentedModule(I, GradedMatrix(I, syz.entries, degrees, syz.col_degrees))


def minimal_presentation(M: PresentedModule) -> PresentedModule:
    """
    Prune unit entries, then trim the relations to a minimal generating set.

    Args:
        M: Presented module

    Returns:
        Isomorphic module whose presentation has no nonzero scalar entries
    """
    if M._minimal is not None:
        return M._minimal
    P = M.presentation
    entries = [list(row) for row in P.entries]
    rows = list(P.row_degrees)
    cols = list(P.col_degrees)
    while True:
        pivot = next(((i, j) for i, row in enumerate(entries) for j, e in enumerate(row) if e and e.is_ground), None)
        if pivot is None:
            break
        i, j = pivot
        inv = QQ.one / entries[i][j].LC
        for k in range(len(cols)):
            f = entries[i][k]
            if k == j or not f:
                continue
            for r in range(len(rows)):
                if entries[r][j]:
                    entries[r][k] = M.base.normal_form(entries[r][k] - f * entries[r][j] * inv)
        del entries[i]
        del rows[i]
        for row in entries:
            del row[j]
        del cols[j]
    pruned = GradedMatrix(M.base, entries if rows else [], rows, cols if rows else [])
    result = PresentedModule(M.base, image_generators(pruned))
    result._minimal = result
    M._minimal = result
    return result


@dataclass
class BettiTable:
    """Graded Betti numbers beta_{i,j}, computed for i <= bound."""

    entries: Dict[Tuple[int, int], int] = field(default_factory=dict)
    bound: int = 0
    complete: bool = False

    @classmethod
    def from_degrees(cls, degree_lists: Sequence[Sequence[int]], bound: int, complete: bool) -> "BettiTable":
        entries: Dict[Tuple[int, int], int] = {}
        for i, degs in enumerate(degree_lists):
            for d in degs:
                entries[(i, d)] = entries.get((i, d), 0) + 1
        return cls(entries, bound, complete)

    def betti(self, i: int) -> int:
        return sum(v for (a, _), v in self.entries.items() if a == i)

    @property
    def length(self) -> int:
        return max((i for (i, _), v in self.entries.items() if v), default=0)

    def totals(self) -> List[int]:
        return [self.betti(i) for i in range(self.length + 1)]

    def to_dict(self) -> Dict[str, int]:
        return {f"{i},{j}": v for (i, j), v in sorted(self.entries.items()) if v}

    def to_text(self) -> str:
        if not self.entries:
            return "total: 0"
        top = self.length
        shifts = sorted({j - i for (i, j) in self.entries})
        width = max(len(str(v)) for v in list(self.entries.values()) + [sum(self.entries.values())])
        label = max(len("total:"), max(len(f"{s}:") for s in shifts))
        lines = [" " * label + " " + " ".join(str(i).rjust(width) for i in range(top + 1))]
        lines.append("total:".rjust(label) + " " + " ".join(str(v).rjust(width) for v in self.totals()))
        for s in range(shifts[0], shifts[-1] + 1):
            cells = [str(self.entries.get((i, i + s), 0) or "-").rjust(width) for i in range(top + 1)]
            lines.append(f"{s}:".rjust(label) + " " + " ".join(cells))
        return "\n".join(lines)


class ChainComplex:
    """
    A complex of graded free modules C0 <- C1 <- C2 <- ...

    differentials[i - 1] is d_i: C_i -> C_{i-1}.
    """

    def __init__(self, base: Ideal, differentials: Sequence[GradedMatrix],
                 degrees0: Optional[Sequence[int]] = None, check: bool = True):
        self.base = base
        self.differentials = list(differentials)
        if degrees0 is None:
            if not self.differentials:
                raise StructuralError("a complex without differentials needs its degree-0 module")
            degrees0 = self.differentials[0].row_degrees
        self.degrees0 = list(degrees0)
        if self.differentials and self.differentials[0].row_degrees != self.degrees0:
            raise StructuralError("d1 does not land in C0")
        for k in range(1, len(self.differentials)):
            a, b = self.differentials[k - 1], self.differentials[k]
            if b.row_degrees != a.col_degrees:
                raise StructuralError(f"d{k + 1} does not land in C{k}")
            if check and not a.compose(b).is_zero():
                raise InvariantError(f"d{k} d{k + 1} is not zero")

    @property
    def length(self) -> int:
        return len(self.differentials)

    def differential(self, i: int) -> Optional[GradedMatrix]:
        if 1 <= i <= self.length:
            return self.differentials[i - 1]
        return None

    def degrees(self, i: int) -> List[int]:
        if i == 0:
            return self.degrees0
        if 1 <= i <= self.length:
            return self.differentials[i - 1].col_degrees
        return []

    def ranks(self) -> List[int]:
        return [len(self.degrees(i)) for i in range(self.length + 1)]

    def betti_table(self, complete: bool = True) -> BettiTable:
        return BettiTable.from_degrees([self.degrees(i) for i in range(self.length + 1)], self.length, complete)

    def is_minimal(self) -> bool:
        return not any(d.constant_entries() for d in self.differentials)


def free_resolution(M: PresentedModule, bound: int, config: EngineConfig = DEFAULT_CONFIG,
                    decide_end: bool = True) -> Tuple[ChainComplex, BettiTable]:
    """
    Minimal graded free resolution up to homological degree `bound`.

    Args:
        M: Presented module
        bound: Largest homological degree computed
        config: Engine configuration (degree slack)
        decide_end: When the bound is reached, compute one more syzygy step
            to decide whether the resolution stops there

    Returns:
        (complex, Betti table); the table is complete when the resolution
        provably stops within the bound
    """
    if bound < 0:
        raise PreconditionError("resolution bound must be non-negative")
    m = minimal_presentation(M)
    diffs: List[GradedMatrix] = []
    complete: Optional[bool] = None
    if m.presentation.ncols == 0:
        complete = True
    elif bound >= 1:
        diffs.append(m.presentation)
    while diffs and len(diffs) < bound:
        syz = syzygy_matrix(diffs[-1], slack=config.degree_slack)
        if syz.ncols == 0:
            complete = True
            break
        diffs.append(syz)
        logger.debug("resolution step %d: %d generators", len(diffs), syz.ncols)
    if complete is None:
        complete = bool(diffs) and decide_end and syzygy_matrix(diffs[-1], slack=config.degree_slack).ncols == 0
    C = ChainComplex(M.base, diffs, degrees0=m.generator_degrees)
    betti = C.betti_table(complete)
    logger.info("resolution with Betti numbers %s (complete: %s)", betti.totals(), complete)
    return C, betti


def projective_dimension(M: PresentedModule, bound: int, config: EngineConfig = DEFAULT_CONFIG) -> Optional[int]:
    """pd of M when the resolution stops within bound, else None."""
    _, betti = free_resolution(M, bound, config)
    return betti.length if betti.complete else None


def _kernel_candidates(base: Ideal, degrees: Sequence[int], outgoing: Optional[GradedMatrix]):
    if outgoing is not None:
        return outgoing.kernel_at

    def everything(t: int) -> List[Vector]:
        return [{k: QQ.one} for k in range(len(free_piece(base, degrees, t)))]
    return everything


def _image_columns(incoming: Optional[GradedMatrix]):
    if incoming is None or incoming.ncols == 0:
        return None
    return lambda t: incoming.piece(t)[0]


def homology_cycles(base: Ideal, degrees: Sequence[int], outgoing: Optional[GradedMatrix],
                    incoming: Optional[GradedMatrix], window: Optional[int] = None, slack: int = 1,
                    ceiling: Optional[int] = None) -> Tuple[GradedMatrix, bool]:
    """
    Cycles whose classes minimally generate ker(outgoing) / im(incoming).

    Args:
        base: Base ideal
        degrees: Degrees of the free module at the spot
        outgoing: Map leaving the spot (None for the zero map)
        incoming: Map entering the spot (None for the zero map)
        window: Degree the scan starts from; widened until the classes generate
        slack: Extra degrees when the window is computed
        ceiling: Degrees above this are never scanned

    Returns:
        (matrix whose columns are the chosen cycles, complete); complete is
        False when homology generators were left above the ceiling
    """
    if not degrees:
        return GradedMatrix.zeros(base, [], []), True
    if window is None:
        window = kernel_window(outgoing, slack) if outgoing is not None else max(degrees) + slack
    boundaries = [incoming.column(j) for j in range(incoming.ncols)] if incoming is not None else []
    target = (lambda: image_numerator(outgoing)) if outgoing is not None else (lambda: {})
    gens, complete = complete_generators(base, degrees, _kernel_candidates(base, degrees, outgoing), window,
                                         target, _image_columns(incoming), boundaries, ceiling)
    return generator_matrix(base, degrees, gens), complete


def homology_generators(base: Ideal, degrees: Sequence[int], outgoing: Optional[GradedMatrix],
                        incoming: Optional[GradedMatrix], window: Optional[int] = None,
                        slack: int = 1) -> GradedMatrix:
    """Cycles whose classes minimally generate ker(outgoing) / im(incoming)."""
    return homology_cycles(base, degrees, outgoing, incoming, window, slack)[0]


def homology_hilbert(base: Ideal, degrees: Sequence[int], outgoing: Optional[GradedMatrix],
                     incoming: Optional[GradedMatrix], t: int) -> int:
    """dim Z_t - dim B_t at one spot."""
    size = len(free_piece(base, degrees, t))
    if size == 0:
        return 0
    z = size - (outgoing.rank_at(t) if outgoing is not None else 0)
    b = incoming.rank_at(t) if incoming is not None and incoming.ncols else 0
    return z - b


def first_homology_degree(base: Ideal, degrees: Sequence[int], outgoing: Optional[GradedMatrix],
                          incoming: Optional[GradedMatrix]) -> Optional[int]:
    """Lowest internal degree with nonzero homology at the spot, None when it vanishes."""
    if not degrees:
        return None
    top = base.top_degree()
    if top is not None:
        for t in range(min(degrees), max(degrees) + top + 1):
            if homology_hilbert(base, degrees, outgoing, incoming, t):
                return t
        return None
    found = incoming.cokernel_numerator() if incoming is not None else quotient_numerator(base, degrees, [])
    target = image_numerator(outgoing) if outgoing is not None else {}
    return first_difference(found, target)


def homology_module(base: Ideal, degrees: Sequence[int], outgoing: Optional[GradedMatrix],
                    incoming: Optional[GradedMatrix], slack: int = 1,
                    window: Optional[int] = None) -> PresentedModule:
    """ker(outgoing) / im(incoming) at a spot with the given degrees, minimally presented."""
    cycles = homology_generators(base, degrees, outgoing, incoming, window, slack)
    if cycles.ncols == 0:
        return PresentedModule.zero(base)
    stacked = cycles.hstack(incoming) if incoming is not None and incoming.ncols else cycles
    syz = syzygy_matrix(stacked, slack=slack)
    m = cycles.ncols
    relations = GradedMatrix(base, syz.entries[:m], cycles.col_degrees, syz.col_degrees)
    return minimal_presentation(PresentedModule(base, relations))


def homology_at(C: ChainComplex, i: int, config: EngineConfig = DEFAULT_CONFIG) -> PresentedModule:
    """H_i(C) = ker d_i / im d_{i+1}."""
    if i < 0:
        raise PreconditionError("homological degree must be non-negative")
    outgoing = C.differential(i) if i >= 1 else None
    incoming = C.differential(i + 1)
    return homology_module(C.base, C.degrees(i), outgoing, incoming, config.degree_slack)


def ext_module(I: Ideal, i: int, config: EngineConfig = DEFAULT_CONFIG) -> PresentedModule:
    """
    Ext^i_R(R/I, R) from the dual of the minimal resolution of R/I.

    Args:
        I: Homogeneous ideal
        i: Cohomological degree
        config: Engine configuration

    Returns:
        The Ext module over R
    """
    F, _ = free_resolution(quotient_module(I), I.ring.n + 1, config)
    if i < 0 or i > F.length:
        return PresentedModule.zero(F.base)
    degrees = [-d for d in F.degrees(i)]
    out = F.differential(i + 1)
    inc = F.differential(i) if i >= 1 else None
    return homology_module(F.base, degrees, out.transpose() if out is not None else None,
                           inc.transpose() if inc is not None else None, config.degree_slack)


def exterior_power(M: PresentedModule, r: int) -> PresentedModule:
    """
    The r-th exterior power from a presentation F1 -> F0 -> M -> 0.

    Args:
        M: Presented module
        r: Exponent, r >= 0

    Returns:
        Presentation with generators the r-subsets of the basis of F0 and
        relations (relation) ^ (r - 1 basis elements)
    """
    if r < 0:
        raise PreconditionError("exterior power exponent must be non-negative")
    base = M.base
    if r == 0:
        return PresentedModule.free(base, [0])
    m = minimal_presentation(M)
    P = m.presentation
    degs = P.row_degrees
    if r > len(degs):
        return PresentedModule.zero(base)
    subsets = list(combinations(range(len(degs)), r))
    index = {s: k for k, s in enumerate(subsets)}
    ring = base.ring
    columns, col_degrees = [], []
    for c in range(P.ncols):
        for J in combinations(range(len(degs)), r - 1):
            column = [ring.zero] * len(subsets)
            for k in range(len(degs)):
                entry = P.entries[k][c]
                if k in J or not entry:
                    continue
                sign = -1 if sum(1 for j in J if j < k) % 2 else 1
                s = index[tuple(sorted(J + (k,)))]
                column[s] = column[s] + entry * sign
            if any(column):
                columns.append(column)
                col_degrees.append(P.col_degrees[c] + sum(degs[j] for j in J))
    row_degrees = [sum(degs[j] for j in s) for s in subsets]
    return PresentedModule(base, GradedMatrix.from_columns(base, columns, row_degrees, col_degrees))


def dual_module(M: PresentedModule, config: EngineConfig = DEFAULT_CONFIG) -> PresentedModule:
    """Hom(M, base) as the kernel of the transposed presentation, minimally presented."""
    base = M.base
    P = minimal_presentation(M).presentation
    if not P.row_degrees:
        return PresentedModule.zero(base)
    degrees = [-d for d in P.row_degrees]
    G = homology_generators(base, degrees, P.transpose(), None, slack=config.degree_slack)
    if G.ncols == 0:
        return PresentedModule.zero(base)
    return minimal_presentation(PresentedModule(base, syzygy_matrix(G, slack=config.degree_slack)))


def tensor_product(M: PresentedModule, N: PresentedModule) -> PresentedModule:
    """M (x) N over the common base: coker([P (x) 1 | 1 (x) Q])."""
    if not M.base.same_as(N.base):
        raise StructuralError("tensor factors live over different bases")
    base = M.base
    P = minimal_presentation(M).presentation
    Q = minimal_presentation(N if N.base is base else change_base(N, base)).presentation
    ring = base.ring
    p, q = P.nrows, Q.nrows
    row_degrees = [P.row_degrees[i] + Q.row_degrees[k] for i in range(p) for k in range(q)]
    columns, col_degrees = [], []
    for c in range(P.ncols):
        for k in range(q):
            column = [ring.zero] * (p * q)
            for i in range(p):
                column[i * q + k] = P.entries[i][c]
            columns.append(column)
            col_degrees.append(P.col_degrees[c] + Q.row_degrees[k])
    for i in range(p):
        for c in range(Q.ncols):
            column = [ring.zero] * (p * q)
            for k in range(q):
                column[i * q + k] = Q.entries[k][c]
            columns.append(column)
            col_degrees.append(P.row_degrees[i] + Q.col_degrees[c])
    return PresentedModule(base, GradedMatrix.from_columns(base, columns, row_degrees, col_degrees))


def change_base(M: PresentedModule, I: Ideal) -> PresentedModule:
    """M (x)_R R/I for a base ideal contained in I."""
    if not I.contains_ideal(M.base):
        raise StructuralError("the new base ideal must contain the old one")
    return PresentedModule(I, M.presentation.change_base(I))


def _lifted_presentation(M: PresentedModule) -> GradedMatrix:
    """The presentation over R: relations of M plus I times every generator."""
    ring = M.base.ring
    R = Ideal.zero(ring)
    P = M.presentation
    columns = [P.column(j) for j in range(P.ncols)]
    col_degrees = list(P.col_degrees)
    for g in M.base.minimal_generators():
        for i, d in enumerate(P.row_degrees):
            column = [ring.zero] * P.nrows
            column[i] = g
            columns.append(column)
            col_degrees.append(d + sum(g.LM))
    return GradedMatrix.from_columns(R, columns, P.row_degrees, col_degrees)


def annihilator(M: PresentedModule, config: EngineConfig = DEFAULT_CONFIG) -> Ideal:
    """ann_R(M) as the intersection of the colon ideals (im P : e_j)."""
    ring = M.base.ring
    R = Ideal.zero(ring)
    m = minimal_presentation(M)
    P = _lifted_presentation(m)
    result = Ideal(ring, [ring.one])
    for j, d in enumerate(P.row_degrees):
        unit = [ring.zero] * P.nrows
        unit[j] = ring.one
        E = GradedMatrix.from_columns(R, [unit], P.row_degrees, [d])
        syz = syzygy_matrix(E.hstack(P), slack=config.degree_slack)
        result = ideal_intersection(result, Ideal(ring, [e for e in syz.entries[0] if e]) if syz.ncols
                                    else Ideal.zero(ring))
    return result


def module_length(M: PresentedModule, config: EngineConfig = DEFAULT_CONFIG) -> Union[int, str]:
    """
    Total Q-dimension of M, or INFINITE.

    Args:
        M: Presented module
        config: Engine configuration

    Returns:
        The length, or INFINITE when the annihilator has positive dimension
    """
    m = minimal_presentation(M)
    if not m.generator_degrees:
        return 0
    if krull_dimension(annihilator(m, config)) > 0:
        return INFINITE
    top = max(m.generator_degrees)
    total, t = 0, min(m.generator_degrees)
    while True:
        h = m.hilbert_function(t)
        total += h
        if h == 0 and t >= top:
            return total
        t += 1


def euler_rank(M: PresentedModule, bound: Optional[int] = None,
               config: EngineConfig = DEFAULT_CONFIG) -> Union[int, str]:
    """Alternating sum of Betti numbers, or UNDETERMINED when pd exceeds the bound."""
    if bound is None:
        bound = M.base.ring.n + 2 if M.base.is_zero() else config.module_bound
    _, betti = free_resolution(M, bound, config)
    if not betti.complete:
        return UNDETERMINED
    return sum((-1) ** i * b for i, b in enumerate(betti.totals()))


def quotient_by_element(M: PresentedModule, f) -> PresentedModule:
    """M / fM."""
    m = minimal_presentation(M)
    P = m.presentation
    ring = M.base.ring
    columns = [P.column(j) for j in range(P.ncols)]
    col_degrees = list(P.col_degrees)
    for i, d in enumerate(P.row_degrees):
        column = [ring.zero] * P.nrows
        column[i] = f
        columns.append(column)
        col_degrees.append(d + sum(f.LM))
    return PresentedModule(M.base, GradedMatrix.from_columns(M.base, columns, P.row_degrees, col_degrees))


def module_numerator(M: PresentedModule) -> Dict[int, int]:
    """N(t) with Hilbert series of M equal to N(t) / (1 - t)^n."""
    P = M.presentation
    return quotient_numerator(M.base, P.row_degrees, [P.column(j) for j in range(P.ncols)])


def _is_regular(M: PresentedModule, l) -> bool:
    """A linear form is M-regular iff H(M / lM) = (1 - t) H(M)."""
    expected = multiply(module_numerator(M), {0: 1, 1: -1})
    return first_difference(module_numerator(quotient_by_element(M, l)), expected) is None


def depth(M: PresentedModule, seed: int = 7) -> int:
    """
    Length of a maximal M-regular sequence of generic linear forms.

    Args:
        M: Nonzero presented module
        seed: Seed for the random linear forms

    Returns:
        The depth of M
    """
    current = minimal_presentation(M)
    if current.is_zero():
        raise PreconditionError("the zero module has no depth")
    rng = random.Random(seed)
    ring = M.base.ring
    count = 0
    while count < ring.n and not current.is_zero():
        l = ring.zero
        for x in ring.gens:
            l = l + x * rng.choice([-1, 1]) * rng.randint(1, 97)
        if not _is_regular(current, l):
            break
        current = minimal_presentation(quotient_by_element(current, l))
        count += 1
    logger.debug("depth %d", count)
    return count


def is_free_cyclic(M: PresentedModule, upto: int = 6) -> bool:
    """mu(M) = 1 and the Hilbert function is that of the base, shifted."""
    m = minimal_presentation(M)
    if len(m.generator_degrees) != 1:
        return False
    d = m.generator_degrees[0]
    return all(m.hilbert_function(d + t) == M.base.hilbert_function(t) for t in range(upto + 1))


def _compositions(total: int, parts: int):
    if parts == 0:
        if total == 0:
            yield ()
        return
    for first in range(1, total - parts + 2):
        for rest in _compositions(total - first, parts - 1):
            yield (first,) + rest


def bar_complex_betti(I: Ideal, bound: int, degree_bound: int) -> BettiTable:
    """
    Betti numbers of k over S = R/I from the normalized bar complex.

    Args:
        I: Homogeneous ideal
        bound: Largest homological degree
        degree_bound: Largest internal degree

    Returns:
        beta_{i,j} for i <= bound and j <= degree_bound
    """
    def basis(i: int, j: int) -> List[tuple]:
        found = []
        for comp in _compositions(j, i):
            for monos in product(*[I.standard_monomials(d) for d in comp]):
                found.append(monos)
        return found

    def multiply(a, b) -> Dict:
        return I.monomial_normal_form(tuple(x + y for x, y in zip(a, b)))

    def boundary_rank(i: int, j: int) -> int:
        if i <= 1:
            return 0
        source = basis(i, j)
        target = {b: k for k, b in enumerate(basis(i - 1, j))}
        columns = []
        for element in source:
            col: Vector = {}
            for k in range(i - 1):
                sign = -1 if (k + 1) % 2 else 1
                for m, c in multiply(element[k], element[k + 1]).items():
                    image = element[:k] + (m,) + element[k + 2:]
                    idx = target[image]
                    col[idx] = col.get(idx, QQ.zero) + sign * c
            columns.append({a: v for a, v in col.items() if v})
        return rank(columns, len(target))

    entries: Dict[Tuple[int, int], int] = {(0, 0): 1}
    for i in range(1, bound + 1):
        for j in range(i, degree_bound + 1):
            dim = len(basis(i, j))
            if dim == 0:
                continue
            value = dim - boundary_rank(i, j) - boundary_rank(i + 1, j)
            if value:
                entries[(i, j)] = value
    return BettiTable(entries, bound, False)
