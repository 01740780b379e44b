"""
The cotangent modules T_i(S/R, S) of S = R/I, read off the complex L of a
minimal resolvent, with the conormal and Kaehler modules and the Koszul and
Tor comparisons that surround them.
"""

import logging
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Tuple

from src.config import DEFAULT_CONFIG, EngineConfig
from src.errors import InvariantError, PreconditionError
from src.groebner.graded import GradedMatrix, devectorize, free_piece, kernel_window, vectorize
from src.groebner.ideal import Ideal, height
from src.groebner.linalg import rank
from src.koszul.koszul import koszul_complex, koszul_homology_algebra
from src.koszul.tate import TateResolvent, minimal_resolvent
from src.modules.modules import (PresentedModule, change_base, conormal_module, dual_module, exterior_power,
                                 ext_module, free_resolution, homology_generators, homology_hilbert,
                                 homology_module)

logger = logging.getLogger(__name__)


def _window(outgoing: Optional[GradedMatrix], incoming: Optional[GradedMatrix], degrees: List[int],
            slack: int) -> int:
    top = max(degrees, default=0) + slack
    if outgoing is not None and outgoing.nrows:
        top = max(top, kernel_window(outgoing, slack))
    if incoming is not None and incoming.ncols:
        top = max(top, max(incoming.col_degrees) + slack)
    return top


class LComplex:
    """
    L_1 <- L_2 <- ... <- L_D over S, spot i free on the degree-i variables.

    The entry of d_i for a target variable u and a source variable T is the
    coefficient of u in delta(T), reduced mod I.
    """

    def __init__(self, resolvent: TateResolvent):
        self.resolvent = resolvent
        self.base = resolvent.ideal
        self.top = resolvent.bound
        self._differentials: Dict[int, GradedMatrix] = {}
        for i in range(2, self.top + 1):
            self._differentials[i] = self._extract(i)
        for i in range(2, self.top):
            if not self._differentials[i].compose(self._differentials[i + 1]).is_zero():
                raise InvariantError(f"d{i} d{i + 1} of L is not zero")

    def _extract(self, i: int) -> GradedMatrix:
        X = self.resolvent
        targets = X.variables_of_degree(i - 1)
        sources = X.variables_of_degree(i)
        index = {u.id: k for k, u in enumerate(targets)}
        entries = [[X.ring.zero] * len(sources) for _ in targets]
        for c, T in enumerate(sources):
            for m, coeff in T.diff.items():
                if len(m) == 1 and m[0][1] == 1 and m[0][0] in index:
                    entries[index[m[0][0]]][c] = coeff
        return GradedMatrix(self.base, entries, [u.ideg for u in targets], [T.ideg for T in sources])

    def degrees(self, i: int) -> List[int]:
        return [v.ideg for v in self.resolvent.variables_of_degree(i)]

    def differential(self, i: int) -> Optional[GradedMatrix]:
        return self._differentials.get(i)

    def ranks(self) -> List[int]:
        return [len(self.degrees(i)) for i in range(1, self.top + 1)]

    def is_minimal(self) -> bool:
        """delta(L) lies in mL."""
        return not any(d.constant_entries() for d in self._differentials.values())

    def _spot(self, i: int) -> Tuple[Optional[GradedMatrix], Optional[GradedMatrix]]:
        out = self.differential(i)
        if out is not None and not out.nrows:
            out = None
        return out, self.differential(i + 1)

    def homology(self, i: int, config: EngineConfig = DEFAULT_CONFIG) -> PresentedModule:
        """H_i(L); spot 1 is the cokernel of d_2."""
        degrees = self.degrees(i)
        if not degrees:
            return PresentedModule.zero(self.base)
        out, inc = self._spot(i)
        window = _window(out, inc, degrees, config.degree_slack)
        return homology_module(self.base, degrees, out, inc, config.degree_slack, window)

    def homology_hilbert(self, i: int, t: int) -> int:
        degrees = self.degrees(i)
        if not degrees:
            return 0
        out, inc = self._spot(i)
        return homology_hilbert(self.base, degrees, out, inc, t)


def l_complex(X: TateResolvent) -> LComplex:
    """
    The complex L of a minimal resolvent.

    Args:
        X: Minimal resolvent with bound D >= 2

    Returns:
        LComplex over S
    """
    if not X.is_minimal():
        raise PreconditionError("the L complex computes T only for a minimal resolvent")
    if X.bound < 2:
        raise PreconditionError("the resolvent bound must be at least 2")
    return LComplex(X)


@dataclass
class CotangentEntry:
    index: int
    module: PresentedModule
    mu: int
    hilbert: List[int]
    zero: bool

    def to_dict(self) -> Dict[str, object]:
        return {"mu": self.mu, "hilbert": self.hilbert, "zero": self.zero}


@dataclass
class CotangentReport:
    """T_1 .. T_{D-1} with their invariants."""

    entries: Dict[int, CotangentEntry] = field(default_factory=dict)
    caveats: List[str] = field(default_factory=list)
    resolvent: Optional[TateResolvent] = None
    complex: Optional[LComplex] = None

    def to_dict(self) -> Dict[str, object]:
        return {"T": {str(i): e.to_dict() for i, e in sorted(self.entries.items())}, "caveats": list(self.caveats)}

    def is_zero(self, i: int) -> bool:
        return self.entries[i].zero


def _entry(i: int, module: PresentedModule, upto: int) -> CotangentEntry:
    m = module.minimal()
    mu = len(m.generator_degrees)
    hilbert = m.hilbert_prefix(upto)
    if (mu == 0) != (not any(hilbert)):
        raise InvariantError(f"T_{i}: {mu} generators but Hilbert prefix {hilbert}")
    return CotangentEntry(i, m, mu, hilbert, mu == 0)


def cotangent_modules(I: Ideal, D: int, config: EngineConfig = DEFAULT_CONFIG,
                      X: Optional[TateResolvent] = None) -> CotangentReport:
    """
    T_i(S/R, S) for 1 <= i <= D - 1.

    Args:
        I: Proper homogeneous ideal in m^2, minimally generated
        D: Resolvent bound, at least 3
        config: Engine configuration
        X: A minimal resolvent to reuse, built to at least D

    Returns:
        CotangentReport; T_1 comes from the conormal presentation, the rest
        from the homology of L
    """
    if D < 3:
        raise PreconditionError("cotangent modules need a resolvent bound D >= 3")
    if X is None or X.bound < D:
        X = minimal_resolvent(I, D, config)
    L = l_complex(X)
    upto = max(config.hilbert_degree, max((v.ideg for v in X.variables), default=0) + 1)
    report = CotangentReport(resolvent=X, complex=L)
    conormal = conormal_presentation(I, config)
    if not conormal.agrees:
        raise InvariantError("the two presentations of I/I^2 disagree")
    report.entries[1] = _entry(1, conormal.module, upto)
    for i in range(2, D):
        report.entries[i] = _entry(i, L.homology(i, config), upto)
        logger.info("T_%d: mu=%d, hilbert=%s", i, report.entries[i].mu, report.entries[i].hilbert)
    if D - 1 >= 2 and report.entries[D - 1].mu > 0:
        report.caveats.append(f"T_{D - 1}: boundary effect possible")
    return report


@dataclass
class ConormalPresentation:
    """I/I^2 presented through the 1-cycles of the Koszul complex."""

    module: PresentedModule
    direct: PresentedModule
    relations: GradedMatrix
    agrees: bool


def conormal_presentation(I: Ideal, config: EngineConfig = DEFAULT_CONFIG) -> ConormalPresentation:
    """
    H_1 -> S^n -> I/I^2 -> 0 with n = mu(I).

    A 1-cycle sum r_i T_i maps to (r_1, ..., r_n) mod I. The cokernel is
    compared with the direct presentation by syzygies of I.
    """
    gens = I.minimal_generators()
    degrees = [sum(g.LM) for g in gens]
    direct = conormal_module(I)
    if not gens:
        zero = PresentedModule.zero(I)
        return ConormalPresentation(zero, direct, GradedMatrix.zeros(I, [], []), True)
    K = koszul_complex(gens)
    cycles = homology_generators(K.base, K.degrees(1), K.differential(1), K.differential(2),
                                 slack=config.degree_slack)
    relations = GradedMatrix(I, cycles.entries, degrees, cycles.col_degrees)
    module = PresentedModule(I, relations)
    upto = max(degrees) + config.hilbert_degree
    agrees = module.hilbert_prefix(upto) == direct.hilbert_prefix(upto)
    return ConormalPresentation(module, direct, relations, agrees)


@dataclass
class KaehlerModule:
    """Omega_{S/k} with the behaviour of the map I/I^2 -> S (x) Omega_{R/k}."""

    module: PresentedModule
    jacobian: GradedMatrix
    kernel_zero: bool
    betti: List[int]
    betti_complete: bool


def kaehler_module(I: Ideal, config: EngineConfig = DEFAULT_CONFIG, probe_bound: int = 4) -> KaehlerModule:
    """
    Omega_{S/k} as the cokernel of the Jacobian reduced mod I.

    Args:
        I: Homogeneous ideal
        config: Engine configuration
        probe_bound: Resolution bound for the Betti probe over S

    Returns:
        KaehlerModule; kernel_zero is decided by comparing the Hilbert
        function of I/I^2 with the rank of the Jacobian image degree by degree
    """
    ring = I.ring
    gens = I.minimal_generators()
    entries = [[g.diff(x) for g in gens] for x in ring.gens]
    jacobian = GradedMatrix(I, entries, [1] * ring.n, [sum(g.LM) for g in gens])
    module = PresentedModule(I, jacobian)
    conormal = conormal_module(I)
    window = max([sum(g.LM) for g in gens], default=0) + config.hilbert_degree
    kernel_zero = all(conormal.hilbert_function(t) == (jacobian.rank_at(t) if gens else 0)
                      for t in range(window + 1))
    _, betti = free_resolution(module, probe_bound, config, decide_end=False)
    return KaehlerModule(module, jacobian, kernel_zero, betti.totals(), betti.complete)


def _prefix(M: PresentedModule, upto: int) -> List[int]:
    return M.minimal().hilbert_prefix(upto)


def t3_cross_check(I: Ideal, config: EngineConfig = DEFAULT_CONFIG,
                   report: Optional[CotangentReport] = None) -> bool:
    """T_3 from L against H_2 / H_1^2 from the Koszul complex: Hilbert prefix and mu."""
    if report is None or 3 not in report.entries:
        report = cotangent_modules(I, max(4, config.bound), config)
    quotient = koszul_homology_algebra(I.minimal_generators(), 2, config).quotient
    T3 = report.entries[3]
    upto = len(T3.hilbert) - 1
    same = _prefix(quotient, upto) == T3.hilbert and quotient.num_generators() == T3.mu
    logger.info("T3 against H2/H1^2: %s", "agree" if same else "differ")
    return same


def _tensored(X: TateResolvent, j: int) -> Optional[GradedMatrix]:
    if j < 1:
        return None
    d = X.differential_matrix(j)
    return d.change_base(X.ideal) if d.ncols else None


def tor_algebra(I: Ideal, i: int, X: Optional[TateResolvent] = None,
                config: EngineConfig = DEFAULT_CONFIG) -> PresentedModule:
    """
    Tor_i^R(S, S) = H_i(X (x)_R S).

    Args:
        I: Homogeneous ideal in m^2
        i: Homological degree
        X: Resolvent built to at least i + 1
        config: Engine configuration

    Returns:
        The Tor module over S
    """
    if i < 0:
        raise PreconditionError("Tor index must be non-negative")
    if i == 0:
        return PresentedModule.free(I, [0])
    if X is None:
        X = minimal_resolvent(I, max(i + 1, 2), config)
    elif X.bound < i + 1:
        raise PreconditionError(f"Tor_{i} needs a resolvent built to degree {i + 1}")
    degrees = [X.ideg(m) for m in X.monomials(i)]
    out, inc = _tensored(X, i), _tensored(X, i + 1)
    window = _window(out, inc, degrees, config.degree_slack)
    return homology_module(I, degrees, out, inc, config.degree_slack, window)


@dataclass
class WedgeMap:
    """e_a ^ e_b -> class of T_a T_b in Tor_2."""

    images: GradedMatrix
    surjective: bool
    injective: bool


def wedge_to_tor2(I: Ideal, X: Optional[TateResolvent] = None, config: EngineConfig = DEFAULT_CONFIG) -> WedgeMap:
    """
    The map from the exterior square of I/I^2 to Tor_2^R(S, S).

    Surjectivity means the products T_a T_b together with the boundaries
    span the cycles; injectivity compares Hilbert functions of the source
    and the image inside a degree window.
    """
    if X is None or X.bound < 3:
        X = minimal_resolvent(I, 3, config)
    monos = X.monomials(2)
    degrees = [X.ideg(m) for m in monos]
    index = {m: k for k, m in enumerate(monos)}
    ones = X.variables_of_degree(1)
    columns, col_degrees = [], []
    for a in range(len(ones)):
        for b in range(a + 1, len(ones)):
            column = [X.ring.zero] * len(monos)
            column[index[((ones[a].id, 1), (ones[b].id, 1))]] = X.ring.one
            columns.append(column)
            col_degrees.append(ones[a].ideg + ones[b].ideg)
    images = GradedMatrix.from_columns(I, columns, degrees, col_degrees)
    out, inc = _tensored(X, 2), _tensored(X, 3)
    relations = inc.hstack(images) if inc is not None else images
    wedge = exterior_power(conormal_module(I), 2)
    d_max = max([v.ideg for v in ones], default=0)
    window = 2 * d_max + config.hilbert_degree
    surjective, injective = True, True
    for t in range(window + 1):
        tor = homology_hilbert(I, degrees, out, inc, t)
        rest = homology_hilbert(I, degrees, out, relations if relations.ncols else None, t)
        if rest:
            surjective = False
        if wedge.hilbert_function(t) != tor - rest:
            injective = False
    logger.info("wedge square to Tor2: surjective=%s injective=%s", surjective, injective)
    return WedgeMap(images, surjective, injective)


def syzygetic_test(I: Ideal, config: EngineConfig = DEFAULT_CONFIG,
                   report: Optional[CotangentReport] = None) -> bool:
    """True iff T_2(S/R, S) = 0."""
    if report is None or 2 not in report.entries:
        report = cotangent_modules(I, 3, config)
    return report.entries[2].zero


def deviation_identity(X: TateResolvent) -> Dict[int, Tuple[int, int]]:
    """
    rank L_i against dim_k H_i(L (x) k) for 1 <= i <= D.

    Returns:
        {i: (rank, dimension)}; the pairs agree for a minimal resolvent
    """
    L = LComplex(X)
    result = {}
    for i in range(1, X.bound + 1):
        size = len(L.degrees(i))
        ranks = []
        for d in (L.differential(i), L.differential(i + 1)):
            if d is None or not d.nrows or not d.ncols:
                ranks.append(0)
                continue
            columns: Dict[int, Dict[int, object]] = {}
            for (r, c), v in d.constant_entries().items():
                columns.setdefault(c, {})[r] = v
            ranks.append(rank(list(columns.values()), d.nrows))
        result[i] = (size, size - ranks[0] - ranks[1])
    return result


def filtered_homology_hilbert(X: TateResolvent, i: int, j: int, upto: int) -> List[int]:
    """Hilbert prefix of H_j(F_i X) up to degree upto."""
    degrees = [X.ideg(m) for m in X.monomials(j, i)]
    if not degrees:
        return [0] * (upto + 1)
    out = X.differential_matrix(j, i) if j >= 1 else None
    inc = X.differential_matrix(j + 1, i)
    inc = inc if inc.ncols else None
    return [homology_hilbert(X.R, degrees, out, inc, t) for t in range(upto + 1)]


def eta_kernel_hilbert(X: TateResolvent, i: int, upto: int) -> List[int]:
    """
    Hilbert prefix of the kernel of eta_{i-1}: H_{i-1}(F_{i-1}X) -> sum S T_u.

    eta reads off the coefficients of a cycle on the degree i-1 variables,
    reduced mod I.
    """
    if i < 2:
        raise PreconditionError("eta_{i-1} is defined for i >= 2")
    h = i - 1
    monos = X.monomials(h, h)
    degrees = [X.ideg(m) for m in monos]
    targets = X.variables_of_degree(h)
    target_degrees = [u.ideg for u in targets]
    positions = {((u.id, 1),): k for k, u in enumerate(targets)}
    out = X.differential_matrix(h, h)
    inc = X.differential_matrix(h + 1, h)
    inc = inc if inc.ncols else None
    result = []
    for t in range(upto + 1):
        size = len(free_piece(X.R, degrees, t))
        if size == 0:
            result.append(0)
            continue
        homology = homology_hilbert(X.R, degrees, out, inc, t)
        tgt = free_piece(X.ideal, target_degrees, t)
        images = []
        for z in out.kernel_at(t):
            vector = devectorize(X.R, free_piece(X.R, degrees, t), z, len(monos))
            projected = [X.ring.zero] * len(targets)
            for m, p in zip(monos, vector):
                k = positions.get(m)
                if k is not None:
                    projected[k] = p
            images.append(vectorize(X.ideal, tgt, projected))
        result.append(homology - rank(images, len(tgt)))
    return result


def filtered_homology_check(report: CotangentReport, upto: Optional[int] = None) -> Dict[int, bool]:
    """T_{i+1} against H_i(F_{i-1}X) for 3 <= i <= D - 2."""
    X = report.resolvent
    checks = {}
    for i in range(3, max(report.entries)):
        entry = report.entries[i + 1]
        top = len(entry.hilbert) - 1 if upto is None else upto
        checks[i] = filtered_homology_hilbert(X, i - 1, i, top) == entry.hilbert[:top + 1]
    return checks


def linear_part_kernel_check(report: CotangentReport, upto: Optional[int] = None) -> Dict[int, bool]:
    """T_i against ker eta_{i-1} for 2 <= i <= D - 1."""
    X = report.resolvent
    checks = {}
    for i, entry in sorted(report.entries.items()):
        if i < 2:
            continue
        top = len(entry.hilbert) - 1 if upto is None else upto
        checks[i] = eta_kernel_hilbert(X, i, top) == entry.hilbert[:top + 1]
    return checks


@dataclass
class WedgeSequence:
    """H_3 -> T_4 -> wedge^2 H_1 -> H_2 -> T_3 -> 0 in Hilbert functions."""

    applicable: bool
    alternating: List[int]

    @property
    def exact(self) -> bool:
        return not self.applicable or not any(self.alternating)


def wedge_sequence_exactness(I: Ideal, config: EngineConfig = DEFAULT_CONFIG,
                             report: Optional[CotangentReport] = None) -> WedgeSequence:
    """HF(T_4) - HF(wedge^2 H_1) + HF(H_2) - HF(T_3), degree by degree; applicable when H_3 = 0."""
    gens = I.minimal_generators()
    if report is None or 4 not in report.entries:
        report = cotangent_modules(I, max(5, config.bound), config)
    H1 = koszul_homology_algebra(gens, 1, config).module
    H2 = koszul_homology_algebra(gens, 2, config).module
    H3 = koszul_homology_algebra(gens, 3, config).module if len(gens) >= 3 else PresentedModule.zero(I)
    if not H3.is_zero():
        return WedgeSequence(False, [])
    wedge = exterior_power(H1, 2)
    upto = len(report.entries[4].hilbert) - 1
    alternating = [report.entries[4].hilbert[t] - wedge.hilbert_function(t) + H2.hilbert_function(t)
                   - report.entries[3].hilbert[t] for t in range(upto + 1)]
    return WedgeSequence(True, alternating)


@dataclass
class Tor2Triple:
    wedge: List[int]
    tor2: List[int]
    canonical_dual: List[int]

    @property
    def agree(self) -> bool:
        return self.wedge == self.tor2 == self.canonical_dual


def tor2_triple_check(I: Ideal, config: EngineConfig = DEFAULT_CONFIG,
                      X: Optional[TateResolvent] = None) -> Tor2Triple:
    """Aligned Hilbert prefixes of wedge^2(I/I^2), Tor_2^R(S, S) and Hom_S(K_S, S)."""
    length = config.hilbert_degree + 1
    wedge = exterior_power(conormal_module(I), 2)
    tor2 = tor_algebra(I, 2, X, config)
    canonical = change_base(ext_module(I, height(I), config), I)
    dual = dual_module(canonical, config)
    return Tor2Triple(wedge.aligned_hilbert(length), tor2.aligned_hilbert(length), dual.aligned_hilbert(length))
