"""
Free graded-commutative dg algebras over R built by adjoining variables to
kill cycles, and the minimal resolvent of R -> R/I up to a homological bound.

A monomial is a sorted tuple of (variable id, exponent) pairs; exponents of
odd variables are at most 1. An element is a dict {monomial: coefficient in R}.
Variable ids follow adjunction order, so homological degrees never decrease
along the id order.
"""

import logging
from dataclasses import dataclass
from typing import Dict, List, Optional, Sequence, Tuple

from sympy.polys.rings import PolyElement

from src.config import DEFAULT_CONFIG, EngineConfig
from src.errors import InvariantError, PreconditionError, StructuralError
from src.groebner.graded import GradedMatrix
from src.groebner.ideal import Ideal
from src.modules.modules import ChainComplex, first_homology_degree, homology_cycles, homology_hilbert
from src.poly.ring import format_poly

logger = logging.getLogger(__name__)

DgMonomial = Tuple[Tuple[int, int], ...]
DgElement = Dict[DgMonomial, PolyElement]


@dataclass
class TateVariable:
    """An adjoined variable T with its differential."""

    id: int
    hdeg: int
    ideg: int
    diff: DgElement
    stage: int

    @property
    def odd(self) -> bool:
        return self.hdeg % 2 == 1


def _add_term(target: DgElement, m: DgMonomial, c: PolyElement) -> None:
    if not c:
        return
    value = target.get(m)
    value = c if value is None else value + c
    if value:
        target[m] = value
    else:
        target.pop(m, None)


class TateResolvent:
    """
    The dg algebra X = R<T_1, T_2, ...> over R with H_0(X) = R/I.

    Instances are not changed once built by minimal_resolvent or
    adjoin_variable.
    """

    def __init__(self, ideal: Ideal, variables: Sequence[TateVariable] = (), bound: int = 0,
                 config: EngineConfig = DEFAULT_CONFIG):
        self.ideal = ideal
        self.ring = ideal.ring
        self.R = Ideal.zero(ideal.ring)
        self.variables: List[TateVariable] = list(variables)
        self.bound = max([bound] + [v.hdeg for v in self.variables])
        self.config = config
        self.windows: Dict[int, int] = {}
        self.killed_hilbert: Dict[int, List[int]] = {}
        self.window_limited: List[int] = []
        self.cap: Optional[int] = None
        self._diff_cache: Dict[DgMonomial, DgElement] = {}
        self._monomials: Dict[tuple, List[DgMonomial]] = {}
        self._matrices: Dict[tuple, GradedMatrix] = {}

    def _append(self, hdeg: int, ideg: int, diff: DgElement) -> TateVariable:
        if self.variables and self.variables[-1].hdeg > hdeg:
            raise StructuralError("variables must be adjoined in nondecreasing homological degree")
        var = TateVariable(len(self.variables), hdeg, ideg, dict(diff), hdeg)
        self.variables.append(var)
        self.bound = max(self.bound, hdeg)
        self._monomials.clear()
        self._matrices.clear()
        return var

    def counts(self) -> List[int]:
        """[e_1, ..., e_bound]."""
        return [len(self.variables_of_degree(i)) for i in range(1, self.bound + 1)]

    def variables_of_degree(self, i: int) -> List[TateVariable]:
        return [v for v in self.variables if v.hdeg == i]

    def hdeg(self, m: DgMonomial) -> int:
        return sum(self.variables[v].hdeg * e for v, e in m)

    def ideg(self, m: DgMonomial) -> int:
        return sum(self.variables[v].ideg * e for v, e in m)

    def label(self, v: int) -> str:
        var = self.variables[v]
        position = [u.id for u in self.variables_of_degree(var.hdeg)].index(v) + 1
        return f"T[{var.hdeg}][{position}]"

    def multiply_monomials(self, m1: DgMonomial, m2: DgMonomial) -> Tuple[int, Optional[DgMonomial]]:
        """
        Product of two monomials.

        Returns:
            (sign, monomial), or (0, None) when an odd variable would be squared
        """
        if not m1:
            return 1, m2
        if not m2:
            return 1, m1
        exps = dict(m1)
        odd_left = [v for v, _ in m1 if self.variables[v].odd]
        sign = 1
        for v, e in m2:
            if self.variables[v].odd:
                if v in exps:
                    return 0, None
                if sum(1 for u in odd_left if u > v) % 2:
                    sign = -sign
            exps[v] = exps.get(v, 0) + e
        return sign, tuple(sorted(exps.items()))

    def multiply(self, a: DgElement, b: DgElement) -> DgElement:
        out: DgElement = {}
        for m1, c1 in a.items():
            for m2, c2 in b.items():
                sign, m = self.multiply_monomials(m1, m2)
                if sign:
                    _add_term(out, m, c1 * c2 * sign)
        return out

    def differential_monomial(self, m: DgMonomial) -> DgElement:
        """delta(m) by the Leibniz rule, with delta(T^a) = a T^(a-1) delta(T)."""
        cached = self._diff_cache.get(m)
        if cached is not None:
            return cached
        out: DgElement = {}
        prefix_hdeg = 0
        for r, (v, a) in enumerate(m):
            var = self.variables[v]
            left = m[:r] + (((v, a - 1),) if a > 1 else ())
            suffix = m[r + 1:]
            sign = -1 if prefix_hdeg % 2 else 1
            for dm, c in var.diff.items():
                s1, p1 = self.multiply_monomials(left, dm)
                if not s1:
                    continue
                s2, p2 = self.multiply_monomials(p1, suffix)
                if not s2:
                    continue
                _add_term(out, p2, c * (a * sign * s1 * s2))
            prefix_hdeg += var.hdeg * a
        self._diff_cache[m] = out
        return out

    def differential(self, a: DgElement) -> DgElement:
        out: DgElement = {}
        for m, c in a.items():
            for dm, dc in self.differential_monomial(m).items():
                _add_term(out, dm, c * dc)
        return out

    def monomials(self, h: int, top: Optional[int] = None) -> List[DgMonomial]:
        """Monomials of homological degree h in the variables of degree <= top, sorted by (ideg, monomial)."""
        key = (h, top)
        found = self._monomials.get(key)
        if found is not None:
            return found
        usable = [v for v in self.variables if top is None or v.hdeg <= top]
        result: List[DgMonomial] = []

        def extend(start: int, remaining: int, current: List[Tuple[int, int]]) -> None:
            if remaining == 0:
                result.append(tuple(current))
                return
            for idx in range(start, len(usable)):
                var = usable[idx]
                if var.hdeg > remaining:
                    continue
                top_exp = 1 if var.odd else remaining // var.hdeg
                for e in range(1, top_exp + 1):
                    extend(idx + 1, remaining - e * var.hdeg, current + [(var.id, e)])

        extend(0, h, [])
        result.sort(key=lambda m: (self.ideg(m), m))
        self._monomials[key] = result
        return result

    def differential_matrix(self, j: int, top: Optional[int] = None) -> GradedMatrix:
        """delta: X_j -> X_{j-1} of the subalgebra F_top X, over R."""
        key = (j, top)
        found = self._matrices.get(key)
        if found is not None:
            return found
        cols = self.monomials(j, top)
        rows = self.monomials(j - 1, top)
        index = {m: k for k, m in enumerate(rows)}
        entries = [[self.ring.zero] * len(cols) for _ in rows]
        for c, m in enumerate(cols):
            for dm, coeff in self.differential_monomial(m).items():
                entries[index[dm]][c] = coeff
        matrix = GradedMatrix(self.R, entries, [self.ideg(m) for m in rows], [self.ideg(m) for m in cols])
        self._matrices[key] = matrix
        return matrix

    def complex(self, upto: int, top: Optional[int] = None, check: bool = False) -> ChainComplex:
        """X_0 <- X_1 <- ... <- X_upto for F_top X."""
        diffs = [self.differential_matrix(j, top) for j in range(1, upto + 1)]
        return ChainComplex(self.R, diffs, degrees0=[0], check=check)

    def element(self, h: int, vector: Sequence[PolyElement], top: Optional[int] = None) -> DgElement:
        """The element with the given coordinates on monomials(h, top)."""
        out: DgElement = {}
        for m, c in zip(self.monomials(h, top), vector):
            _add_term(out, m, c)
        return out

    def is_minimal(self) -> bool:
        """No unit coefficient on a single variable in any differential."""
        for var in self.variables:
            for m, c in var.diff.items():
                if len(m) == 1 and m[0][1] == 1 and c.is_ground:
                    return False
        return True

    def format_element(self, a: DgElement) -> str:
        if not a:
            return "0"
        parts = []
        for m in sorted(a, key=lambda mm: (self.ideg(mm), mm)):
            factors = [self.label(v) + (f"^{e}" if e > 1 else "") for v, e in m]
            coeff = format_poly(a[m])
            if not factors:
                parts.append(coeff)
            elif coeff == "1":
                parts.append("*".join(factors))
            elif coeff == "-1":
                parts.append("-" + "*".join(factors))
            else:
                parts.append(f"({coeff})*" + "*".join(factors))
        return " + ".join(parts)

    def dump(self) -> str:
        """One line per variable: T[i][j] : hdeg=i, idet=d, diff=..."""
        lines = []
        for var in self.variables:
            lines.append(f"{self.label(var.id)} : hdeg={var.hdeg}, idet={var.ideg}, "
                         f"diff={self.format_element(var.diff)}")
        return "\n".join(lines)


def _element_degrees(X: TateResolvent, z: DgElement) -> Tuple[int, int]:
    hdegs = {X.hdeg(m) for m in z}
    idegs = set()
    for m, c in z.items():
        for mono in c.keys():
            idegs.add(sum(mono) + X.ideg(m))
    if len(hdegs) != 1 or len(idegs) != 1:
        raise StructuralError("cycle must be homogeneous in both degrees")
    return hdegs.pop(), idegs.pop()


def adjoin_variable(X: TateResolvent, z: DgElement) -> TateResolvent:
    """
    X<T | delta(T) = z> for a cycle z of homological degree i >= 1.

    Args:
        X: Resolvent
        z: Homogeneous cycle

    Returns:
        A new resolvent with one more variable of degree i + 1
    """
    if not z:
        raise PreconditionError("cannot adjoin a variable killing the zero element")
    i, d = _element_degrees(X, z)
    if i < 1:
        raise PreconditionError("cycles of homological degree 0 are not killed by adjunction")
    if X.differential(z):
        raise PreconditionError(f"{X.format_element(z)} is not a cycle")
    Y = TateResolvent(X.ideal, X.variables, X.bound, X.config)
    var = Y._append(i + 1, d, z)
    square = {((var.id, 1),): Y.ring.one}
    if Y.differential(Y.differential(square)):
        raise InvariantError("delta^2 does not vanish on the new variable")
    if not var.odd:
        power = {((var.id, 2),): Y.ring.one}
        if Y.differential(Y.differential(power)):
            raise InvariantError("delta^2 does not vanish on the square of the new variable")
    return Y


def step_window(d_max: int, i: int, slack: int, cap: int) -> int:
    """Internal degree the search for cycles killing H_{i-1} starts from."""
    return min(d_max + (i - 1) * (d_max - 1) + slack, cap)


def minimal_resolvent(I: Ideal, D: int, config: EngineConfig = DEFAULT_CONFIG, verify: bool = True) -> TateResolvent:
    """
    The minimal resolvent of R -> R/I up to homological degree D.

    Each step scans cycles from its step window upwards and keeps widening
    until the adjoined variables kill H_{i-1} in every internal degree up to
    the cap (D+1)*d_max, or the configured degree cap. Homology left above
    the cap marks the step in `window_limited`.

    Args:
        I: Proper homogeneous ideal inside m^2, minimally generated
        D: Homological bound, D >= 2
        config: Engine configuration
        verify: Check acyclicity below each step inside its window

    Returns:
        TateResolvent with e_1 = mu(I) and e_i = mu(H_{i-1}(F_{i-1}X))
    """
    if D < 2:
        raise PreconditionError("the resolvent bound D must be at least 2")
    if I.is_unit():
        raise PreconditionError("the unit ideal has no resolvent")
    gens = I.generators
    minimal = I.minimal_generators()
    if len(minimal) < len(gens):
        extra = [format_poly(g) for g in gens if not any(g == h for h in minimal)]
        raise PreconditionError(f"trim first: {', '.join(extra)} lies in the ideal of the other generators")
    for g in minimal:
        if sum(g.LM) < 2:
            raise PreconditionError(f"trim first: generator {format_poly(g)} is linear, the ideal must lie in m^2")
    X = TateResolvent(I, bound=D, config=config)
    for g in minimal:
        X._append(1, sum(g.LM), {(): g})
    d_max = max((sum(g.LM) for g in minimal), default=1)
    cap = config.degree_cap if config.degree_cap is not None else (D + 1) * max(d_max, 1)
    X.cap = cap
    R = X.R
    for i in range(2, D + 1):
        degrees = [X.ideg(m) for m in X.monomials(i - 1)]
        outgoing = X.differential_matrix(i - 1)
        incoming = X.differential_matrix(i)
        cycles, complete = homology_cycles(R, degrees, outgoing, incoming,
                                           window=step_window(d_max, i, config.degree_slack, cap), ceiling=cap)
        window = max([step_window(d_max, i, config.degree_slack, cap)] + cycles.col_degrees)
        X.killed_hilbert[i] = [homology_hilbert(R, degrees, outgoing, incoming, t) for t in range(window + 1)]
        for c in range(cycles.ncols):
            X._append(i, cycles.col_degrees[c], X.element(i - 1, cycles.column(c)))
        X.windows[i] = window
        if not complete:
            X.window_limited.append(i)
            logger.warning("resolvent step %d: homology left above the internal degree cap %d", i, cap)
        logger.info("resolvent step %d: adjoined %d variables (window %d)", i, cycles.ncols, window)
        if verify and cycles.ncols:
            incoming = X.differential_matrix(i)
            outgoing = X.differential_matrix(i - 1)
            for t in range(window + 1):
                if homology_hilbert(R, degrees, outgoing, incoming, t):
                    raise InvariantError(f"H_{i - 1} survives in internal degree {t} after step {i}")
    return X


def verify_resolvent(X: TateResolvent) -> Dict[str, bool]:
    """
    Structural checks of a constructed resolvent.

    Returns:
        Flags for delta^2 = 0 on the generators, acyclicity below the bound
        in every internal degree up to the cap, the filtration degree
        condition and minimality; "window_limited" is set when some step
        left homology above the cap
    """
    delta_squared = all(not X.differential(X.differential({((v.id, 1),): X.ring.one})) for v in X.variables)
    acyclic = True
    limited = False
    for i in X.windows:
        j = i - 1
        degrees = [X.ideg(m) for m in X.monomials(j)]
        first = first_homology_degree(X.R, degrees, X.differential_matrix(j), X.differential_matrix(j + 1))
        if first is None:
            continue
        if X.cap is not None and first > X.cap:
            limited = True
        else:
            acyclic = False
    filtration = all(max(X.variables[v].hdeg for v, _ in m) <= h
                     for h in range(1, X.bound + 1) for m in X.monomials(h))
    return {"delta_squared": delta_squared, "acyclic": acyclic, "filtration": filtration,
            "minimal": X.is_minimal(), "window_limited": limited}


def resolvent_dump(X: TateResolvent) -> str:
    return X.dump()
