"""
Homogeneous ideals, reduced Groebner bases and the leading-term invariants
(Krull dimension, Hilbert series) read off them.
"""

import logging
from itertools import combinations
from math import comb
from typing import Dict, List, Optional, Sequence

from sympy.polys.domains import QQ
from sympy.polys.rings import PolyElement

from src.errors import StructuralError
from src.poly.ring import Monomial, PolyRing, format_poly, is_homogeneous, monomial_divides, monomials_of_degree

logger = logging.getLogger(__name__)

_ZERO_IDEALS: Dict[PolyRing, "Ideal"] = {}


def spoly(f: PolyElement, g: PolyElement, lmf=None, lmg=None) -> PolyElement:
    """Return the s-polynomial of monic polynomials f and g."""
    lmf = f.LM if lmf is None else lmf
    lmg = g.LM if lmg is None else lmg
    R = f.ring
    lcm = R.monomial_lcm(lmf, lmg)
    s1 = f.mul_monom(R.monomial_div(lcm, lmf))
    s2 = g.mul_monom(R.monomial_div(lcm, lmg))
    return s1 - s2


def select(G: List[PolyElement], P: set) -> tuple:
    """Normal selection strategy: the pair with the smallest lcm."""
    R = G[0].ring
    return min(P, key=lambda p: (R.order(R.monomial_lcm(G[p[0]].LM, G[p[1]].LM)), p))


def update(G: List[PolyElement], P: set, f: PolyElement, lmG: List[Monomial]) -> tuple:
    """
    Add f to the basis and update the pair set with the Gebauer-Moeller criteria.

    Args:
        G: Current basis
        P: Current pair set
        f: New monic basis element
        lmG: Leading monomials of G

    Returns:
        Tuple of (new basis, new pair set)
    """
    lmf = f.LM
    R = f.ring
    lcm = R.monomial_lcm
    mul = R.monomial_mul
    div = R.monomial_div

    P = {p for p in P if (not div(lcm(lmG[p[0]], lmG[p[1]]), lmf) or
                          lcm(lmG[p[0]], lmG[p[1]]) == lcm(lmG[p[0]], lmf) or
                          lcm(lmG[p[0]], lmG[p[1]]) == lcm(lmG[p[1]], lmf))}
    lcm_dict: Dict[Monomial, List[int]] = {}
    for i in range(len(G)):
        lcm_dict.setdefault(lcm(lmG[i], lmf), []).append(i)
    minimalized_lcms = []
    for L in sorted(lcm_dict.keys(), key=R.order):
        if all(not div(L, L_) for L_ in minimalized_lcms):
            minimalized_lcms.append(L)
    P_ = set()
    for L in minimalized_lcms:
        if not any(lcm(lmG[i], lmf) == mul(lmG[i], lmf) for i in lcm_dict[L]):
            P_.add((min(lcm_dict[L]), len(G)))
    return G + [f], P | P_


def minimalize(G: List[PolyElement]) -> List[PolyElement]:
    """Return a minimal Groebner basis from an arbitrary Groebner basis G."""
    if not G:
        return []
    R = G[0].ring
    Gmin: List[PolyElement] = []
    for f in sorted(G, key=lambda h: R.order(h.LM)):
        if all(not R.monomial_div(f.LM, g.LM) for g in Gmin):
            Gmin.append(f)
    return Gmin


def interreduce(G: List[PolyElement]) -> List[PolyElement]:
    """Return the reduced Groebner basis from a minimal Groebner basis G."""
    Gred = []
    for i in range(len(G)):
        rest = G[:i] + G[i + 1:]
        g = G[i].rem(rest) if rest else G[i]
        Gred.append(g.monic())
    return Gred


def buchberger(F: Sequence[PolyElement]) -> List[PolyElement]:
    """
    Buchberger's algorithm with normal selection and Gebauer-Moeller elimination.

    Args:
        F: Nonzero polynomials of one ring

    Returns:
        The reduced Groebner basis, sorted by increasing leading monomial
    """
    F = [f for f in F if f]
    if not F:
        return []
    R = F[0].ring
    G: List[PolyElement] = []
    lmG: List[Monomial] = []
    P: set = set()
    for f in F:
        f = f.monic()
        G, P = update(G, P, f, lmG)
        lmG.append(f.LM)

    reductions = 0
    while P:
        i, j = select(G, P)
        P.remove((i, j))
        s = spoly(G[i], G[j], lmf=lmG[i], lmg=lmG[j])
        r = s.rem(G)
        reductions += 1
        if r:
            r = r.monic()
            G, P = update(G, P, r, lmG)
            lmG.append(r.LM)

    basis = interreduce(minimalize(G))
    logger.debug("buchberger: %d generators, %d reductions, basis of size %d", len(F), reductions, len(basis))
    return sorted(basis, key=lambda g: R.order(g.LM))


def buchberger_criterion(G: Sequence[PolyElement]) -> bool:
    """True iff every s-polynomial of G reduces to zero modulo G."""
    G = list(G)
    for i, j in combinations(range(len(G)), 2):
        if spoly(G[i].monic(), G[j].monic()).rem(G):
            return False
    return True


class Ideal:
    """
    A homogeneous ideal of a PolyRing.

    The reduced Groebner basis, monomial normal forms and standard monomials
    are computed on first use and cached.
    """

    def __init__(self, ring: PolyRing, generators: Sequence[PolyElement] = ()):
        """
        Initialize the ideal.

        Args:
            ring: Ambient ring
            generators: Homogeneous polynomials of the ring; zeros are dropped
        """
        gens = []
        for g in generators:
            if not ring.owns(g):
                raise StructuralError(f"generator {g} does not belong to {ring}")
            if not is_homogeneous(g):
                raise StructuralError(f"generator {format_poly(g)} is not homogeneous")
            if g:
                gens.append(g)
        self.ring = ring
        self.generators = gens
        self._basis: Optional[List[PolyElement]] = None
        self._nf: Dict[Monomial, Dict[Monomial, object]] = {}
        self._standard: Dict[int, List[Monomial]] = {}
        self._pieces: Dict[tuple, object] = {}
        self._top: Optional[tuple] = None

    @classmethod
    def zero(cls, ring: PolyRing) -> "Ideal":
        """The zero ideal, shared per ring so that its caches are reused."""
        found = _ZERO_IDEALS.get(ring)
        if found is None:
            found = _ZERO_IDEALS[ring] = cls(ring, [])
        return found

    @classmethod
    def maximal(cls, ring: PolyRing) -> "Ideal":
        return cls(ring, ring.gens)

    @property
    def basis(self) -> List[PolyElement]:
        if self._basis is None:
            self._basis = buchberger(self.generators)
        return self._basis

    @property
    def leading_monomials(self) -> List[Monomial]:
        return [g.LM for g in self.basis]

    def is_zero(self) -> bool:
        return not self.generators

    def is_unit(self) -> bool:
        return any(g.is_ground for g in self.basis)

    def max_degree(self) -> int:
        return max((sum(g.LM) for g in self.generators), default=0)

    def normal_form(self, f: PolyElement) -> PolyElement:
        if not self.generators or not f:
            return f
        return f.rem(self.basis)

    def contains(self, f: PolyElement) -> bool:
        return not self.normal_form(f)

    def contains_ideal(self, other: "Ideal") -> bool:
        return all(self.contains(g) for g in other.generators)

    def same_as(self, other: "Ideal") -> bool:
        """Equality of reduced Groebner bases."""
        return self.ring == other.ring and self.basis == other.basis

    def monomial_normal_form(self, m: Monomial) -> Dict[Monomial, object]:
        """Normal form of the monomial x^m as {standard monomial: coefficient}."""
        cached = self._nf.get(m)
        if cached is not None:
            return cached
        if not any(monomial_divides(lm, m) for lm in self.leading_monomials):
            nf = {m: QQ.one}
        else:
            nf = dict(self.ring.monomial(m).rem(self.basis).items())
        self._nf[m] = nf
        return nf

    def standard_monomials(self, d: int) -> List[Monomial]:
        """Monomials of degree d outside the leading-term ideal, largest first."""
        if d < 0:
            return []
        cached = self._standard.get(d)
        if cached is None:
            lms = self.leading_monomials
            cached = [m for m in monomials_of_degree(self.ring.n, d, self.ring.order_tag)
                      if not any(monomial_divides(lm, m) for lm in lms)]
            self._standard[d] = cached
        return cached

    def hilbert_function(self, d: int) -> int:
        """dim_Q (R/I)_d."""
        return len(self.standard_monomials(d))

    def top_degree(self) -> Optional[int]:
        """
        Largest d with (R/I)_d != 0 when R/I is Artinian.

        Returns:
            The top degree, -1 for the unit ideal, None when dim R/I > 0
        """
        if self._top is None:
            top = None
            if krull_dimension(self) <= 0:
                top = -1
                while self.standard_monomials(top + 1):
                    top += 1
            self._top = (top,)
        return self._top[0]

    def minimal_generators(self) -> List[PolyElement]:
        """
        Trim the generating set degree by degree.

        Returns:
            Generators, in increasing degree, none in the ideal of the others
        """
        kept: List[PolyElement] = []
        for g in sorted(self.generators, key=lambda h: (sum(h.LM), self.ring.order(h.LM))):
            if not kept or Ideal(self.ring, kept).normal_form(g):
                kept.append(g)
        return kept

    def __repr__(self) -> str:
        return "(" + ", ".join(format_poly(g) for g in self.generators) + ")"


def groebner_basis(I: Ideal) -> Ideal:
    """Compute and cache the reduced Groebner basis of I; return I."""
    I.basis
    return I


def normal_form(f: PolyElement, I: Ideal) -> PolyElement:
    return I.normal_form(f)


def krull_dimension(I: Ideal) -> int:
    """
    Krull dimension of R/I from the leading-term ideal.

    Returns:
        Largest size of a variable subset containing the support of no leading
        monomial; -1 for the unit ideal
    """
    if I.is_unit():
        return -1
    supports = [frozenset(i for i, e in enumerate(lm) if e) for lm in I.leading_monomials]
    n = I.ring.n
    for size in range(n, -1, -1):
        for subset in combinations(range(n), size):
            chosen = set(subset)
            if not any(s <= chosen for s in supports):
                return size
    return 0


def height(I: Ideal) -> int:
    """n - dim R/I; the unit ideal gets height n + 1."""
    return I.ring.n - krull_dimension(I)


def _colon_monomials(gens: List[Monomial], m: Monomial) -> List[Monomial]:
    return [tuple(max(a - b, 0) for a, b in zip(g, m)) for g in gens]


def _minimal_monomials(gens: List[Monomial]) -> List[Monomial]:
    gens = sorted(set(gens), key=sum)
    kept: List[Monomial] = []
    for g in gens:
        if not any(monomial_divides(k, g) for k in kept):
            kept.append(g)
    return kept


def monomial_numerator(gens: List[Monomial]) -> Dict[int, int]:
    """N(L) for the monomial ideal L with N(L)/(1-t)^n the Hilbert series of R/L."""
    gens = _minimal_monomials(gens)
    if not gens:
        return {0: 1}
    if len(gens) == 1:
        d = sum(gens[0])
        return {0: 1, d: -1} if d else {}
    m = gens[-1]
    rest = gens[:-1]
    result = dict(monomial_numerator(rest))
    shift = sum(m)
    for k, c in monomial_numerator(_colon_monomials(rest, m)).items():
        result[k + shift] = result.get(k + shift, 0) - c
    return {k: c for k, c in result.items() if c}


def hilbert_numerator(I: Ideal) -> List[int]:
    """
    Coefficients of N(t) with Hilbert series of R/I equal to N(t)/(1-t)^n.

    Args:
        I: Homogeneous ideal

    Returns:
        Integer coefficients, index = power of t
    """
    num = monomial_numerator(I.leading_monomials)
    if not num:
        return [0]
    top = max(num)
    return [num.get(k, 0) for k in range(top + 1)]


def hilbert_series(I: Ideal, N: int):
    """
    Truncated Hilbert series of R/I to order N.

    Args:
        I: Homogeneous ideal
        N: Truncation order

    Returns:
        TruncatedSeries with coefficients dim (R/I)_0 .. dim (R/I)_N
    """
    from src.series.truncated import TruncatedSeries

    if N < 0:
        raise StructuralError("truncation order must be non-negative")
    num = hilbert_numerator(I)
    n = I.ring.n
    coeffs = []
    for d in range(N + 1):
        coeffs.append(sum(c * comb(d - k + n - 1, n - 1) for k, c in enumerate(num) if k <= d))
    return TruncatedSeries(coeffs)
