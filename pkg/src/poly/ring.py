"""
Exact polynomial arithmetic over the rationals in a standard-graded ring.

Polynomials are sympy ``PolyElement`` objects over ``QQ``; this module fixes
the ring, the monomial order and the handful of graded helpers the rest of the
engine needs.
"""

from itertools import combinations_with_replacement
from typing import Dict, List, Optional, Sequence, Tuple

from sympy.polys.domains import QQ
from sympy.polys.orderings import grevlex, grlex, lex
from sympy.polys.rings import PolyElement, ring

from src.errors import StructuralError

Monomial = Tuple[int, ...]

ORDERS = {"degrevlex": grevlex, "deglex": grlex, "lex": lex}

_RINGS: Dict[object, "PolyRing"] = {}


class PolyRing:
    """
    The polynomial ring Q[x1, ..., xn] with a fixed monomial order.

    All variables have weight 1.
    """

    def __init__(self, names: Sequence[str], order: str = "degrevlex"):
        """
        Initialize the ring.

        Args:
            names: Distinct variable names, largest variable first
            order: degrevlex, deglex or lex
        """
        names = tuple(names)
        if not names:
            raise StructuralError("a ring needs at least one variable")
        if len(set(names)) != len(names):
            raise StructuralError(f"repeated variable in {', '.join(names)}")
        if order not in ORDERS:
            raise StructuralError(f"unknown monomial order '{order}'")
        self.names = names
        self.order_tag = order
        self.order = ORDERS[order]
        self.ring = ring(",".join(names), QQ, self.order)[0]
        _RINGS[self.ring] = self

    @property
    def n(self) -> int:
        return len(self.names)

    @property
    def gens(self) -> List[PolyElement]:
        return list(self.ring.gens)

    @property
    def zero(self) -> PolyElement:
        return self.ring.zero

    @property
    def one(self) -> PolyElement:
        return self.ring.one

    def variable(self, name: str) -> PolyElement:
        return self.ring.gens[self.names.index(name)]

    def monomial(self, exponents: Monomial, coeff=1) -> PolyElement:
        """Return coeff * x^exponents as a polynomial."""
        if len(exponents) != self.n:
            raise StructuralError(f"monomial {exponents} does not live in a ring with {self.n} variables")
        return self.ring.from_dict({tuple(exponents): QQ.convert(coeff)})

    def from_dict(self, terms: Dict[Monomial, object]) -> PolyElement:
        return self.ring.from_dict({m: QQ.convert(c) for m, c in terms.items() if c})

    def owns(self, p: PolyElement) -> bool:
        return p.ring == self.ring

    def __eq__(self, other) -> bool:
        return isinstance(other, PolyRing) and self.names == other.names and self.order_tag == other.order_tag

    def __hash__(self) -> int:
        return hash((self.names, self.order_tag))

    def __repr__(self) -> str:
        return f"Q[{','.join(self.names)}]"


def ring_of(p: PolyElement) -> "PolyRing":
    """The PolyRing a sympy polynomial was created in."""
    found = _RINGS.get(p.ring)
    if found is None:
        raise StructuralError("polynomial does not belong to a declared ring")
    return found


def compare_monomials(a: Monomial, b: Monomial, order: str = "degrevlex") -> int:
    """
    Compare two exponent vectors.

    Args:
        a: First monomial
        b: Second monomial
        order: degrevlex, deglex or lex

    Returns:
        -1, 0 or 1 for a < b, a == b, a > b
    """
    if len(a) != len(b):
        raise StructuralError(f"cannot compare {a} and {b}: variable counts differ")
    if order not in ORDERS:
        raise StructuralError(f"unknown monomial order '{order}'")
    key = ORDERS[order]
    ka, kb = key(tuple(a)), key(tuple(b))
    return (ka > kb) - (ka < kb)


def poly_arith(kind: str, p: PolyElement, q: PolyElement) -> PolyElement:
    """
    Exact add/subtract/multiply of two polynomials of the same ring.

    Args:
        kind: add, subtract or multiply
        p: Left operand
        q: Right operand

    Returns:
        The result in canonical form
    """
    if p.ring != q.ring:
        raise StructuralError("polynomials belong to different rings")
    if kind == "add":
        return p + q
    if kind == "subtract":
        return p - q
    if kind == "multiply":
        return p * q
    raise StructuralError(f"unknown arithmetic kind '{kind}'")


def total_degree(m: Monomial) -> int:
    return sum(m)


def degree(p: PolyElement) -> Optional[int]:
    """Largest total degree of a term of p, None for the zero polynomial."""
    if not p:
        return None
    return max(sum(m) for m in p.keys())


def is_homogeneous(p: PolyElement) -> bool:
    return len({sum(m) for m in p.keys()}) <= 1


def homogeneous_components(p: PolyElement) -> List[Tuple[int, PolyElement]]:
    """
    Split p into homogeneous pieces.

    Args:
        p: Any polynomial

    Returns:
        (degree, component) pairs sorted by degree; empty for p = 0
    """
    buckets: Dict[int, Dict[Monomial, object]] = {}
    for m, c in p.items():
        buckets.setdefault(sum(m), {})[m] = c
    return [(d, p.ring.from_dict(buckets[d])) for d in sorted(buckets)]


def monomials_of_degree(n: int, d: int, order: str = "degrevlex") -> List[Monomial]:
    """All exponent vectors of total degree d in n variables, largest first."""
    if d < 0:
        return []
    result = []
    for combo in combinations_with_replacement(range(n), d):
        exps = [0] * n
        for i in combo:
            exps[i] += 1
        result.append(tuple(exps))
    key = ORDERS[order]
    result.sort(key=key, reverse=True)
    return result


def monomial_divides(a: Monomial, b: Monomial) -> bool:
    return all(x <= y for x, y in zip(a, b))


def format_coefficient(c) -> str:
    if c.denominator == 1:
        return str(c.numerator)
    return f"{c.numerator}/{c.denominator}"


def format_poly(p: PolyElement) -> str:
    """Render p in the problem-file syntax, e.g. ``x*z - y^2``."""
    if not p:
        return "0"
    names = p.ring.symbols
    parts = []
    for m, c in p.terms():
        factors = []
        for name, e in zip(names, m):
            if e == 1:
                factors.append(str(name))
            elif e > 1:
                factors.append(f"{name}^{e}")
        sign = "-" if c < 0 else "+"
        mag = -c if c < 0 else c
        if not factors:
            body = format_coefficient(mag)
        elif mag == 1:
            body = "*".join(factors)
        else:
            body = format_coefficient(mag) + "*" + "*".join(factors)
        parts.append((sign, body))
    text = ("-" if parts[0][0] == "-" else "") + parts[0][1]
    for sign, body in parts[1:]:
        text += f" {sign} {body}"
    return text
