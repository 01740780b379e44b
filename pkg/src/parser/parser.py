"""
Parser component for converting problem files into problem specs.

A problem file declares a ring, an ideal and what to compute:

    ring Q[x,y,z,w];
    order degrevlex;
    ideal (x*z - y^2, x*w - y*z, y*w - z^2);
    analyze classify, cotangent;
    bound D=6;
    series N=40;
    seed 7;
"""

import logging
import re
from dataclasses import dataclass
from typing import Dict, List, Optional, Tuple

from sympy.polys.domains import QQ
from sympy.polys.rings import PolyElement

from src.config import DEFAULT_CONFIG, EngineConfig
from src.errors import ParseError
from src.groebner.ideal import Ideal
from src.poly.ring import ORDERS, PolyRing, format_poly, homogeneous_components

logger = logging.getLogger(__name__)

ANALYSES = ("classify", "resolve", "koszul", "tate", "cotangent", "deviations", "series", "link")
DEFAULT_ANALYSES = ("classify", "resolve")

TOKEN = re.compile(r"(?P<space>[ \t\r]+)|(?P<newline>\n)|(?P<comment>#[^\n]*)|(?P<number>\d+)"
                   r"|(?P<name>[A-Za-z_][A-Za-z0-9_]*)|(?P<symbol>[\[\](),;=+\-*/^])")


@dataclass
class Token:
    kind: str
    text: str
    line: int
    column: int


@dataclass
class ProblemSpec:
    """A parsed problem: ring, generators, analyses and optional overrides."""

    ring: PolyRing
    generators: List[PolyElement]
    analyses: Tuple[str, ...] = DEFAULT_ANALYSES
    bound: Optional[int] = None
    series_order: Optional[int] = None
    seed: Optional[int] = None
    degree_cap: Optional[int] = None
    regseq: Optional[List[PolyElement]] = None
    name: str = ""

    def ideal(self) -> Ideal:
        return Ideal(self.ring, self.generators)

    def config(self, base: EngineConfig = DEFAULT_CONFIG) -> EngineConfig:
        """The engine configuration with the overrides of this problem applied."""
        return base.merged(bound=self.bound, series_order=self.series_order, seed=self.seed,
                           degree_cap=self.degree_cap, monomial_order=self.ring.order_tag)

    def __eq__(self, other) -> bool:
        if not isinstance(other, ProblemSpec):
            return NotImplemented
        return (self.ring == other.ring and self.generators == other.generators
                and self.analyses == other.analyses and self.bound == other.bound
                and self.series_order == other.series_order and self.seed == other.seed
                and self.degree_cap == other.degree_cap and self.regseq == other.regseq)


def tokenize(text: str) -> List[Token]:
    """
    Split problem text into tokens.

    Args:
        text: Problem file contents

    Returns:
        Tokens without whitespace and comments, ending with an "end" token
    """
    tokens = []
    line, start, pos = 1, 0, 0
    while pos < len(text):
        match = TOKEN.match(text, pos)
        if match is None:
            raise ParseError(f"unexpected character '{text[pos]}'", line, pos - start + 1)
        kind = match.lastgroup
        if kind == "newline":
            line += 1
            start = match.end()
        elif kind not in ("space", "comment"):
            tokens.append(Token(kind, match.group(), line, match.start() - start + 1))
        pos = match.end()
    tokens.append(Token("end", "", line, pos - start + 1))
    return tokens


class ProblemParser:
    """
    Recursive-descent parser for problem files.
    """

    def __init__(self, text: str):
        """
        Initialize parser with the problem text.

        Args:
            text: Problem file contents
        """
        self.tokens = tokenize(text)
        self.pos = 0
        self.names: List[str] = []
        self.order = DEFAULT_CONFIG.monomial_order
        self.ring: Optional[PolyRing] = None
        self._starts: Dict[int, Token] = {}

    @property
    def current(self) -> Token:
        return self.tokens[self.pos]

    def advance(self) -> Token:
        token = self.tokens[self.pos]
        if token.kind != "end":
            self.pos += 1
        return token

    def error(self, message: str, token: Optional[Token] = None) -> ParseError:
        token = token or self.current
        return ParseError(message, token.line, token.column)

    def expect(self, text: str) -> Token:
        token = self.current
        if token.text != text:
            found = token.text or "end of input"
            raise self.error(f"expected '{text}' but found '{found}'")
        return self.advance()

    def accept(self, text: str) -> bool:
        if self.current.text == text:
            self.advance()
            return True
        return False

    def integer(self) -> int:
        token = self.current
        if token.kind != "number":
            raise self.error(f"expected a number but found '{token.text or 'end of input'}'")
        self.advance()
        return int(token.text)

    def keyed_integer(self, key: str) -> int:
        """`KEY=value` or a bare value."""
        if self.current.kind == "name" and self.current.text == key:
            self.advance()
            self.expect("=")
        return self.integer()

    def parse(self) -> ProblemSpec:
        """
        Parse the whole problem.

        Returns:
            ProblemSpec
        """
        generators: Optional[List[PolyElement]] = None
        analyses: Tuple[str, ...] = DEFAULT_ANALYSES
        overrides = {}
        regseq = None
        while self.current.kind != "end":
            keyword = self.current
            if keyword.kind != "name":
                raise self.error(f"expected a statement but found '{keyword.text}'")
            self.advance()
            if keyword.text == "ring":
                self.parse_ring(keyword)
            elif keyword.text == "order":
                name = self.advance()
                if name.text not in ORDERS:
                    raise self.error(f"unknown monomial order '{name.text}'", name)
                if self.ring is not None:
                    raise self.error("the order must be declared before the ring", keyword)
                self.order = name.text
            elif keyword.text == "ideal":
                self.require_ring(keyword)
                generators = self.parse_list()
                self.check_homogeneous(generators)
            elif keyword.text == "regseq":
                self.require_ring(keyword)
                regseq = self.parse_list()
                self.check_homogeneous(regseq)
            elif keyword.text == "analyze":
                analyses = self.parse_analyses()
            elif keyword.text == "bound":
                overrides["bound"] = self.positive(self.keyed_integer("D"), keyword)
            elif keyword.text == "series":
                overrides["series_order"] = self.positive(self.keyed_integer("N"), keyword)
            elif keyword.text == "seed":
                overrides["seed"] = self.integer()
            elif keyword.text == "cap":
                overrides["degree_cap"] = self.positive(self.keyed_integer("C"), keyword)
            else:
                raise self.error(f"unknown statement '{keyword.text}'", keyword)
            self.expect(";")
        if self.ring is None:
            raise self.error("missing ring declaration")
        if generators is None:
            raise self.error("missing ideal declaration")
        return ProblemSpec(self.ring, generators, analyses, regseq=regseq, **overrides)

    def positive(self, value: int, keyword: Token) -> int:
        if value <= 0:
            raise self.error(f"'{keyword.text}' needs a positive value", keyword)
        return value

    def require_ring(self, keyword: Token) -> None:
        if self.ring is None:
            raise self.error(f"'{keyword.text}' before the ring declaration", keyword)

    def parse_ring(self, keyword: Token) -> None:
        field_name = self.advance()
        if field_name.text not in ("Q", "QQ"):
            raise self.error(f"only the rationals are supported, not '{field_name.text}'", field_name)
        self.expect("[")
        names = []
        while True:
            token = self.current
            if token.kind != "name":
                raise self.error("expected a variable name", token)
            if token.text in names:
                raise self.error(f"repeated variable '{token.text}'", token)
            names.append(self.advance().text)
            if not self.accept(","):
                break
        self.expect("]")
        if self.ring is not None:
            raise self.error("the ring is declared twice", keyword)
        self.names = names
        self.ring = PolyRing(names, self.order)

    def parse_analyses(self) -> Tuple[str, ...]:
        chosen = []
        while True:
            token = self.advance()
            if token.text == "all":
                chosen.extend(ANALYSES)
            elif token.text in ANALYSES:
                chosen.append(token.text)
            else:
                raise self.error(f"unknown analysis '{token.text}'", token)
            if not self.accept(","):
                break
        return tuple(a for a in ANALYSES if a in chosen)

    def parse_list(self) -> List[PolyElement]:
        self.expect("(")
        items = []
        if self.accept(")"):
            return items
        while True:
            items.append((self.current, self.expression()))
            if not self.accept(","):
                break
        self.expect(")")
        self._starts = {id(p): t for t, p in items}
        return [p for _, p in items]

    def check_homogeneous(self, polys: List[PolyElement]) -> None:
        for p in polys:
            parts = homogeneous_components(p)
            if len(parts) > 1:
                top = parts[-1][0]
                stray = [format_poly(q) for d, q in parts if d != top]
                raise self.error(f"generator {format_poly(p)} is not homogeneous: {', '.join(stray)}",
                                 self._starts.get(id(p)))

    def expression(self) -> PolyElement:
        negative = False
        if self.current.text in ("+", "-"):
            negative = self.advance().text == "-"
        result = self.term()
        if negative:
            result = -result
        while self.current.text in ("+", "-"):
            sign = self.advance().text
            value = self.term()
            result = result + value if sign == "+" else result - value
        return result

    def term(self) -> PolyElement:
        result = self.factor()
        while True:
            if self.accept("*"):
                result = result * self.factor()
            elif self.current.kind in ("number", "name") or self.current.text == "(":
                result = result * self.factor()
            else:
                return result

    def factor(self) -> PolyElement:
        base = self.atom()
        if self.accept("^"):
            base = base ** self.integer()
        return base

    def atom(self) -> PolyElement:
        token = self.current
        ring = self.ring
        if token.kind == "number":
            self.advance()
            value = QQ(int(token.text))
            if self.accept("/"):
                denominator = self.integer()
                if denominator == 0:
                    raise self.error("division by zero", token)
                value = QQ(int(token.text), denominator)
            return ring.one * value
        if token.kind == "name":
            self.advance()
            if token.text in self.names:
                return ring.variable(token.text)
            if all(ch in self.names for ch in token.text):
                result = ring.one
                for ch in token.text:
                    result = result * ring.variable(ch)
                return result
            raise self.error(f"unknown variable '{token.text}'", token)
        if self.accept("("):
            value = self.expression()
            self.expect(")")
            return value
        raise self.error(f"unexpected '{token.text or 'end of input'}'", token)


def parse_problem(text: str, name: str = "") -> ProblemSpec:
    """
    Convenience function to parse a problem file.

    Args:
        text: Problem file contents
        name: Label kept on the problem

    Returns:
        ProblemSpec
    """
    parser = ProblemParser(text)
    spec = parser.parse()
    spec.name = name
    logger.debug("parsed problem %s: %d generators in %s", name or "<text>", len(spec.generators), spec.ring)
    return spec


def parse_polynomials(text: str, ring: PolyRing) -> List[PolyElement]:
    """
    Parse a comma-separated list of homogeneous polynomials over a known ring.

    Args:
        text: Polynomials, with or without surrounding parentheses
        ring: Ring the variables belong to

    Returns:
        The polynomials
    """
    text = text.strip()
    if not text.startswith("("):
        text = f"({text})"
    parser = ProblemParser(text)
    parser.ring = ring
    parser.names = list(ring.names)
    polys = parser.parse_list()
    if parser.current.kind != "end":
        raise parser.error(f"unexpected '{parser.current.text}'")
    parser.check_homogeneous(polys)
    return polys


def echo_problem(spec: ProblemSpec) -> str:
    """The canonical problem text of a spec; parse_problem reads it back to an equal spec."""
    lines = [
        f"order {spec.ring.order_tag};",
        f"ring Q[{','.join(spec.ring.names)}];",
        "ideal (" + ", ".join(format_poly(g) for g in spec.generators) + ");",
        "analyze " + ", ".join(spec.analyses) + ";",
    ]
    if spec.bound is not None:
        lines.append(f"bound D={spec.bound};")
    if spec.series_order is not None:
        lines.append(f"series N={spec.series_order};")
    if spec.seed is not None:
        lines.append(f"seed {spec.seed};")
    if spec.degree_cap is not None:
        lines.append(f"cap C={spec.degree_cap};")
    if spec.regseq is not None:
        lines.append("regseq (" + ", ".join(format_poly(g) for g in spec.regseq) + ");")
    return "\n".join(lines) + "\n"
