from pathlib import Path

import pytest
from sympy.polys.domains import QQ

from src.errors import ParseError
from src.parser.parser import (ANALYSES, DEFAULT_ANALYSES, echo_problem, parse_polynomials, parse_problem,
                               tokenize)

PROBLEMS = Path(__file__).resolve().parent.parent / "problems"


def test_minimal_problem_gets_the_default_analyses():
    spec = parse_problem("ring Q[x]; ideal (x^2);")
    x = spec.ring.variable("x")
    assert spec.generators == [x ** 2]
    assert spec.analyses == DEFAULT_ANALYSES
    assert spec.bound is None and spec.regseq is None


def test_twisted_cubic_problem():
    spec = parse_problem((PROBLEMS / "twisted-cubic.calg").read_text(encoding="utf-8"), "twisted-cubic")
    assert spec.ring.n == 4
    assert len(spec.generators) == 3
    assert spec.analyses == ("classify", "resolve", "koszul", "cotangent")
    assert spec.bound == 6
    assert spec.config().bound == 6
    assert spec.name == "twisted-cubic"


def test_analyze_all_and_overrides():
    spec = parse_problem("ring Q[x,y]; ideal (x^2, y^3); analyze all; bound D=5; series N=30; seed 3; cap C=20;")
    assert spec.analyses == ANALYSES
    assert (spec.bound, spec.series_order, spec.seed, spec.degree_cap) == (5, 30, 3, 20)
    config = spec.config()
    assert (config.bound, config.series_order, config.seed, config.degree_cap) == (5, 30, 3, 20)


def test_analyses_come_out_in_canonical_order():
    spec = parse_problem("ring Q[x,y]; ideal (x^2, y^3); analyze series, classify;")
    assert spec.analyses == ("classify", "series")


def test_implicit_multiplication_and_rationals():
    spec = parse_problem("ring Q[x,y]; ideal (2xy + 1/2 x^2, (x - y)^2);")
    x, y = spec.ring.gens
    assert spec.generators == [2 * x * y + x ** 2 * QQ(1, 2), x ** 2 - 2 * x * y + y ** 2]


def test_inhomogeneous_generator_names_the_stray_component():
    with pytest.raises(ParseError) as info:
        parse_problem("ring Q[x,y]; ideal (x^2 + y);")
    assert "not homogeneous" in str(info.value)
    assert str(info.value).endswith(": y")


def test_errors_carry_line_and_column():
    with pytest.raises(ParseError) as info:
        parse_problem("ring Q[x];\nideal (x^2, z);")
    assert (info.value.line, info.value.column) == (2, 13)
    assert "unknown variable 'z'" in str(info.value)


@pytest.mark.parametrize("text, message", [
    ("ring Q[x]; order lex; ideal (x^2);", "before the ring"),
    ("ring Q[x]; ideal (x^2); bound D=0;", "positive"),
    ("ring Q[x];", "missing ideal"),
    ("ideal (x^2);", "before the ring declaration"),
    ("ring Z[x]; ideal (x^2);", "rationals"),
    ("ring Q[x,x]; ideal (x^2);", "repeated variable"),
    ("ring Q[x]; ideal (x^2); analyze everything;", "unknown analysis"),
    ("ring Q[x]; ideal (x^2) bound D=3;", "expected ';'"),
    ("ring Q[x]; ideal (x^2 $);", "unexpected character"),
    ("ring Q[x]; ideal (1/0 x^2);", "division by zero"),
])
def test_parse_errors(text, message):
    with pytest.raises(ParseError, match=message):
        parse_problem(text)


def test_tokenizer_skips_comments():
    tokens = tokenize("# a comment\nring Q[x];")
    assert [t.text for t in tokens] == ["ring", "Q", "[", "x", "]", ";", ""]
    assert tokens[0].line == 2


def test_parse_polynomials_over_a_known_ring():
    spec = parse_problem("ring Q[x,y]; ideal (x^2, y^2);")
    x, y = spec.ring.gens
    assert parse_polynomials("x^2, x*y", spec.ring) == [x ** 2, x * y]
    assert parse_polynomials("(y^3)", spec.ring) == [y ** 3]
    with pytest.raises(ParseError):
        parse_polynomials("x^2 + y", spec.ring)


@pytest.mark.parametrize("path", sorted(PROBLEMS.glob("*.calg")), ids=lambda p: p.stem)
def test_echo_reads_back_to_the_same_problem(path):
    spec = parse_problem(path.read_text(encoding="utf-8"), path.stem)
    assert parse_problem(echo_problem(spec)) == spec


def test_echo_keeps_the_monomial_order():
    spec = parse_problem("order lex; ring Q[x,y]; ideal (x^2 - y^2);")
    echo = echo_problem(spec)
    assert echo.startswith("order lex;\n")
    assert parse_problem(echo).ring.order_tag == "lex"
