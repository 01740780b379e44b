import pytest

from src.errors import StructuralError
from src.poly.ring import (PolyRing, compare_monomials, degree, format_poly, homogeneous_components,
                           is_homogeneous, monomials_of_degree, poly_arith, ring_of)


@pytest.fixture
def qxy():
    return PolyRing(["x", "y"])


def test_ring_basics(qxy):
    assert repr(qxy) == "Q[x,y]"
    assert qxy.n == 2
    x, y = qxy.gens
    assert qxy.variable("y") == y
    assert qxy.monomial((2, 1), 3) == 3 * x**2 * y
    assert ring_of(x) == qxy


def test_ring_rejects_bad_declarations():
    with pytest.raises(StructuralError):
        PolyRing([])
    with pytest.raises(StructuralError):
        PolyRing(["x", "x"])
    with pytest.raises(StructuralError):
        PolyRing(["x"], "revlex")


def test_arithmetic_is_exact(qxy):
    x, y = qxy.gens
    assert poly_arith("add", x + y, x - y) == 2 * x
    assert poly_arith("subtract", x, x) == qxy.zero
    assert poly_arith("multiply", x - y, x + y) == x**2 - y**2
    with pytest.raises(StructuralError):
        poly_arith("multiply", x, PolyRing(["z"]).gens[0])


def test_monomial_orders():
    # degrevlex breaks ties by the smallest power of the last variable
    assert compare_monomials((1, 0, 1), (0, 2, 0), "degrevlex") == -1
    assert compare_monomials((1, 0, 1), (0, 2, 0), "deglex") == 1
    assert compare_monomials((1, 0, 0), (0, 3, 0), "lex") == 1
    assert compare_monomials((1, 0, 0), (0, 3, 0), "deglex") == -1


def test_monomials_of_degree_count_and_order():
    monos = monomials_of_degree(3, 2)
    assert len(monos) == 6
    assert monos[0] == (2, 0, 0)
    assert monomials_of_degree(2, -1) == []


def test_degrees_and_components(qxy):
    x, y = qxy.gens
    p = x**2 + y
    assert degree(p) == 2
    assert degree(qxy.zero) is None
    assert not is_homogeneous(p)
    assert is_homogeneous(x * y - y**2)
    assert homogeneous_components(p) == [(1, y), (2, x**2)]


def test_format_poly(qxy):
    x, y = qxy.gens
    assert format_poly(qxy.zero) == "0"
    assert format_poly(x**2) == "x^2"
    assert format_poly(x**2 - 2 * x * y) == "x^2 - 2*x*y"
    assert format_poly(x / 2) == "1/2*x"
