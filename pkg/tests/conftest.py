"""
Shared corpus fixtures. Resolvents are expensive and built once per module.
"""

import pytest

from src.config import DEFAULT_CONFIG
from src.groebner.ideal import Ideal
from src.koszul.tate import minimal_resolvent
from src.parser.parser import parse_polynomials
from src.poly.ring import PolyRing


def make_ideal(names, text, order="degrevlex"):
    ring = PolyRing(names, order)
    return Ideal(ring, parse_polynomials(text, ring))


@pytest.fixture(scope="session")
def double_point():
    """(x^2) in Q[x]."""
    return make_ideal(["x"], "x^2")


@pytest.fixture(scope="session")
def ci_23():
    """(x^2, y^3) in Q[x,y]."""
    return make_ideal(["x", "y"], "x^2, y^3")


@pytest.fixture(scope="session")
def m_square():
    """The square of the maximal ideal of Q[x,y]."""
    return make_ideal(["x", "y"], "x^2, x*y, y^2")


@pytest.fixture(scope="session")
def twisted_cubic():
    return make_ideal(["x", "y", "z", "w"], "x*z - y^2, x*w - y*z, y*w - z^2")


@pytest.fixture(scope="session")
def ci_three():
    """Three forms with pairwise coprime leading monomials x^2, y^3, z^2."""
    return make_ideal(["x", "y", "z", "w"], "x^2 + y*z, y^3 - z*w^2, z^2 + x*w")


@pytest.fixture(scope="session")
def ci_quadric_cubic():
    return make_ideal(["x", "y", "z"], "x^2 - y*z, y^3 + z^3")


@pytest.fixture(scope="session")
def mixed_aci():
    """(x^2, xy, y^3) in Q[x,y]."""
    return make_ideal(["x", "y"], "x^2, x*y, y^3")


@pytest.fixture(params=["double_point", "ci_23", "ci_quadric_cubic"])
def small_ci(request):
    return request.getfixturevalue(request.param)


@pytest.fixture(scope="module")
def config():
    return DEFAULT_CONFIG


@pytest.fixture(scope="module")
def m_square_resolvent(m_square):
    return minimal_resolvent(m_square, 6, DEFAULT_CONFIG)


@pytest.fixture(scope="module")
def ci_23_resolvent(ci_23):
    return minimal_resolvent(ci_23, 6, DEFAULT_CONFIG)


@pytest.fixture(scope="module")
def twisted_cubic_resolvent(twisted_cubic):
    return minimal_resolvent(twisted_cubic, 5, DEFAULT_CONFIG)
