import pytest

from src.config import EngineConfig
from src.errors import PreconditionError, StructuralError
from src.koszul.koszul import koszul_complex, koszul_homology_algebra, wedge_vectors
from src.koszul.tate import adjoin_variable, minimal_resolvent, step_window, verify_resolvent
from tests.conftest import make_ideal


def test_koszul_complex_ranks_and_degrees(m_square):
    K = koszul_complex(m_square.minimal_generators())
    assert K.ranks() == [1, 3, 3, 1]
    assert K.degrees(1) == [2, 2, 2]
    assert K.degrees(3) == [6]


def test_koszul_complex_needs_homogeneous_generators(twisted_cubic):
    x, y, z, w = twisted_cubic.ring.gens
    with pytest.raises(StructuralError):
        koszul_complex([x ** 2 + y])
    with pytest.raises(StructuralError):
        koszul_complex([])


def test_koszul_homology_of_a_regular_sequence(ci_23):
    assert koszul_homology_algebra(ci_23.minimal_generators(), 1).module.is_zero()


def test_koszul_homology_of_the_square_of_the_maximal_ideal(m_square):
    gens = m_square.minimal_generators()
    h1 = koszul_homology_algebra(gens, 1)
    assert h1.module.num_generators() == 2
    assert sorted(h1.cycles.col_degrees) == [3, 3]
    h2 = koszul_homology_algebra(gens, 2)
    assert h2.module.is_zero()
    assert h2.quotient.is_zero()


def test_koszul_homology_of_the_twisted_cubic(twisted_cubic):
    gens = twisted_cubic.minimal_generators()
    assert koszul_homology_algebra(gens, 1).module.num_generators() == 2
    assert koszul_homology_algebra(gens, 2).module.is_zero()


def test_wedge_of_basis_vectors_is_antisymmetric(ci_23):
    one, zero = ci_23.ring.one, ci_23.ring.zero
    e1, e2 = [one, zero], [zero, one]
    assert wedge_vectors(e1, e2, 1, 1, 2) == [one]
    assert wedge_vectors(e2, e1, 1, 1, 2) == [-one]
    assert wedge_vectors(e1, e1, 1, 1, 2) == [zero]


def test_resolvent_of_a_complete_intersection_stops_at_degree_one(ci_23_resolvent):
    assert ci_23_resolvent.counts() == [2, 0, 0, 0, 0, 0]
    assert ci_23_resolvent.is_minimal()


def test_resolvent_of_the_square_of_the_maximal_ideal(m_square_resolvent):
    counts = m_square_resolvent.counts()
    assert counts[:2] == [3, 2]
    assert all(c > 0 for c in counts)
    flags = verify_resolvent(m_square_resolvent)
    assert not flags.pop("window_limited")
    assert all(flags.values())
    assert not m_square_resolvent.window_limited


def test_resolvent_of_the_twisted_cubic(twisted_cubic_resolvent):
    X = twisted_cubic_resolvent
    assert X.counts()[:2] == [3, 2]
    assert [v.ideg for v in X.variables_of_degree(2)] == [3, 3]
    assert verify_resolvent(X)["acyclic"]
    assert set(X.windows) == set(range(2, 6))


def test_homology_above_the_degree_cap_is_flagged(m_square):
    # linear syzygies of x^2, xy, y^2 live in internal degree 3
    X = minimal_resolvent(m_square, 3, EngineConfig(degree_cap=2))
    assert X.cap == 2
    assert X.window_limited == [2]
    assert X.variables_of_degree(2) == []
    flags = verify_resolvent(X)
    assert flags["window_limited"]
    assert flags["acyclic"]


def test_resolvent_dump_lists_every_variable(ci_23_resolvent):
    lines = ci_23_resolvent.dump().splitlines()
    assert len(lines) == 2
    assert lines[0].startswith("T[1][1] : hdeg=1, idet=2, diff=")
    assert lines[1].startswith("T[1][2] : hdeg=1, idet=3, diff=")


def test_odd_variables_square_to_zero(ci_23_resolvent):
    X = ci_23_resolvent
    t = {((0, 1),): X.ring.one}
    assert X.multiply(t, t) == {}


def test_adjoining_a_koszul_cycle(ci_23_resolvent):
    X = ci_23_resolvent
    a = X.variables[0].diff[()]
    b = X.variables[1].diff[()]
    z = {((0, 1),): b, ((1, 1),): -a}
    Y = adjoin_variable(X, z)
    assert Y.counts()[:2] == [2, 1]
    assert Y.variables[-1].ideg == 5
    assert X.counts()[:2] == [2, 0]
    with pytest.raises(PreconditionError):
        adjoin_variable(X, {((0, 1),): X.ring.one})


def test_resolvent_preconditions():
    with pytest.raises(PreconditionError):
        minimal_resolvent(make_ideal(["x", "y"], "x^2, y^2"), 1)
    with pytest.raises(PreconditionError):
        minimal_resolvent(make_ideal(["x", "y"], "x, y^2"), 3)
    with pytest.raises(PreconditionError, match="trim first"):
        minimal_resolvent(make_ideal(["x", "y"], "x^2, x^2*y"), 3)


def test_step_window_respects_the_cap():
    assert step_window(2, 2, 1, 100) == 5
    assert step_window(3, 4, 0, 8) == 8
