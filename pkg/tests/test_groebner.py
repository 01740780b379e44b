import pytest
from sympy.polys.domains import QQ

from src.errors import StructuralError
from src.groebner.colon import ideal_intersection, ideal_quotient, quotient_by_element
from src.groebner.graded import GradedMatrix, syzygy_matrix
from src.groebner.ideal import (Ideal, buchberger_criterion, height, hilbert_numerator, hilbert_series,
                                krull_dimension)
from src.groebner.linalg import dense_rank, nullspace, rank, solve
from src.groebner.submodule import first_difference, quotient_numerator
from src.poly.ring import PolyRing
from tests.conftest import make_ideal


def test_reduced_bases_pass_the_criterion(m_square, twisted_cubic, ci_three, mixed_aci):
    for I in (m_square, twisted_cubic, ci_three, mixed_aci):
        assert buchberger_criterion(I.basis)
        assert all(g.LC == 1 for g in I.basis)


def test_twisted_cubic_basis_and_hilbert_function(twisted_cubic):
    assert len(twisted_cubic.basis) == 3
    assert [twisted_cubic.hilbert_function(d) for d in range(5)] == [1, 4, 7, 10, 13]


def test_hilbert_numerator_of_a_complete_intersection(ci_23):
    # (1 - t^2)(1 - t^3)
    assert hilbert_numerator(ci_23) == [1, 0, -1, -1, 0, 1]


def test_hilbert_series_matches_standard_monomials(twisted_cubic, m_square):
    assert hilbert_series(m_square, 5).to_ints() == [1, 2, 0, 0, 0, 0]
    series = hilbert_series(twisted_cubic, 8)
    assert series.to_ints() == [twisted_cubic.hilbert_function(d) for d in range(9)]


def test_dimension_and_height(m_square, twisted_cubic, ci_three):
    assert krull_dimension(m_square) == 0
    assert height(m_square) == 2
    assert krull_dimension(twisted_cubic) == 2
    assert height(twisted_cubic) == 2
    assert height(ci_three) == 3
    unit = Ideal(m_square.ring, [m_square.ring.one])
    assert unit.is_unit()
    assert krull_dimension(unit) == -1


def test_membership_and_normal_form(twisted_cubic):
    x, y, z, w = twisted_cubic.ring.gens
    assert twisted_cubic.contains(x * z**2 - y**2 * z)
    assert not twisted_cubic.contains(x * w)
    assert twisted_cubic.normal_form(y**2) != y**2


def test_minimal_generators_trim_redundant_forms():
    I = make_ideal(["x", "y"], "x^2, x*y, x^2 + x*y, y^2, x^3")
    assert len(I.minimal_generators()) == 3


def test_inhomogeneous_generators_are_rejected(m_square):
    x, y = m_square.ring.gens
    with pytest.raises(StructuralError):
        Ideal(m_square.ring, [x**2 + y])


def test_colon_by_the_square_of_the_maximal_ideal(m_square):
    ring = m_square.ring
    x, y = ring.gens
    J = ideal_quotient(Ideal(ring, [x**2, y**2]), m_square)
    assert J.same_as(Ideal(ring, [x, y]))


def test_colon_and_intersection_of_monomial_ideals():
    I = make_ideal(["x", "y"], "x^2, y^2")
    x, y = I.ring.gens
    assert quotient_by_element(I, x).same_as(Ideal(I.ring, [x, y**2]))
    assert quotient_by_element(I, x**2).is_unit()
    meet = ideal_intersection(Ideal(I.ring, [x]), Ideal(I.ring, [y]))
    assert meet.same_as(Ideal(I.ring, [x * y]))


def test_syzygies_of_the_twisted_cubic(twisted_cubic):
    R = Ideal.zero(twisted_cubic.ring)
    gens = twisted_cubic.minimal_generators()
    row = GradedMatrix(R, [gens], [0], [2, 2, 2])
    syz = syzygy_matrix(row)
    assert syz.ncols == 2
    assert syz.col_degrees == [3, 3]
    assert row.compose(syz).is_zero()


def test_syzygies_above_the_first_window():
    I = make_ideal(["x", "y", "z", "w"], "x^3, y^3, x*z^2 - y*w^2")
    row = GradedMatrix(Ideal.zero(I.ring), [I.minimal_generators()], [0], [3, 3, 3])
    syz = syzygy_matrix(row)
    assert sorted(syz.col_degrees) == [6, 6, 6, 7, 8, 9]
    assert row.compose(syz).is_zero()
    assert sorted(syzygy_matrix(row, window=3).col_degrees) == [6, 6, 6, 7, 8, 9]


def test_a_small_window_is_widened(twisted_cubic):
    R = Ideal.zero(twisted_cubic.ring)
    row = GradedMatrix(R, [twisted_cubic.minimal_generators()], [0], [2, 2, 2])
    assert syzygy_matrix(row, window=2).col_degrees == [3, 3]


def test_quotient_numerators():
    ring = PolyRing(["x", "y"])
    x, y = ring.variable("x"), ring.variable("y")
    R = Ideal.zero(ring)
    assert quotient_numerator(R, [0, 1], []) == {0: 1, 1: 1}
    # (1 + t)(1 - t)^2
    assert quotient_numerator(R, [0], [[x ** 2], [y]]) == {0: 1, 1: -1, 2: -1, 3: 1}
    assert first_difference({0: 1, 1: -1}, {0: 1, 2: -1}) == 1
    assert first_difference({0: 1}, {0: 1}) is None


def test_top_degree_of_artinian_quotients(m_square, twisted_cubic):
    assert make_ideal(["x"], "x^4").top_degree() == 3
    assert m_square.top_degree() == 1
    assert twisted_cubic.top_degree() is None


def test_linear_algebra_helpers():
    columns = [{0: QQ(1), 1: QQ(2)}, {0: QQ(2), 1: QQ(4)}, {1: QQ(1)}]
    assert rank(columns, 2) == 2
    kernel = nullspace(columns, 2)
    assert len(kernel) == 1
    assert kernel[0] == {1: QQ(1), 0: QQ(-2)}
    assert solve(columns, 2, {0: QQ(1), 1: QQ(3)}) is not None
    assert solve(columns[:2], 2, {1: QQ(1)}) is None
    assert dense_rank([[1, 2], [2, 4]]) == 1
