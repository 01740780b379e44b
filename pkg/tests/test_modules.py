import pytest

from src.errors import PreconditionError
from src.groebner.graded import GradedMatrix
from src.groebner.ideal import Ideal
from src.koszul.koszul import koszul_complex
from src.modules.classify import (artinian_length, canonical_dual_check, classify_ideal, cm_length_criterion,
                                  top_wedge_dual_check)
from src.modules.modules import (INFINITE, UNDETERMINED, PresentedModule, annihilator, bar_complex_betti,
                                 conormal_module, depth, euler_rank, exterior_power, free_resolution, homology_at,
                                 is_free_cyclic, minimal_presentation, module_length, projective_dimension,
                                 quotient_module, residue_field, tensor_product)
from tests.conftest import make_ideal


def test_resolution_of_the_twisted_cubic(twisted_cubic):
    C, betti = free_resolution(quotient_module(twisted_cubic), 6)
    assert betti.complete
    assert betti.to_dict() == {"0,0": 1, "1,2": 3, "2,3": 2}
    assert C.is_minimal()
    assert betti.to_text().splitlines() == [
        "       0 1 2",
        "total: 1 3 2",
        "    0: 1 - -",
        "    1: - 3 2",
    ]


def test_resolution_of_a_complete_intersection(ci_23):
    _, betti = free_resolution(quotient_module(ci_23), 4)
    assert betti.to_dict() == {"0,0": 1, "1,2": 1, "1,3": 1, "2,5": 1}
    assert projective_dimension(quotient_module(ci_23), 4) == 2


def test_residue_field_over_a_truncated_line_never_stops():
    C, betti = free_resolution(residue_field(make_ideal(["x"], "x^4")), 4)
    assert betti.totals() == [1, 1, 1, 1, 1]
    assert not betti.complete
    assert [C.degrees(i) for i in range(5)] == [[0], [1], [4], [5], [8]]


def test_resolution_with_late_syzygies():
    I = make_ideal(["x", "y", "z", "w"], "x^3, y^3, x*z^2 - y*w^2")
    _, betti = free_resolution(quotient_module(I), 5)
    assert betti.complete
    totals = betti.totals()
    assert totals[:3] == [1, 3, 6]
    assert sum((-1) ** i * b for i, b in enumerate(totals)) == 0


def test_auslander_buchsbaum_on_the_corpus(m_square, twisted_cubic, ci_23, ci_three):
    for I in (m_square, twisted_cubic, ci_23, ci_three):
        M = quotient_module(I)
        pd = projective_dimension(M, I.ring.n + 1)
        assert pd + depth(M) == I.ring.n


def test_residue_field_over_a_koszul_algebra(m_square):
    _, betti = free_resolution(residue_field(m_square), 3, decide_end=False)
    assert betti.totals() == [1, 2, 4, 8]
    assert not betti.complete
    assert bar_complex_betti(m_square, 3, 3).totals() == [1, 2, 4, 8]


def test_conormal_module_of_a_double_point(double_point):
    conormal = conormal_module(double_point)
    assert conormal.num_generators() == 1
    assert conormal.hilbert_prefix(4) == [0, 0, 1, 1, 0]
    assert is_free_cyclic(conormal)


def test_exterior_square_of_a_free_conormal_module(ci_23):
    wedge = exterior_power(conormal_module(ci_23), 2)
    assert wedge.minimal().generator_degrees == [5]
    assert is_free_cyclic(wedge)
    assert exterior_power(conormal_module(ci_23), 3).is_zero()


def test_lengths_and_annihilators(m_square, twisted_cubic):
    assert module_length(quotient_module(m_square)) == 3
    assert module_length(quotient_module(twisted_cubic)) == INFINITE
    assert artinian_length(m_square) == 3
    assert annihilator(conormal_module(m_square)).same_as(m_square)


def test_euler_rank(ci_23, m_square):
    assert euler_rank(conormal_module(ci_23)) == 2
    assert euler_rank(quotient_module(m_square)) == 0
    assert euler_rank(residue_field(m_square), bound=3) == UNDETERMINED


def test_tensor_with_the_residue_field(m_square):
    k = residue_field(m_square)
    product = tensor_product(conormal_module(m_square), k)
    assert product.minimal().num_generators() == 3
    assert module_length(product) == 3


def test_classification_of_the_square_of_the_maximal_ideal(m_square):
    c = classify_ideal(m_square)
    assert (c.num_generators, c.height, c.projective_dimension) == (3, 2, 2)
    assert not c.complete_intersection
    assert c.almost_complete_intersection
    assert c.perfect
    assert not c.gorenstein
    assert not c.quasi_gorenstein
    assert c.canonical_generators == 2


def test_classification_of_the_twisted_cubic(twisted_cubic):
    c = classify_ideal(twisted_cubic)
    assert c.perfect and c.almost_complete_intersection
    assert not c.complete_intersection and not c.gorenstein
    assert c.betti == [1, 3, 2]


def test_complete_intersections_are_gorenstein(small_ci):
    c = classify_ideal(small_ci)
    assert c.complete_intersection
    assert c.gorenstein
    assert c.quasi_gorenstein
    assert c.canonical_generators == 1


def test_unit_ideal_is_not_classified(m_square):
    with pytest.raises(PreconditionError):
        classify_ideal(Ideal(m_square.ring, [m_square.ring.one]))


def test_canonical_module_against_the_top_wedge_dual(twisted_cubic):
    comparison = canonical_dual_check(twisted_cubic)
    assert comparison.agree
    assert any(comparison.canonical)


def test_top_wedge_dual_of_a_complete_intersection(ci_23):
    assert top_wedge_dual_check(ci_23)


def test_length_criterion_for_a_free_module(twisted_cubic):
    ring = twisted_cubic.ring
    x, y, z, w = ring.gens
    S = PresentedModule.free(twisted_cubic, [0])
    assert cm_length_criterion(S, [x, w], rank=1)
    with pytest.raises(PreconditionError):
        cm_length_criterion(S, [x], rank=1)


def test_minimal_presentation_drops_a_redundant_generator(m_square):
    x, y = m_square.ring.gens
    M = PresentedModule(m_square, GradedMatrix(m_square, [[x], [m_square.ring.one]], [0, 1], [1]))
    assert M.num_generators() == 1
    assert minimal_presentation(M).generator_degrees == [0]
    assert M.hilbert_prefix(3) == [1, 2, 0, 0]


def test_homology_of_koszul_complexes(m_square):
    x, y = m_square.ring.gens
    assert homology_at(koszul_complex([x, y]), 1).is_zero()
    assert not homology_at(koszul_complex([x ** 2, x * y]), 1).is_zero()
