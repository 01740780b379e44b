"""
Ideal quotients and intersections through syzygies of one-row matrices.
"""

import logging
from typing import List

from src.groebner.graded import GradedMatrix, syzygy_matrix
from src.groebner.ideal import Ideal

logger = logging.getLogger(__name__)


def _row(ring_ideal: Ideal, polys: List) -> GradedMatrix:
    return GradedMatrix(ring_ideal, [polys], [0], [sum(p.LM) for p in polys])


def quotient_by_element(I: Ideal, f) -> Ideal:
    """(I : f) for a single homogeneous f."""
    ring = I.ring
    if I.contains(f):
        return Ideal(ring, [ring.one])
    if I.is_zero():
        return Ideal.zero(ring)
    gens = I.minimal_generators()
    free = Ideal.zero(ring)
    syz = syzygy_matrix(_row(free, [f] + gens))
    return Ideal(ring, [e for e in syz.entries[0] if e]) if syz.ncols else Ideal.zero(ring)


def ideal_quotient(I: Ideal, J: Ideal) -> Ideal:
    """
    The colon ideal (I : J) = {f : fJ in I}.

    Args:
        I: Homogeneous ideal
        J: Homogeneous ideal of the same ring

    Returns:
        The quotient with a trimmed generating set
    """
    ring = I.ring
    result = Ideal(ring, [ring.one])
    for f in J.minimal_generators():
        result = ideal_intersection(result, quotient_by_element(I, f))
    logger.debug("quotient %s : %s = %s", I, J, result)
    return result


def ideal_intersection(I: Ideal, J: Ideal) -> Ideal:
    """I cap J from the syzygies of [gens I | gens J]."""
    ring = I.ring
    if I.is_unit():
        return J
    if J.is_unit():
        return I
    if I.is_zero() or J.is_zero():
        return Ideal.zero(ring)
    a = I.minimal_generators()
    b = J.minimal_generators()
    syz = syzygy_matrix(_row(Ideal.zero(ring), a + b))
    elements = []
    for k in range(syz.ncols):
        combo = ring.zero
        for i, g in enumerate(a):
            c = syz.entries[i][k]
            if c:
                combo = combo + c * g
        if combo:
            elements.append(combo)
    return Ideal(ring, Ideal(ring, elements).minimal_generators())
