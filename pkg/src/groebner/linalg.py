"""
Sparse linear algebra over Q on column lists.

A vector is a dict {index: QQ}; a matrix is given by its list of columns and a
row count. Everything goes through sympy's sparse DomainMatrix.
"""

from typing import Dict, List, Optional, Sequence, Tuple

from sympy.polys.domains import QQ
from sympy.polys.matrices import DomainMatrix

Vector = Dict[int, object]


def to_domain_matrix(columns: Sequence[Vector], nrows: int) -> DomainMatrix:
    dod: Dict[int, Dict[int, object]] = {}
    for j, col in enumerate(columns):
        for i, v in col.items():
            if v:
                dod.setdefault(i, {})[j] = v
    return DomainMatrix.from_dod(dod, (nrows, len(columns)), QQ)


def _rref(columns: Sequence[Vector], nrows: int) -> Tuple[Dict[int, Dict[int, object]], List[int]]:
    if not columns or nrows == 0 or not any(columns):
        return {}, []
    reduced, pivots = to_domain_matrix(columns, nrows).rref()
    return reduced.to_dod(), list(pivots)


def pivot_columns(columns: Sequence[Vector], nrows: int) -> List[int]:
    """Indices of the columns not in the span of the columns before them."""
    return _rref(columns, nrows)[1]


def rank(columns: Sequence[Vector], nrows: int) -> int:
    return len(pivot_columns(columns, nrows))


def nullspace(columns: Sequence[Vector], nrows: int) -> List[Vector]:
    """
    Basis of the kernel of the matrix with the given columns.

    Args:
        columns: Column vectors
        nrows: Number of rows

    Returns:
        Kernel vectors indexed by column position, one per non-pivot column
    """
    ncols = len(columns)
    if ncols == 0:
        return []
    reduced, pivots = _rref(columns, nrows)
    if not pivots:
        return [{j: QQ.one} for j in range(ncols)]
    rows = [reduced[k] for k in range(len(pivots))]
    pivot_set = set(pivots)
    basis = []
    for free in range(ncols):
        if free in pivot_set:
            continue
        vec: Vector = {free: QQ.one}
        for p, row in zip(pivots, rows):
            v = row.get(free)
            if v:
                vec[p] = -v
        basis.append(vec)
    return basis


def solve(columns: Sequence[Vector], nrows: int, target: Vector) -> Optional[Vector]:
    """
    One solution x of sum_j x_j columns[j] = target, or None.

    Args:
        columns: Column vectors
        nrows: Number of rows
        target: Right hand side

    Returns:
        Solution indexed by column position, None when target is outside the span
    """
    if not any(target.values()):
        return {}
    ncols = len(columns)
    reduced, pivots = _rref(list(columns) + [target], nrows)
    if ncols in pivots:
        return None
    return {p: reduced[k][ncols] for k, p in enumerate(pivots) if reduced[k].get(ncols)}


def dense_rank(rows: Sequence[Sequence[object]]) -> int:
    """Rank of a small dense matrix given by rows."""
    if not rows or not rows[0]:
        return 0
    columns = [{i: QQ.convert(r[j]) for i, r in enumerate(rows) if r[j]} for j in range(len(rows[0]))]
    return rank(columns, len(rows))
