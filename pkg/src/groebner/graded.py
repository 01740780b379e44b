"""
Homogeneous matrices between graded free modules over R/I, and their degree
pieces as finite-dimensional linear maps over Q.

A free module is a list of generator degrees. Its degree-t piece has basis
pairs (j, mu) with mu a standard monomial of degree t - degrees[j].
"""

import logging
from typing import Callable, Dict, Iterable, List, Optional, Sequence, Tuple

from sympy.polys.domains import QQ
from sympy.polys.rings import PolyElement

from src.errors import InvariantError, StructuralError
from src.groebner.ideal import Ideal
from src.groebner.linalg import Vector, nullspace, pivot_columns, rank
from src.groebner.submodule import Numerator, first_difference, quotient_numerator, subtract
from src.poly.ring import Monomial, format_poly

logger = logging.getLogger(__name__)


class FreePiece:
    """Q-basis of the degree-t part of a graded free module."""

    def __init__(self, base: Ideal, degrees: Sequence[int], t: int):
        self.t = t
        self.basis: List[Tuple[int, Monomial]] = [
            (j, m) for j, d in enumerate(degrees) for m in base.standard_monomials(t - d)
        ]
        self.index: Dict[Tuple[int, Monomial], int] = {b: k for k, b in enumerate(self.basis)}

    def __len__(self) -> int:
        return len(self.basis)


def free_piece(base: Ideal, degrees: Sequence[int], t: int) -> FreePiece:
    key = (tuple(degrees), t)
    piece = base._pieces.get(key)
    if piece is None:
        piece = FreePiece(base, degrees, t)
        base._pieces[key] = piece
    return piece


def _accumulate(base: Ideal, out: Vector, piece: FreePiece, j: int, m: Monomial, c) -> None:
    for s, c2 in base.monomial_normal_form(m).items():
        k = piece.index.get((j, s))
        if k is None:
            raise StructuralError(f"term in component {j} has the wrong degree for degree {piece.t}")
        out[k] = out.get(k, QQ.zero) + c * c2


def _clean(vec: Vector) -> Vector:
    return {k: v for k, v in vec.items() if v}


def vectorize(base: Ideal, piece: FreePiece, vector: Sequence[PolyElement]) -> Vector:
    """Coordinates of a homogeneous element of degree piece.t of a free module."""
    out: Vector = {}
    for j, p in enumerate(vector):
        for m, c in p.items():
            _accumulate(base, out, piece, j, m, c)
    return _clean(out)


def devectorize(base: Ideal, piece: FreePiece, vec: Vector, size: int) -> List[PolyElement]:
    """Inverse of vectorize: a list of `size` polynomials."""
    terms: List[Dict[Monomial, object]] = [{} for _ in range(size)]
    for k, v in vec.items():
        j, m = piece.basis[k]
        terms[j][m] = v
    return [base.ring.from_dict(t) for t in terms]


def shift_vector(base: Ideal, vec: Vector, src: FreePiece, tgt: FreePiece, mu: Monomial) -> Vector:
    """Multiply an element of the src piece by x^mu, landing in the tgt piece."""
    out: Vector = {}
    for k, v in vec.items():
        j, s = src.basis[k]
        _accumulate(base, out, tgt, j, tuple(a + b for a, b in zip(s, mu)), v)
    return _clean(out)


class GradedMatrix:
    """
    A homogeneous map F -> G of graded free modules over R/I.

    Entry (i, j) is zero or homogeneous of degree col_degrees[j] - row_degrees[i];
    entries are kept reduced modulo the base ideal.
    """

    def __init__(self, base: Ideal, entries: Sequence[Sequence[PolyElement]],
                 row_degrees: Sequence[int], col_degrees: Sequence[int]):
        """
        Initialize the matrix.

        Args:
            base: Ideal I of the base ring R/I
            entries: Row lists of polynomials of base.ring
            row_degrees: Generator degrees of the target
            col_degrees: Generator degrees of the source
        """
        self.base = base
        self.ring = base.ring
        self.row_degrees = list(row_degrees)
        self.col_degrees = list(col_degrees)
        if len(entries) != len(self.row_degrees):
            raise StructuralError(f"{len(entries)} rows given for {len(self.row_degrees)} row degrees")
        rows = []
        for i, row in enumerate(entries):
            if len(row) != len(self.col_degrees):
                raise StructuralError(f"row {i} has {len(row)} entries for {len(self.col_degrees)} columns")
            reduced = []
            for j, e in enumerate(row):
                e = base.normal_form(e)
                if e and any(sum(m) != self.col_degrees[j] - self.row_degrees[i] for m in e.keys()):
                    raise StructuralError(
                        f"entry ({i}, {j}) = {format_poly(e)} is not homogeneous of degree "
                        f"{self.col_degrees[j] - self.row_degrees[i]}")
                reduced.append(e)
            rows.append(reduced)
        self.entries = rows
        self._pieces: Dict[int, tuple] = {}
        self._ranks: Dict[int, int] = {}
        self._coker: Optional[Numerator] = None

    @classmethod
    def zeros(cls, base: Ideal, row_degrees: Sequence[int], col_degrees: Sequence[int]) -> "GradedMatrix":
        zero = base.ring.zero
        return cls(base, [[zero] * len(col_degrees) for _ in row_degrees], row_degrees, col_degrees)

    @classmethod
    def identity(cls, base: Ideal, degrees: Sequence[int]) -> "GradedMatrix":
        ring = base.ring
        entries = [[ring.one if i == j else ring.zero for j in range(len(degrees))] for i in range(len(degrees))]
        return cls(base, entries, degrees, degrees)

    @classmethod
    def from_columns(cls, base: Ideal, columns: Sequence[Sequence[PolyElement]],
                     row_degrees: Sequence[int], col_degrees: Sequence[int]) -> "GradedMatrix":
        entries = [[columns[j][i] for j in range(len(columns))] for i in range(len(row_degrees))]
        return cls(base, entries, row_degrees, col_degrees)

    @property
    def nrows(self) -> int:
        return len(self.row_degrees)

    @property
    def ncols(self) -> int:
        return len(self.col_degrees)

    def column(self, j: int) -> List[PolyElement]:
        return [row[j] for row in self.entries]

    def is_zero(self) -> bool:
        return not any(e for row in self.entries for e in row)

    def max_entry_degree(self) -> int:
        degs = [self.col_degrees[j] - self.row_degrees[i]
                for i, row in enumerate(self.entries) for j, e in enumerate(row) if e]
        return max(degs, default=0)

    def constant_entries(self) -> Dict[Tuple[int, int], object]:
        """Nonzero scalar entries {(i, j): c}."""
        found = {}
        for i, row in enumerate(self.entries):
            for j, e in enumerate(row):
                if e and e.is_ground:
                    found[(i, j)] = e.LC
        return found

    def transpose(self) -> "GradedMatrix":
        entries = [[self.entries[i][j] for i in range(self.nrows)] for j in range(self.ncols)]
        return GradedMatrix(self.base, entries, [-d for d in self.col_degrees], [-d for d in self.row_degrees])

    def compose(self, other: "GradedMatrix") -> "GradedMatrix":
        """self * other, for other: E -> F and self: F -> G."""
        if self.col_degrees != other.row_degrees:
            raise StructuralError("composed maps do not share the middle free module")
        zero = self.ring.zero
        entries = []
        for i in range(self.nrows):
            row = []
            for j in range(other.ncols):
                acc = zero
                for k in range(self.ncols):
                    a = self.entries[i][k]
                    if a:
                        b = other.entries[k][j]
                        if b:
                            acc = acc + a * b
                row.append(acc)
            entries.append(row)
        return GradedMatrix(self.base, entries, self.row_degrees, other.col_degrees)

    __matmul__ = compose

    def hstack(self, other: "GradedMatrix") -> "GradedMatrix":
        if self.row_degrees != other.row_degrees:
            raise StructuralError("stacked maps have different targets")
        entries = [a + b for a, b in zip(self.entries, other.entries)]
        return GradedMatrix(self.base, entries, self.row_degrees, self.col_degrees + other.col_degrees)

    def submatrix(self, rows: Sequence[int], cols: Sequence[int]) -> "GradedMatrix":
        entries = [[self.entries[i][j] for j in cols] for i in rows]
        return GradedMatrix(self.base, entries, [self.row_degrees[i] for i in rows],
                            [self.col_degrees[j] for j in cols])

    def scale(self, c) -> "GradedMatrix":
        entries = [[e * c for e in row] for row in self.entries]
        return GradedMatrix(self.base, entries, self.row_degrees, self.col_degrees)

    def shift(self, s: int) -> "GradedMatrix":
        """Same entries, every degree raised by s."""
        return GradedMatrix(self.base, self.entries, [d + s for d in self.row_degrees],
                            [d + s for d in self.col_degrees])

    def change_base(self, base: Ideal) -> "GradedMatrix":
        return GradedMatrix(base, self.entries, self.row_degrees, self.col_degrees)

    def piece(self, t: int) -> Tuple[List[Vector], FreePiece, FreePiece]:
        """
        The degree-t piece as a Q-linear map.

        Returns:
            (columns, source piece, target piece); column k is the image of
            the k-th basis element of the source piece
        """
        cached = self._pieces.get(t)
        if cached is not None:
            return cached
        base = self.base
        src = free_piece(base, self.col_degrees, t)
        tgt = free_piece(base, self.row_degrees, t)
        columns = []
        for j, mu in src.basis:
            out: Vector = {}
            for i in range(self.nrows):
                e = self.entries[i][j]
                if not e:
                    continue
                for m, c in e.items():
                    _accumulate(base, out, tgt, i, tuple(a + b for a, b in zip(m, mu)), c)
            columns.append(_clean(out))
        cached = (columns, src, tgt)
        self._pieces[t] = cached
        return cached

    def rank_at(self, t: int) -> int:
        found = self._ranks.get(t)
        if found is None:
            columns, _, tgt = self.piece(t)
            found = self._ranks[t] = rank(columns, len(tgt))
        return found

    def cokernel_numerator(self) -> Numerator:
        """Hilbert numerator of coker M over the base, from a module Groebner basis."""
        if self._coker is None:
            self._coker = quotient_numerator(self.base, self.row_degrees,
                                             [self.column(j) for j in range(self.ncols)])
        return self._coker

    def kernel_at(self, t: int) -> List[Vector]:
        columns, _, tgt = self.piece(t)
        return nullspace(columns, len(tgt))

    def apply(self, vector: Sequence[PolyElement]) -> List[PolyElement]:
        zero = self.ring.zero
        out = []
        for i in range(self.nrows):
            acc = zero
            for j in range(self.ncols):
                if self.entries[i][j] and vector[j]:
                    acc = acc + self.entries[i][j] * vector[j]
            out.append(self.base.normal_form(acc))
        return out

    def __eq__(self, other) -> bool:
        return (isinstance(other, GradedMatrix) and self.row_degrees == other.row_degrees
                and self.col_degrees == other.col_degrees and self.entries == other.entries)

    def __repr__(self) -> str:
        rows = ["[" + ", ".join(format_poly(e) for e in row) + "]" for row in self.entries]
        return f"GradedMatrix({self.row_degrees} <- {self.col_degrees}: " + "; ".join(rows) + ")"


def kernel_window(M: GradedMatrix, slack: int = 1) -> int:
    """First degree bound searched for generators of ker M."""
    return max(M.col_degrees, default=0) + max(M.max_entry_degree(), 0) + slack


def submodule_generators(base: Ideal, degrees: Sequence[int],
                         candidates: Callable[[int], List[Vector]],
                         window: Iterable[int],
                         fixed: Optional[Callable[[int], List[Vector]]] = None,
                         found: Sequence[Tuple[int, Vector]] = ()) -> List[Tuple[int, Vector]]:
    """
    Minimal homogeneous generators of a submodule N of a free module, degree by degree.

    Args:
        base: Ideal of the base ring
        degrees: Generator degrees of the ambient free module
        candidates: t -> vectors spanning N_t
        window: Degrees to scan, increasing
        fixed: t -> vectors spanning a submodule B_t already accounted for;
            generators are then minimal for N / B
        found: Generators already chosen in degrees below the window

    Returns:
        (degree, vector) pairs in increasing degree, `found` first
    """
    gens: List[Tuple[int, Vector]] = list(found)
    for t in window:
        cands = [c for c in candidates(t) if c]
        if not cands:
            continue
        tgt = free_piece(base, degrees, t)
        span: List[Vector] = []
        for d, g in gens:
            if d >= t:
                continue
            src = free_piece(base, degrees, d)
            for mu in base.standard_monomials(t - d):
                span.append(shift_vector(base, g, src, tgt, mu))
        if fixed is not None:
            span.extend(fixed(t))
        offset = len(span)
        for p in pivot_columns(span + cands, len(tgt)):
            if p >= offset:
                gens.append((t, cands[p - offset]))
    return gens


def image_numerator(M: GradedMatrix) -> Numerator:
    """Hilbert numerator of im M, which is also the one of F / ker M."""
    return subtract(quotient_numerator(M.base, M.row_degrees, []), M.cokernel_numerator())


def complete_generators(base: Ideal, degrees: Sequence[int],
                        candidates: Callable[[int], List[Vector]], window: int,
                        target: Callable[[], Numerator],
                        fixed: Optional[Callable[[int], List[Vector]]] = None,
                        fixed_columns: Sequence[Sequence[PolyElement]] = (),
                        ceiling: Optional[int] = None) -> Tuple[List[Tuple[int, Vector]], bool]:
    """
    Generators of N / B scanned up to `window`, then widened until they generate.

    Over an Artinian base the free module vanishes above max(degrees) plus the
    top degree of R/I, and scanning that far settles it. Otherwise the Hilbert
    series of F / (found + B) is compared with target(), the one of F / N; the
    lowest degree where they differ holds a missing generator.

    Args:
        base: Ideal of the base ring
        degrees: Generator degrees of the ambient free module F
        candidates: t -> vectors spanning N_t
        window: Degree up to which the scan starts
        target: Hilbert numerator of F / N, computed on demand
        fixed: t -> vectors spanning B_t
        fixed_columns: Polynomial columns generating B
        ceiling: Degrees above this are never scanned

    Returns:
        (generators, complete); complete is False only when a missing
        generator lies above the ceiling
    """
    if not degrees:
        return [], True
    lo = min(degrees)
    top = base.top_degree()
    if top is not None:
        return submodule_generators(base, degrees, candidates, range(lo, max(degrees) + top + 1), fixed), True
    if ceiling is not None:
        window = min(window, ceiling)
    gens = submodule_generators(base, degrees, candidates, range(lo, window + 1), fixed)
    goal = target()
    while True:
        columns = [devectorize(base, free_piece(base, degrees, t), v, len(degrees)) for t, v in gens]
        missing = first_difference(quotient_numerator(base, degrees, columns + list(fixed_columns)), goal)
        if missing is None:
            return gens, True
        if missing <= window:
            raise InvariantError(f"generators found up to degree {window} miss degree {missing}")
        if ceiling is not None and missing > ceiling:
            logger.info("generators missing in degree %d, above the ceiling %d", missing, ceiling)
            return gens, False
        logger.debug("widening the scan from degree %d to %d", window, missing)
        gens = submodule_generators(base, degrees, candidates, range(window + 1, missing + 1), fixed, gens)
        window = missing


def generator_matrix(base: Ideal, degrees: Sequence[int], gens: List[Tuple[int, Vector]]) -> GradedMatrix:
    """Columns from (degree, vector) pairs found by submodule_generators."""
    columns = [devectorize(base, free_piece(base, degrees, t), v, len(degrees)) for t, v in gens]
    return GradedMatrix.from_columns(base, columns, degrees, [t for t, _ in gens])


def syzygy_matrix(M: GradedMatrix, window: Optional[int] = None, slack: int = 1) -> GradedMatrix:
    """
    Minimal generators of the kernel of M, as the columns of a matrix.

    Args:
        M: Homogeneous matrix
        window: Degree the scan starts from; kernel_window(M, slack) by default.
            The scan is widened until the columns generate the whole kernel.
        slack: Extra degrees beyond the column and entry degree bound

    Returns:
        GradedMatrix whose target is the source of M
    """
    if M.ncols == 0:
        return GradedMatrix.zeros(M.base, [], [])
    top = kernel_window(M, slack) if window is None else window
    gens, _ = complete_generators(M.base, M.col_degrees, M.kernel_at, top, lambda: image_numerator(M))
    logger.debug("syzygies of a %dx%d matrix: %d generators", M.nrows, M.ncols, len(gens))
    return generator_matrix(M.base, M.col_degrees, gens)


def image_generators(M: GradedMatrix) -> GradedMatrix:
    """Minimal generators of the image of M, taken among its columns."""
    if M.ncols == 0:
        return M

    def columns_of_degree(t: int) -> List[Vector]:
        tgt = free_piece(M.base, M.row_degrees, t)
        return [vectorize(M.base, tgt, M.column(j)) for j in range(M.ncols) if M.col_degrees[j] == t]

    degrees = sorted(set(M.col_degrees))
    gens = submodule_generators(M.base, M.row_degrees, columns_of_degree, degrees)
    return generator_matrix(M.base, M.row_degrees, gens)
