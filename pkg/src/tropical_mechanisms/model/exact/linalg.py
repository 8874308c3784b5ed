"""
Exact linear algebra over the rationals.

Plain Gaussian elimination on lists of Fractions; matrices are sequences of
rows. Problem sizes in this package are tiny (at most a few dozen columns),
so no sparse or fraction-free tricks are used.
"""

from fractions import Fraction
from typing import List, Optional, Sequence, Tuple

from tropical_mechanisms.model.common.errors import MalformedInputError

Matrix = Sequence[Sequence]


def _as_fraction_rows(rows: Matrix) -> List[List[Fraction]]:
    copied = [[Fraction(x) for x in row] for row in rows]
    if copied:
        width = len(copied[0])
        if any(len(row) != width for row in copied):
            raise MalformedInputError("ragged matrix")
    return copied


def row_reduce(rows: Matrix) -> Tuple[List[List[Fraction]], List[int]]:
    """
    Reduced row echelon form.

    :param rows: The matrix, row by row.
    :return: (nonzero rows of the RREF, pivot column of each of those rows)
    """
    m = _as_fraction_rows(rows)
    if not m:
        return [], []
    width = len(m[0])
    pivots: List[int] = []
    r = 0
    for c in range(width):
        pivot_row = next((i for i in range(r, len(m)) if m[i][c] != 0), None)
        if pivot_row is None:
            continue
        m[r], m[pivot_row] = m[pivot_row], m[r]
        inv = 1 / m[r][c]
        m[r] = [x * inv for x in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c] != 0:
                factor = m[i][c]
                m[i] = [a - factor * b for a, b in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == len(m):
            break
    return m[:r], pivots


def rank(rows: Matrix) -> int:
    """Rank of a matrix."""
    return len(row_reduce(rows)[1])


def pivot_rows(rows: Matrix) -> List[int]:
    """
    Indices of a maximal linearly independent subset of the rows, chosen
    greedily in order.
    """
    chosen: List[int] = []
    basis: List[List[Fraction]] = []
    pivot_cols: List[int] = []
    for index, row in enumerate(rows):
        vec = [Fraction(x) for x in row]
        for b, c in zip(basis, pivot_cols):
            if vec[c] != 0:
                factor = vec[c] / b[c]
                vec = [x - factor * y for x, y in zip(vec, b)]
        lead = next((c for c, x in enumerate(vec) if x != 0), None)
        if lead is None:
            continue
        basis.append(vec)
        pivot_cols.append(lead)
        chosen.append(index)
    return chosen


def determinant(rows: Matrix) -> Fraction:
    """Determinant of a square matrix."""
    m = _as_fraction_rows(rows)
    n = len(m)
    if any(len(row) != n for row in m):
        raise MalformedInputError("determinant of a non-square matrix")
    det = Fraction(1)
    for c in range(n):
        pivot_row = next((i for i in range(c, n) if m[i][c] != 0), None)
        if pivot_row is None:
            return Fraction(0)
        if pivot_row != c:
            m[c], m[pivot_row] = m[pivot_row], m[c]
            det = -det
        det *= m[c][c]
        for i in range(c + 1, n):
            if m[i][c] != 0:
                factor = m[i][c] / m[c][c]
                m[i] = [a - factor * b for a, b in zip(m[i], m[c])]
    return det


def solve_unique(rows: Matrix, rhs: Sequence) -> Optional[Tuple[Fraction, ...]]:
    """
    Solve A x = b when the solution exists and is unique.

    :param rows: Coefficient matrix A (may have more rows than columns).
    :param rhs: Right-hand side b.
    :return: The solution, or None when the system is inconsistent or
             underdetermined.
    """
    if len(rows) != len(rhs):
        raise MalformedInputError("row count and right-hand side length differ")
    if not rows:
        return None
    width = len(rows[0])
    augmented = [list(row) + [b] for row, b in zip(rows, rhs)]
    reduced, pivots = row_reduce(augmented)
    if width in pivots:
        return None
    if len(pivots) < width:
        return None
    solution = [Fraction(0)] * width
    for row, c in zip(reduced, pivots):
        solution[c] = row[width]
    return tuple(solution)


def affine_rank(points: Sequence[Sequence]) -> int:
    """Dimension of the affine hull of a point set (-1 for the empty set)."""
    if not points:
        return -1
    base = points[0]
    return rank([[a - b for a, b in zip(p, base)] for p in points[1:]]) if len(points) > 1 else 0


def affine_coordinate_columns(points: Sequence[Sequence]) -> List[int]:
    """
    Coordinate indices whose projection is injective on the affine hull.

    The pivot columns of the difference matrix p_i - p_0 are a set of
    coordinates in which the affine hull is a graph, so dropping the others
    preserves all affine relations among the points.
    """
    if len(points) < 2:
        return []
    base = points[0]
    return row_reduce([[a - b for a, b in zip(p, base)] for p in points[1:]])[1]


def project(points: Sequence[Sequence], columns: Sequence[int]) -> List[Tuple[Fraction, ...]]:
    """Restrict every point to the given coordinate columns."""
    return [tuple(Fraction(p[c]) for c in columns) for p in points]


def dot(u: Sequence, v: Sequence) -> Fraction:
    """Exact inner product."""
    return sum((Fraction(a) * b for a, b in zip(u, v)), Fraction(0))
