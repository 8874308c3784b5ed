from fractions import Fraction as F

import pytest

from tropical_mechanisms.model.common.errors import MalformedInputError
from tropical_mechanisms.model.exact import linalg


def test_determinant():
    assert linalg.determinant([[1, 2], [3, 4]]) == -2
    assert linalg.determinant([[0, 1], [1, 0]]) == -1
    assert linalg.determinant([[1, 2], [2, 4]]) == 0
    with pytest.raises(MalformedInputError):
        linalg.determinant([[1, 2, 3], [4, 5, 6]])


def test_rank_and_pivots():
    rows = [[1, 0, 1], [2, 0, 2], [0, 1, 1]]
    assert linalg.rank(rows) == 2
    assert linalg.pivot_rows(rows) == [0, 2]
    reduced, pivots = linalg.row_reduce(rows)
    assert pivots == [0, 1]
    assert reduced[0] == [1, 0, 1]


def test_solve_unique():
    assert linalg.solve_unique([[1, 1], [1, -1]], [3, 1]) == (F(2), F(1))
    # inconsistent
    assert linalg.solve_unique([[1, 1], [1, 1]], [1, 2]) is None
    # underdetermined
    assert linalg.solve_unique([[1, 1]], [1]) is None
    # overdetermined but consistent
    assert linalg.solve_unique([[1, 0], [0, 1], [1, 1]], [F(1, 2), F(1, 3), F(5, 6)]) == (F(1, 2), F(1, 3))


def test_affine_rank_and_coordinates():
    square = [(0, 0), (0, 1), (1, 0), (1, 1)]
    assert linalg.affine_rank(square) == 2
    assert linalg.affine_rank([(1, 1)]) == 0
    assert linalg.affine_rank([]) == -1
    simplex = [(1, 0, 0), (0, 1, 0), (0, 0, 1)]
    columns = linalg.affine_coordinate_columns(simplex)
    assert len(columns) == 2
    projected = linalg.project(simplex, columns)
    assert linalg.affine_rank(projected) == 2


def test_ragged_matrix():
    with pytest.raises(MalformedInputError):
        linalg.rank([[1, 2], [3]])
