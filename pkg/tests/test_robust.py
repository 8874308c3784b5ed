from fractions import Fraction as F

import pytest

from tropical_mechanisms.model.common.errors import MalformedInputError
from tropical_mechanisms.model.geometry.subdivision import is_regular, validate_subdivision
from tropical_mechanisms.model.mechanism.affine import affine_subdivision, multiplayer_cardinality_sensitivity
from tropical_mechanisms.model.mechanism.mechanism import mechanism_subdivision
from tropical_mechanisms.model.mechanism.robust import (
    cardinality_robust_lifting,
    construct_cardinality_robust,
    construct_hamming_robust,
    construct_multiplayer_robust,
    slice_cells,
    slice_plane,
)
from tropical_mechanisms.model.mechanism.sensitivity import (
    cardinality_sensitivity,
    hamming_sensitivity,
    has_antipodal_pair,
)


def test_slice_planes_touch_two_levels():
    for k in range(1, 6):
        slope, offset = slice_plane(k)
        assert offset + slope * (k - 1) == -(k - 1) ** 2
        assert offset + slope * k == -k ** 2
        assert offset + slope * (k + 1) > -(k + 1) ** 2


def test_slices_of_the_cube():
    assert slice_cells(3) == [(0, 1, 2, 4), (1, 2, 3, 4, 5, 6), (3, 5, 6, 7)]


def test_lifting_matches_payments():
    mech = construct_cardinality_robust(3)
    assert tuple(-p for p in mech.payments) == cardinality_robust_lifting(3).heights
    assert mech.payment((1, 1, 0)) == 4


@pytest.mark.parametrize("m", [1, 2, 3, 4, pytest.param(5, marks=pytest.mark.slow), pytest.param(6, marks=pytest.mark.slow)])
def test_cardinality_robust(m):
    mech = construct_cardinality_robust(m)
    subdivision = mechanism_subdivision(mech)
    assert list(subdivision.cells) == sorted(slice_cells(m))
    assert cardinality_sensitivity(subdivision) == 1


def test_cardinality_needs_items():
    with pytest.raises(MalformedInputError):
        construct_cardinality_robust(0)


def test_hamming_robust_three_items():
    construction = construct_hamming_robust(3)
    subdivision = construction.subdivision
    # big even tetrahedron plus a corner at every odd vertex
    assert len(subdivision.cells) == 5
    assert (0, 3, 5, 6) in subdivision.cells
    assert hamming_sensitivity(subdivision) == 2
    assert not has_antipodal_pair(subdivision)
    assert mechanism_subdivision(construction.mechanism).cells == subdivision.cells
    validate_subdivision(subdivision)


@pytest.mark.parametrize("m", [3, 4, pytest.param(5, marks=pytest.mark.slow), pytest.param(6, marks=pytest.mark.slow)])
def test_hamming_robust_has_no_antipodal_pair(m):
    subdivision = construct_hamming_robust(m).subdivision
    assert not has_antipodal_pair(subdivision)
    assert hamming_sensitivity(subdivision) <= m - 1


def test_refined_hamming_construction():
    construction = construct_hamming_robust(4, refine=True)
    subdivision = construction.subdivision
    assert subdivision.is_triangulation
    assert not has_antipodal_pair(subdivision)
    assert is_regular(subdivision.config, subdivision).regular


def test_hamming_needs_three_items():
    with pytest.raises(MalformedInputError):
        construct_hamming_robust(2)


@pytest.mark.parametrize("n, m", [(2, 2), (3, 1), (3, 2)])
def test_multiplayer_robust(n, m):
    am = construct_multiplayer_robust(n, m)
    assert am.weights == tuple(F(1) for _ in range(n))
    assert multiplayer_cardinality_sensitivity(affine_subdivision(am)) == 1
