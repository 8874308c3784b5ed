from fractions import Fraction as F

import pytest

from conftest import COUNTER_CELLS
from tropical_mechanisms.model.common.errors import InvariantViolationError, MalformedInputError
from tropical_mechanisms.model.geometry.point_config import box_lattice_config, cube_config, custom_config
from tropical_mechanisms.model.geometry.subdivision import (
    Lifting,
    Subdivision,
    canonicalize,
    cells_meet_properly,
    hull_volume,
    is_regular,
    normalized_volume,
    refine_to_triangulation,
    regular_subdivision,
    validate_subdivision,
)
from tropical_mechanisms.model.geometry.symmetry import symmetry_group


def test_square_liftings():
    square = cube_config(2)
    raised_corner = regular_subdivision(square, Lifting.of([0, 0, 0, 1]))
    assert raised_corner.cells == ((0, 1, 3), (0, 2, 3))
    assert raised_corner.is_triangulation
    flat = regular_subdivision(square, Lifting.of([0, 0, 0, 0]))
    assert flat.cells == ((0, 1, 2, 3),)
    assert not flat.is_triangulation


def test_points_below_the_hull_are_dropped():
    config = custom_config([[0, 0], [2, 0], [0, 2], [1, 0]])
    # (1, 0) sits on an edge; lifting it below the edge removes it
    subdivision = regular_subdivision(config, Lifting.of([0, 0, 0, -1]))
    assert subdivision.cells == ((0, 1, 2),)
    assert 3 not in subdivision.used_points


def test_lifting_size_mismatch():
    with pytest.raises(MalformedInputError):
        regular_subdivision(cube_config(2), Lifting.of([0, 0, 0]))


def test_volumes():
    cube = cube_config(3)
    assert hull_volume(cube) == 6
    assert normalized_volume(cube, (0, 1, 2, 4)) == 1
    assert normalized_volume(cube, (1, 2, 4, 7)) == 2
    assert normalized_volume(cube, (0, 1, 2, 3)) == 0
    assert hull_volume(box_lattice_config([2, 3])) == 12


def test_cells_meet_properly():
    square = cube_config(2)
    assert cells_meet_properly(square, (0, 1, 3), (0, 2, 3))
    # the two triangles of different diagonals overlap
    assert not cells_meet_properly(square, (0, 1, 3), (0, 1, 2))


def test_validate_rejects_overlaps_and_gaps():
    square = cube_config(2)
    validate_subdivision(Subdivision.of(square, [(0, 1, 3), (0, 2, 3)]))
    with pytest.raises(InvariantViolationError) as overlap:
        validate_subdivision(Subdivision.of(square, [(0, 1, 3), (0, 1, 2)]))
    assert overlap.value.pair == ((0, 1, 2), (0, 1, 3))
    with pytest.raises(InvariantViolationError):
        validate_subdivision(Subdivision.of(square, [(0, 1, 3)]))
    with pytest.raises(InvariantViolationError):
        validate_subdivision(Subdivision.of(square, [(0, 1, 2, 3), (0, 1, 3)]))


def test_subdivision_normalizes_cells():
    square = cube_config(2)
    subdivision = Subdivision.of(square, [[3, 2, 0], [0, 1, 3], [3, 1, 0]])
    assert subdivision.cells == ((0, 1, 3), (0, 2, 3))
    assert subdivision.cell_labels() == [("00", "01", "11"), ("00", "10", "11")]
    with pytest.raises(MalformedInputError):
        Subdivision.of(square, [(0, 1, 4)])


def test_regular_witness_reproduces(counter_mechanism):
    cube = cube_config(3)
    lifting = Lifting(tuple(-p for p in counter_mechanism.payments))
    subdivision = regular_subdivision(cube, lifting)
    result = is_regular(cube, subdivision)
    assert result.regular
    assert regular_subdivision(cube, result.witness).cells == subdivision.cells


def test_trivial_subdivision_is_regular():
    square = cube_config(2)
    result = is_regular(square, Subdivision.of(square, [(0, 1, 2, 3)]))
    assert result.regular
    assert result.witness.heights == (F(0),) * 4


def test_twisted_triangulation_is_not_regular(twisted_triangulation):
    validate_subdivision(twisted_triangulation)
    assert twisted_triangulation.is_triangulation
    result = is_regular(twisted_triangulation.config, twisted_triangulation)
    assert not result.regular
    assert result.witness is None


def test_refine_to_triangulation():
    square = cube_config(2)
    flat = Lifting.of([0, 0, 0, 0])
    refined = refine_to_triangulation(square, regular_subdivision(square, flat), flat)
    assert refined.cells == ((0, 1, 3), (0, 2, 3))
    assert is_regular(square, refined).regular

    cube = cube_config(3)
    parity = Lifting.of([0, -1, -1, 0, -1, 0, 0, -1])
    coarse = regular_subdivision(cube, parity)
    fine = refine_to_triangulation(cube, coarse, parity)
    assert fine.is_triangulation
    assert all(any(set(s) <= set(c) for c in coarse.cells) for s in fine.cells)
    validate_subdivision(fine)


def test_refine_needs_inducing_witness():
    square = cube_config(2)
    subdivision = regular_subdivision(square, Lifting.of([0, 0, 0, 1]))
    with pytest.raises(InvariantViolationError):
        refine_to_triangulation(square, subdivision, Lifting.of([0, 0, 0, 0]))


def test_canonicalize_under_full_cube_group():
    square = cube_config(2)
    group = symmetry_group(square, "full-cube")
    first = canonicalize(Subdivision.of(square, [(0, 1, 3), (0, 2, 3)]), group)
    second = canonicalize(Subdivision.of(square, [(0, 1, 2), (1, 2, 3)]), group)
    assert first == second
    assert first.cells == ((0, 1, 2), (1, 2, 3))
    items_only = symmetry_group(square, "item-permutations")
    assert canonicalize(Subdivision.of(square, [(0, 1, 3), (0, 2, 3)]), items_only).cells == ((0, 1, 3), (0, 2, 3))


def test_counter_and_its_antipodal_image_share_a_canonical_form():
    cube = cube_config(3)
    group = symmetry_group(cube, "full-cube")
    antipodal = next(g for g in group if g.flips == (1, 1, 1) and g.items == (0, 1, 2))
    assert antipodal.image == (7, 6, 5, 4, 3, 2, 1, 0)
    counter = Subdivision.of(cube, COUNTER_CELLS)
    flipped = Subdivision.of(cube, antipodal.apply(COUNTER_CELLS))
    validate_subdivision(flipped)
    assert flipped.cells == ((0, 1, 3, 5), (0, 2, 3, 6), (0, 3, 5, 6), (0, 4, 5, 6), (3, 5, 6, 7))
    assert flipped != counter
    assert canonicalize(counter, group) == canonicalize(flipped, group)
    assert canonicalize(counter, group).cells in group.orbit(COUNTER_CELLS)
