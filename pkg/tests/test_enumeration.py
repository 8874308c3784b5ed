import pytest

from tropical_mechanisms.model.common.errors import SizeGuardError
from tropical_mechanisms.model.geometry.enumeration import all_triangulations, enumerate_triangulations
from tropical_mechanisms.model.geometry.point_config import (
    box_lattice_config,
    config_from_shorthand,
    cube_config,
    simplex_product_config,
)
from tropical_mechanisms.model.geometry.subdivision import Subdivision, is_regular, validate_subdivision
from tropical_mechanisms.model.geometry.symmetry import symmetry_group


def test_square_has_two_triangulations():
    config = cube_config(2)
    assert all_triangulations(config) == [((0, 1, 2), (1, 2, 3)), ((0, 1, 3), (0, 2, 3))]
    result = enumerate_triangulations(config, regular_only=True)
    assert result.total == 2
    assert result.regular == 2
    assert result.count == 2


@pytest.mark.parametrize("kind, orbits", [("full-cube", 1), ("item-permutations", 2)])
def test_square_orbits(kind, orbits):
    config = cube_config(2)
    result = enumerate_triangulations(config, group=symmetry_group(config, kind))
    assert result.count == orbits
    assert sum(result.orbit_sizes) == 2
    assert result.group_kind == kind


def test_triangle_and_product_of_segments():
    assert len(all_triangulations(simplex_product_config(3, 1))) == 1
    assert len(all_triangulations(simplex_product_config(2, 2))) == 2


def test_grid_triangulations_are_valid():
    config = box_lattice_config([1, 2])
    triangulations = all_triangulations(config)
    assert len(triangulations) == len(set(triangulations))
    for cells in triangulations:
        validate_subdivision(Subdivision(config, cells))


@pytest.mark.parametrize(
    "text",
    [
        "box:1x2",
        "cube:2",
        "simplexprod:2x2",
        pytest.param("cube:3", marks=pytest.mark.slow),
    ],
)
def test_order_independence(text):
    config = config_from_shorthand(text)
    baseline = all_triangulations(config)
    for seed in (1, 2, 3, 4, 5):
        assert all_triangulations(config, order_seed=seed) == baseline
        assert enumerate_triangulations(config, order_seed=seed).count == len(baseline)


def test_parallel_matches_serial():
    config = cube_config(2)
    assert all_triangulations(config, jobs=2) == all_triangulations(config)


@pytest.mark.parametrize("text", ["cube:4", "simplexprod:2x4", "box:2x3"])
def test_size_guard(text):
    with pytest.raises(SizeGuardError):
        enumerate_triangulations(config_from_shorthand(text))


@pytest.mark.slow
def test_cube3_counts():
    config = cube_config(3)
    result = enumerate_triangulations(config, regular_only=True)
    assert result.total == 74
    assert result.regular == 74
    assert enumerate_triangulations(config, group=symmetry_group(config, "item-permutations")).count == 23
    full = enumerate_triangulations(config, group=symmetry_group(config, "full-cube"))
    assert full.count == 6
    assert sum(full.orbit_sizes) == 74


@pytest.mark.slow
def test_three_players_two_items():
    config = simplex_product_config(3, 2)
    result = enumerate_triangulations(config, regular_only=True, group=symmetry_group(config, "player-item"))
    assert result.total == 108
    assert result.regular == 108
    assert result.count == 5
    for representative in result.representatives:
        assert is_regular(config, representative).regular
