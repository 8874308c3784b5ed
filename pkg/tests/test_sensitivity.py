import pytest

from tropical_mechanisms.model.common.errors import MalformedInputError
from tropical_mechanisms.model.geometry.enumeration import all_triangulations
from tropical_mechanisms.model.geometry.point_config import cube_config
from tropical_mechanisms.model.geometry.subdivision import Subdivision
from tropical_mechanisms.model.mechanism.mechanism import mechanism_subdivision
from tropical_mechanisms.model.mechanism.sensitivity import (
    cardinality_distance,
    cardinality_sensitivity,
    hamming_distance,
    hamming_sensitivity,
    has_antipodal_pair,
    optimal_sensitivity,
    sensitivity,
)


def test_distances():
    assert cardinality_distance((1, 0, 1), (0, 1, 0)) == 1
    assert hamming_distance((1, 0, 1), (0, 1, 0)) == 3
    assert cardinality_distance((1, 1), (1, 1)) == 0


def test_counter_sensitivities(counter_mechanism):
    assert cardinality_sensitivity(counter_mechanism) == 2
    assert hamming_sensitivity(counter_mechanism) == 2
    assert sensitivity(mechanism_subdivision(counter_mechanism), "hamming") == 2
    assert not has_antipodal_pair(mechanism_subdivision(counter_mechanism))


def test_trivial_square_has_antipodal_pair(additive_mechanism):
    subdivision = mechanism_subdivision(additive_mechanism)
    assert has_antipodal_pair(subdivision)
    assert cardinality_sensitivity(subdivision) == 2


def test_diagonals_of_the_square():
    config = cube_config(2)
    main = Subdivision.of(config, [(0, 1, 3), (0, 2, 3)])
    anti = Subdivision.of(config, [(0, 1, 2), (1, 2, 3)])
    assert cardinality_sensitivity(main) == 2
    assert cardinality_sensitivity(anti) == 1
    assert hamming_sensitivity(main) == hamming_sensitivity(anti) == 2


def test_unknown_metric(counter_mechanism):
    with pytest.raises(MalformedInputError):
        sensitivity(counter_mechanism, "euclid")
    with pytest.raises(MalformedInputError):
        optimal_sensitivity(2, "euclid")


def test_non_cube_subdivision_is_rejected(twisted_triangulation):
    with pytest.raises(MalformedInputError):
        cardinality_sensitivity(twisted_triangulation)


def test_optimal_on_the_square():
    assert optimal_sensitivity(2, "cardinality").value == 1
    assert optimal_sensitivity(2, "hamming").value == 2


def test_item_count_must_be_positive():
    with pytest.raises(MalformedInputError):
        optimal_sensitivity(0, "cardinality")


def test_bracket_beyond_the_guard():
    cardinality = optimal_sensitivity(4, "cardinality")
    assert cardinality.exact
    assert cardinality.value == 1
    hamming = optimal_sensitivity(4, "hamming")
    assert (hamming.lower, hamming.upper) == (2, 3)
    assert not hamming.exact
    with pytest.raises(MalformedInputError):
        hamming.value


@pytest.mark.slow
def test_optimal_on_the_cube():
    assert optimal_sensitivity(3, "cardinality").value == 1
    assert optimal_sensitivity(3, "hamming").value == 2


@pytest.mark.slow
def test_bracket_for_five_items():
    bound = optimal_sensitivity(5, "hamming")
    assert (bound.lower, bound.upper) == (2, 4)


@pytest.mark.parametrize("m", [2, pytest.param(3, marks=pytest.mark.slow)])
def test_every_triangulation_has_cardinality_at_least_one(m):
    config = cube_config(m)
    triangulations = all_triangulations(config)
    assert triangulations
    for cells in triangulations:
        assert cardinality_sensitivity(Subdivision(config, cells)) >= 1
    assert cardinality_sensitivity(Subdivision.of(config, [range(2 ** m)])) == m
