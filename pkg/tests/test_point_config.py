import pytest

from tropical_mechanisms.model.common.errors import MalformedInputError
from tropical_mechanisms.model.geometry.point_config import (
    box_lattice_config,
    config_from_shorthand,
    cube_config,
    custom_config,
    simplex_product_config,
)


def test_cube_order_is_binary_value():
    config = cube_config(3)
    assert config.size == 8
    assert config.points[5] == (1, 0, 1)
    assert config.labels[5] == "101"
    assert config.index[(0, 1, 1)] == 3
    assert config.affine_dimension == 3


def test_simplex_product_labels_are_row_major():
    config = simplex_product_config(2, 2)
    assert list(config.labels) == ["10|10", "10|01", "01|10", "01|01"]
    assert config.points[1] == (1, 0, 0, 1)
    assert config.affine_dimension == 2
    assert simplex_product_config(3, 2).affine_dimension == 4


def test_box_lattice():
    config = box_lattice_config([2, 3])
    assert config.size == 12
    assert config.points[0] == (0, 0)
    assert config.points[-1] == (2, 3)
    assert config.labels[5] == "(1,1)"


@pytest.mark.parametrize(
    "text, kind, size",
    [("cube:2", "cube", 4), ("simplexprod:3x2", "simplexprod", 9), ("box:2x3", "box", 12)],
)
def test_shorthand_round_trip(text, kind, size):
    config = config_from_shorthand(text)
    assert config.kind == kind
    assert config.size == size
    assert config.shorthand == text


@pytest.mark.parametrize("text", ["cube:0", "cube:11", "cube:x", "simplexprod:1x2", "box:0x2", "torus:3"])
def test_bad_shorthand(text):
    with pytest.raises(MalformedInputError):
        config_from_shorthand(text)


def test_custom_config_validation():
    config = custom_config([[0, 0], [2, 0], [0, 2], [1, 1]])
    assert config.shorthand is None
    assert config.labels[3] == "(1,1)"
    assert config.affine_dimension == 2
    with pytest.raises(MalformedInputError):
        custom_config([[0, 0], [0, 0]])
    with pytest.raises(MalformedInputError):
        custom_config([])
