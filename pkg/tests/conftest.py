import json
import random
from fractions import Fraction as F

import pytest

from tropical_mechanisms.model.geometry.point_config import custom_config
from tropical_mechanisms.model.geometry.subdivision import Subdivision
from tropical_mechanisms.model.mechanism.affine import AffineMaximizer
from tropical_mechanisms.model.mechanism.mechanism import Mechanism
from tropical_mechanisms.model.tropical.polynomial import TropicalPolynomial

# cells of the counter mechanism, normalized volumes 1, 1, 2, 1, 1 in this order
COUNTER_CELLS = ((0, 1, 2, 4), (1, 2, 3, 7), (1, 2, 4, 7), (1, 4, 5, 7), (2, 4, 6, 7))

RANDOM_SEED = 20240601

QUADRANGLE_TERMS = {
    (0, 0): 0,
    (1, 0): 1,
    (0, 1): 1,
    (2, 0): 0,
    (1, 1): 0,
    (0, 2): -1,
    (2, 1): -2,
}

LATTICE_TERMS = {
    (0, 0): 0,
    (1, 0): -2,
    (0, 1): -2,
    (2, 0): -11,
    (1, 1): -6,
    (0, 2): -9,
    (2, 1): -15,
    (1, 2): -15,
    (0, 3): -14,
    (2, 2): -19,
    (1, 3): -22,
    (2, 3): -32,
}


@pytest.fixture
def counter_mechanism():
    """Payments 0, 1/4, 2/3, 5/6 by bundle size on three items."""
    return Mechanism.of([0, F(1, 4), F(1, 4), F(2, 3), F(1, 4), F(2, 3), F(2, 3), F(5, 6)])


@pytest.fixture
def additive_mechanism():
    """Item prices 1 and 1: the trivial subdivision of the square."""
    return Mechanism.of([0, 1, 1, 2])


@pytest.fixture
def quadrangle_polynomial():
    return TropicalPolynomial.from_terms(QUADRANGLE_TERMS)


@pytest.fixture
def lattice_polynomial():
    return TropicalPolynomial.from_terms(LATTICE_TERMS)


@pytest.fixture
def affine_2x2():
    """Two players, two items, bonus 1/5 for splitting the items."""
    return AffineMaximizer.from_mapping(
        2, 2, [1, 1], {"10|10": "0", "10|01": "1/5", "01|10": "1/5", "01|01": "0"}
    )


@pytest.fixture
def twisted_triangulation():
    """Outer triangle with a homothetic inner one, quadrilaterals split cyclically."""
    config = custom_config([[4, 0], [0, 4], [0, 0], [2, 1], [1, 2], [1, 1]])
    cells = [(3, 4, 5), (0, 1, 4), (0, 3, 4), (1, 2, 5), (1, 4, 5), (0, 2, 3), (2, 3, 5)]
    return Subdivision.of(config, cells)


@pytest.fixture
def rng():
    return random.Random(RANDOM_SEED)


@pytest.fixture
def write_json(tmp_path):
    def write(name, data):
        path = tmp_path / name
        path.write_text(json.dumps(data), encoding="utf-8")
        return str(path)

    return write
