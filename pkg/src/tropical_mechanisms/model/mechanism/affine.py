"""
Affine maximizers for n players and m items.

An allocation A is an m x n 0/1 matrix with one 1 per item row. The rule
picks A maximizing c_A + sum_j w_j theta_j . A_j, where theta_j in R^m is the
type of player j and A_j the j-th column. In the scaled coordinates
y_ij = w_j theta_ij this is the tropical polynomial with support the
vertices of (Delta_{n-1})^m and coefficients c_A, so the indifference
complex is read off the regular subdivision lifted by the biases.

Types are flattened row-major like the allocations: theta[i * n + j] is the
value of player j for item i.
"""

import logging
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, Iterable, List, Sequence, Tuple

from tropical_mechanisms.model.common.errors import MalformedInputError
from tropical_mechanisms.model.exact.rational import Vector, as_rational, to_vector
from tropical_mechanisms.model.geometry.point_config import PointConfiguration, simplex_product_config
from tropical_mechanisms.model.geometry.subdivision import Lifting, Subdivision, regular_subdivision
from tropical_mechanisms.model.mechanism.mechanism import IndifferenceComplex, Mechanism
from tropical_mechanisms.model.tropical.polynomial import Evaluation, Polyhedron, TropicalPolynomial, evaluate

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class AffineMaximizer:
    """
    :param players: n >= 2.
    :param items: m >= 1.
    :param weights: One nonzero weight per player.
    :param biases: One bias per allocation, in simplex_product_config order.
    """

    players: int
    items: int
    weights: Tuple[Fraction, ...]
    biases: Tuple[Fraction, ...]

    def __post_init__(self):
        if len(self.weights) != self.players:
            raise MalformedInputError(f"{self.players} players need {self.players} weights")
        if any(w == 0 for w in self.weights):
            raise MalformedInputError("player weights must be nonzero")
        expected = self.players ** self.items
        if len(self.biases) != expected:
            raise MalformedInputError(f"{expected} allocations need {expected} biases, got {len(self.biases)}")

    @classmethod
    def of(cls, players: int, items: int, weights: Iterable, biases: Iterable) -> "AffineMaximizer":
        return cls(players, items, to_vector(weights), to_vector(biases))

    @classmethod
    def from_mapping(cls, players: int, items: int, weights: Iterable, biases: Dict[str, object]) -> "AffineMaximizer":
        """Biases keyed by row-major allocation labels such as "10|01"."""
        config = simplex_product_config(players, items)
        unknown = set(biases) - set(config.labels)
        if unknown:
            raise MalformedInputError(f"unknown allocation labels: {sorted(unknown)}")
        missing = [label for label in config.labels if label not in biases]
        if missing:
            raise MalformedInputError(f"missing biases for allocations: {missing}")
        return cls(players, items, to_vector(weights), tuple(as_rational(biases[x]) for x in config.labels))

    @classmethod
    def from_mechanism(cls, mech: Mechanism) -> "AffineMaximizer":
        """
        Two-player embedding of a one-player mechanism: player 1 receives
        bundle a, player 2 the rest, bias -p_a, unit weights.
        """
        config = simplex_product_config(2, mech.items)
        biases = []
        for point in config.points:
            bundle = tuple(point[2 * i] for i in range(mech.items))
            biases.append(-mech.payment(bundle))
        return cls(2, mech.items, (Fraction(1), Fraction(1)), tuple(biases))

    @property
    def config(self) -> PointConfiguration:
        return simplex_product_config(self.players, self.items)

    def scale(self, theta: Sequence) -> Vector:
        """y_ij = w_j theta_ij."""
        theta = to_vector(theta)
        n = self.players
        if len(theta) != n * self.items:
            raise MalformedInputError(f"type vector needs {n * self.items} entries, got {len(theta)}")
        return tuple(self.weights[k % n] * t for k, t in enumerate(theta))


def affine_polynomial(am: AffineMaximizer) -> TropicalPolynomial:
    """Utility in scaled coordinates: support = allocations, coefficients = biases."""
    return TropicalPolynomial(am.config.points, am.biases)


def evaluate_affine(am: AffineMaximizer, theta: Sequence) -> Evaluation:
    """Social value and the chosen allocations at a type profile."""
    return evaluate(affine_polynomial(am), am.scale(theta))


def affine_subdivision(am: AffineMaximizer) -> Subdivision:
    return regular_subdivision(am.config, Lifting(am.biases))


def affine_indifference_complex(am: AffineMaximizer) -> IndifferenceComplex:
    """Facets = maximal cells of the subdivision of (Delta_{n-1})^m lifted by c_A."""
    return IndifferenceComplex.from_subdivision(affine_subdivision(am))


# ---------- Lineality ---------- #
@dataclass(frozen=True)
class LinealityReduction:
    """
    Adding t / w_j to every theta_ij of one item row i shifts every term by t,
    so the difference sets are invariant along the m row directions. Their
    sum is W = (1/w_1, ..., 1/w_n) repeated per item row. The reduction
    fixes theta_{i,n} = 0 in every row (the last player is normalized).

    :param direction: W, flattened row-major.
    :param normalized: Flat indices of the normalized coordinates.
    :param kept: Flat indices of the remaining coordinates.
    """

    players: int
    items: int
    direction: Vector
    normalized: Tuple[int, ...]
    kept: Tuple[int, ...]

    @property
    def dimension(self) -> int:
        return len(self.kept)

    def project(self, theta: Sequence) -> Vector:
        """Move theta along the row directions onto the normalized slice."""
        theta = to_vector(theta)
        n = self.players
        shifted = list(theta)
        for i in range(self.items):
            last = i * n + n - 1
            t = theta[last] / self.direction[last]
            for j in range(n):
                shifted[i * n + j] -= t * self.direction[i * n + j]
        return tuple(shifted[k] for k in self.kept)

    def lift(self, reduced: Sequence) -> Vector:
        """The type on the normalized slice with the given reduced coordinates."""
        full = [Fraction(0)] * (self.players * self.items)
        for k, value in zip(self.kept, to_vector(reduced)):
            full[k] = value
        return tuple(full)


def lineality_reduce(am: AffineMaximizer) -> LinealityReduction:
    """
    Projection of the type space modulo the lineality of the difference sets.
    """
    n, m = am.players, am.items
    direction = tuple(1 / am.weights[j] for _ in range(m) for j in range(n))
    normalized = tuple(i * n + n - 1 for i in range(m))
    kept = tuple(k for k in range(n * m) if k not in normalized)
    return LinealityReduction(n, m, direction, normalized, kept)


def affine_regions_reduced(am: AffineMaximizer) -> Dict[str, Polyhedron]:
    """
    Difference set of every allocation in the reduced coordinates:
    {theta : c_A + sum w_j theta_ij A_ij >= c_B + sum w_j theta_ij B_ij for all B}
    restricted to theta_{i,n} = 0.
    """
    reduction = lineality_reduce(am)
    n = am.players
    points = am.config.points
    regions: Dict[str, Polyhedron] = {}
    for a, (label, alloc) in enumerate(zip(am.config.labels, points)):
        normals: List[Vector] = []
        offsets: List[Fraction] = []
        for b, other in enumerate(points):
            if a == b:
                continue
            normals.append(tuple(am.weights[k % n] * (alloc[k] - other[k]) for k in reduction.kept))
            offsets.append(am.biases[b] - am.biases[a])
        regions[label] = Polyhedron(reduction.dimension, tuple(normals), tuple(offsets))
    return regions


def multiplayer_cardinality_sensitivity(subdivision: Subdivision) -> int:
    """
    Largest change in the number of items one player receives between two
    allocations of the same facet.
    """
    config = subdivision.config
    if config.kind != "simplexprod":
        raise MalformedInputError(f"multiplayer sensitivity needs a simplex product, got {config.kind}")
    n, m = config.shape
    counts = [
        tuple(sum(p[i * n + j] for i in range(m)) for j in range(n)) for p in config.points
    ]
    worst = 0
    for cell in subdivision.cells:
        for x in cell:
            for y in cell:
                if y > x:
                    worst = max(worst, max(abs(a - b) for a, b in zip(counts[x], counts[y])))
    return worst
