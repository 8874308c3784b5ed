"""
Single-player mechanisms given by a payment vector.

A mechanism on m items charges p_a for bundle a in {0,1}^m (index = binary
value of a, most significant item first). The player's utility
u_p(theta) = max{theta . a - p_a} is a tropical polynomial; its regions are
the difference sets Q_a and its dual subdivision of the m-cube determines
the indifference complex.
"""

import logging
import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, Iterable, List, Optional, Sequence, Tuple, Union

from tropical_mechanisms.controller.config import (
    MAX_CUBE_ITEMS,
    MAX_INTERSECTION_CHECK_ITEMS,
    RANDOM_DENOMINATOR_MAX,
)
from tropical_mechanisms.model.common.errors import MalformedInputError
from tropical_mechanisms.model.exact.lp import Constraint, Relation, lp_feasible
from tropical_mechanisms.model.exact.rational import Vector, as_rational
from tropical_mechanisms.model.geometry.point_config import PointConfiguration, bundle_label, cube_config
from tropical_mechanisms.model.geometry.subdivision import Subdivision
from tropical_mechanisms.model.tropical.polynomial import TropicalPolynomial, dual_subdivision

logger = logging.getLogger(__name__)

Bundle = Union[int, str, Sequence[int]]


@dataclass(frozen=True)
class Mechanism:
    """
    :param items: Number of items m.
    :param payments: 2^m payments indexed by the binary value of the bundle.
    """

    items: int
    payments: Tuple[Fraction, ...]

    def __post_init__(self):
        if not 1 <= self.items <= MAX_CUBE_ITEMS:
            raise MalformedInputError(f"item count must be in [1, {MAX_CUBE_ITEMS}], got {self.items}")
        if len(self.payments) != 2 ** self.items:
            raise MalformedInputError(
                f"{self.items} items need {2 ** self.items} payments, got {len(self.payments)}"
            )

    @classmethod
    def of(cls, payments: Iterable) -> "Mechanism":
        values = tuple(as_rational(p) for p in payments)
        items = max(len(values).bit_length() - 1, 0)
        return cls(items, values)

    @classmethod
    def from_mapping(cls, items: int, payments: Dict[str, object]) -> "Mechanism":
        """Build from {"010": "1/4", ...}; every bundle must be present."""
        values = []
        for k in range(2 ** items):
            label = bundle_label(k, items)
            if label not in payments:
                raise MalformedInputError(f"missing payment for bundle {label}")
            values.append(as_rational(payments[label]))
        if len(payments) != 2 ** items:
            raise MalformedInputError(f"unexpected bundle keys: {sorted(set(payments) - set(bundle_labels(items)))}")
        return cls(items, tuple(values))

    @property
    def config(self) -> PointConfiguration:
        return cube_config(self.items)

    def payment(self, bundle: Bundle) -> Fraction:
        return self.payments[bundle_index(self.items, bundle)]


def bundle_labels(m: int) -> List[str]:
    return [bundle_label(k, m) for k in range(2 ** m)]


def bundle_index(m: int, bundle: Bundle) -> int:
    """Index of a bundle given as index, bitstring or 0/1 vector."""
    if isinstance(bundle, bool):
        raise MalformedInputError(f"bad bundle {bundle!r}")
    if isinstance(bundle, int):
        index = bundle
    elif isinstance(bundle, str):
        if len(bundle) != m or set(bundle) - {"0", "1"}:
            raise MalformedInputError(f"bad bundle {bundle!r} for {m} items")
        index = int(bundle, 2)
    else:
        bits = tuple(bundle)
        if len(bits) != m or any(b not in (0, 1) for b in bits):
            raise MalformedInputError(f"bad bundle {bits!r} for {m} items")
        index = 0
        for b in bits:
            index = 2 * index + b
    if not 0 <= index < 2 ** m:
        raise MalformedInputError(f"bundle index {index} out of range for {m} items")
    return index


def utility_polynomial(mech: Mechanism) -> TropicalPolynomial:
    """u_p(theta) = max{theta . a - p_a}: support = cube vertices, coefficients -p_a."""
    return TropicalPolynomial(mech.config.points, tuple(-p for p in mech.payments))


def mechanism_subdivision(mech: Mechanism) -> Subdivision:
    """Dual subdivision of u_p, over the cube configuration."""
    dual = dual_subdivision(utility_polynomial(mech))
    return Subdivision(mech.config, dual.cells)


# ---------- Indifference complex ---------- #
@dataclass(frozen=True)
class IndifferenceComplex:
    """
    Facets of the nerve of the difference sets; faces are all subsets of facets.
    """

    ground_set: Tuple[str, ...]
    facets: Tuple[Tuple[str, ...], ...]

    def __post_init__(self):
        sets = [set(f) for f in self.facets]
        for i, a in enumerate(sets):
            for j, b in enumerate(sets):
                if i != j and a <= b:
                    raise MalformedInputError(f"facet {self.facets[i]} lies inside {self.facets[j]}")

    @classmethod
    def from_subdivision(cls, subdivision: Subdivision) -> "IndifferenceComplex":
        config = subdivision.config
        return cls(config.labels, tuple(config.labels_of(cell) for cell in subdivision.cells))

    def is_face(self, labels: Iterable[str]) -> bool:
        wanted = set(labels)
        return any(wanted <= set(f) for f in self.facets)

    @property
    def dimension(self) -> int:
        return max(len(f) for f in self.facets) - 1


def indifference_complex(mech: Mechanism) -> IndifferenceComplex:
    """Facets = label sets of the maximal cells of the dual subdivision of u_p."""
    return IndifferenceComplex.from_subdivision(mechanism_subdivision(mech))


def regions_intersect(mech: Mechanism, bundles: Sequence[int]) -> Optional[Vector]:
    """
    A type in the intersection of the closed difference sets Q_a, a in bundles.

    Variables (theta, t): t = theta . a - p_a on the bundles and
    t >= theta . b - p_b for every bundle b.

    :return: A witness type, or None if the intersection is empty.
    """
    points = mech.config.points
    m = mech.items
    wanted = set(bundles)
    constraints = []
    for b, point in enumerate(points):
        row = tuple(Fraction(x) for x in point) + (Fraction(-1),)
        relation = Relation.EQ if b in wanted else Relation.LE
        constraints.append(Constraint(row, relation, mech.payments[b]))
    witness = lp_feasible(m + 1, constraints)
    return None if witness is None else witness[:m]


def verify_complex_by_intersection(mech: Mechanism) -> bool:
    """
    Cross-check the indifference complex against direct LP intersection tests.

    Nonempty intersections are grown bundle by bundle (supersets of an empty
    intersection are skipped); the complex is confirmed iff every nonempty
    intersection is a face and every facet has a nonempty intersection.
    """
    m = mech.items
    if m > MAX_INTERSECTION_CHECK_ITEMS:
        raise MalformedInputError(f"intersection check supports at most {MAX_INTERSECTION_CHECK_ITEMS} items")
    complex_ = indifference_complex(mech)
    labels = mech.config.labels
    size = 2 ** m

    frontier: List[Tuple[int, ...]] = []
    for a in range(size):
        if regions_intersect(mech, [a]) is not None:
            frontier.append((a,))
    checked = 0
    while frontier:
        grown = []
        for face in frontier:
            checked += 1
            if not complex_.is_face(labels[i] for i in face):
                logger.debug(f"bundles {[labels[i] for i in face]} meet but form no face")
                return False
            for b in range(face[-1] + 1, size):
                candidate = face + (b,)
                if regions_intersect(mech, candidate) is not None:
                    grown.append(candidate)
        frontier = grown
    for facet in complex_.facets:
        if regions_intersect(mech, [mech.config.label_index[x] for x in facet]) is None:
            logger.debug(f"facet {facet} has an empty intersection")
            return False
    logger.debug(f"intersection check: {checked} nonempty bundle sets, all faces")
    return True


def random_mechanism(
    m: int,
    rng: random.Random,
    max_denominator: int = RANDOM_DENOMINATOR_MAX,
    nondegenerate: bool = False,
    attempts: int = 200,
) -> Mechanism:
    """
    Payments drawn as uniform rationals in [0, m] with denominators up to
    `max_denominator`.

    :param nondegenerate: Resample until the subdivision is a triangulation.
    """
    for _ in range(attempts):
        payments = []
        for _ in range(2 ** m):
            den = rng.randint(1, max_denominator)
            payments.append(Fraction(rng.randint(0, m * den), den))
        mech = Mechanism(m, tuple(payments))
        if not nondegenerate or mechanism_subdivision(mech).is_triangulation:
            return mech
    raise MalformedInputError(f"no nondegenerate mechanism found in {attempts} draws")
