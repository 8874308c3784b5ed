"""
Regular subdivisions of point configurations.

Conventions: max-plus, UPPER faces. A lifting assigns a height to every
point; the maximal cells of the induced regular subdivision are the on-sets
of the upper facets of the lifted configuration, projected back.

Features
--------
- `regular_subdivision`: cells from a lifting.
- `validate_subdivision`: full dimension, volume sum, pairwise common-face
  intersections, no containment.
- `is_regular`: strict LP for a lifting that reproduces a subdivision.
- `refine_to_triangulation`: pulling refinement in global index order.
- `canonicalize`: lexicographically smallest image under a symmetry group.
"""

import itertools
import logging
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, FrozenSet, Iterable, List, Optional, Sequence, Tuple

from tropical_mechanisms.controller.config import SUBSET_ENUMERATION_LIMIT
from tropical_mechanisms.model.common.errors import (
    IncompatibleGroupError,
    InvariantViolationError,
    MalformedInputError,
)
from tropical_mechanisms.model.exact import linalg
from tropical_mechanisms.model.exact.lp import Constraint, Relation, lp_feasible_strict
from tropical_mechanisms.model.exact.rational import to_vector
from tropical_mechanisms.model.geometry import hull
from tropical_mechanisms.model.geometry.hull import UpperFacet
from tropical_mechanisms.model.geometry.point_config import PointConfiguration
from tropical_mechanisms.model.geometry.symmetry import SymmetryGroup

logger = logging.getLogger(__name__)

Cell = Tuple[int, ...]


@dataclass(frozen=True)
class Lifting:
    heights: Tuple[Fraction, ...]

    @classmethod
    def of(cls, heights: Iterable) -> "Lifting":
        return cls(to_vector(heights))

    def __len__(self) -> int:
        return len(self.heights)


@dataclass(frozen=True)
class Subdivision:
    """
    Maximal cells (sorted index tuples, sorted) over a configuration.
    """

    config: PointConfiguration
    cells: Tuple[Cell, ...]

    @classmethod
    def of(cls, config: PointConfiguration, cells: Iterable[Iterable[int]]) -> "Subdivision":
        normalized = sorted({tuple(sorted(set(c))) for c in cells})
        for cell in normalized:
            if not cell:
                raise MalformedInputError("empty cell")
            if cell[0] < 0 or cell[-1] >= config.size:
                raise MalformedInputError(f"cell {cell} has an index outside the configuration")
        return cls(config, tuple(normalized))

    @property
    def is_triangulation(self) -> bool:
        d = self.config.affine_dimension
        return all(len(cell) == d + 1 for cell in self.cells)

    @property
    def used_points(self) -> FrozenSet[int]:
        return frozenset(i for cell in self.cells for i in cell)

    def cell_labels(self) -> List[Tuple[str, ...]]:
        return [self.config.labels_of(cell) for cell in self.cells]


# ---------- Upper facets ---------- #
def _upper_facets_by_subsets(points, heights) -> List[UpperFacet]:
    """
    Every (d+1)-subset spanning a non-vertical hyperplane is tried; the
    hyperplane is kept when no lifted point lies above it.
    """
    n = len(points)
    d = len(points[0])
    found: Dict[FrozenSet[int], UpperFacet] = {}
    found_masks: List[int] = []
    for combo in itertools.combinations(range(n), d + 1):
        combo_mask = 0
        for i in combo:
            combo_mask |= 1 << i
        if any((combo_mask & mask) == combo_mask for mask in found_masks):
            continue
        solution = linalg.solve_unique(
            [list(points[i]) + [1] for i in combo], [heights[i] for i in combo]
        )
        if solution is None:
            continue
        slope, offset = solution[:d], solution[d]
        on_set = []
        for v in range(n):
            value = linalg.dot(slope, points[v]) + offset
            if heights[v] > value:
                break
            if heights[v] == value:
                on_set.append(v)
        else:
            cell = frozenset(on_set)
            found[cell] = UpperFacet(cell, tuple(slope), offset)
            found_masks.append(sum(1 << i for i in cell))
    return list(found.values())


def upper_facets(config: PointConfiguration, lifting: Lifting) -> List[UpperFacet]:
    """
    Upper facets of the lifted configuration, in affine coordinates of the
    configuration.

    :param config: At least two points, affine dimension >= 1.
    :param lifting: One height per point.
    """
    if len(lifting) != config.size:
        raise MalformedInputError(f"lifting has {len(lifting)} heights for {config.size} points")
    d = config.affine_dimension
    if config.size < 2 or d < 1:
        raise MalformedInputError("degenerate configuration: affine dimension must be at least 1")
    points = config.affine_points
    if math.comb(config.size, d + 1) <= SUBSET_ENUMERATION_LIMIT:
        return _upper_facets_by_subsets(points, lifting.heights)
    logger.debug(f"upper hull of {config.size} points in dimension {d} by double description")
    return hull.upper_hull(points, lifting.heights)


def regular_subdivision(config: PointConfiguration, lifting: Lifting) -> Subdivision:
    """
    Regular subdivision induced by a lifting (projection of the upper faces).

    Points strictly below every upper facet belong to no cell.

    :param config: The point configuration.
    :param lifting: Heights, one per point.
    :return: The subdivision with cells = on-sets of the upper facets.
    """
    facets = upper_facets(config, lifting)
    return Subdivision.of(config, [f.cell for f in facets])


# ---------- Volumes and validation ---------- #
def _pulling(points, indices: Sequence[int]) -> List[Cell]:
    """Pulling triangulation of conv(points[indices]), smallest index first."""
    indices = tuple(sorted(indices))
    local = [points[i] for i in indices]
    k = linalg.affine_rank(local)
    if len(indices) == k + 1:
        return [indices]
    apex = indices[0]
    simplices = []
    for facet in hull.convex_hull_facets(local):
        members = [indices[j] for j in facet]
        if apex in members:
            continue
        for simplex in _pulling(points, members):
            simplices.append(tuple(sorted(simplex + (apex,))))
    return simplices


def simplex_volume(config: PointConfiguration, simplex: Sequence[int]) -> Fraction:
    """Normalized volume |det(p_i - p_0)| in affine coordinates."""
    points = config.affine_points
    base = points[simplex[0]]
    rows = [[a - b for a, b in zip(points[i], base)] for i in simplex[1:]]
    if len(rows) != config.affine_dimension:
        return Fraction(0)
    return abs(linalg.determinant(rows))


def normalized_volume(config: PointConfiguration, cell: Sequence[int]) -> Fraction:
    """Normalized volume of conv(cell)."""
    d = config.affine_dimension
    points = config.affine_points
    if linalg.affine_rank([points[i] for i in cell]) < d:
        return Fraction(0)
    if len(cell) == d + 1:
        return simplex_volume(config, cell)
    return sum((simplex_volume(config, s) for s in _pulling(points, cell)), Fraction(0))


def hull_volume(config: PointConfiguration) -> Fraction:
    return normalized_volume(config, range(config.size))


def cells_meet_properly(config: PointConfiguration, first: Cell, second: Cell) -> bool:
    """
    Whether conv(first) and conv(second) intersect in a common face.

    Decided by a strict LP: an affine g vanishing on the shared points,
    positive on the rest of `first` and negative on the rest of `second`.
    """
    points = config.affine_points
    d = config.affine_dimension
    shared = set(first) & set(second)
    only_first = [i for i in first if i not in shared]
    only_second = [i for i in second if i not in shared]
    if not only_first or not only_second:
        return set(first) == set(second)
    constraints, strict = [], []
    for i in shared:
        constraints.append(Constraint(tuple(points[i]) + (Fraction(1),), Relation.EQ, Fraction(0)))
        strict.append(False)
    for i in only_first:
        constraints.append(Constraint(tuple(points[i]) + (Fraction(1),), Relation.GE, Fraction(0)))
        strict.append(True)
    for i in only_second:
        constraints.append(Constraint(tuple(points[i]) + (Fraction(1),), Relation.LE, Fraction(0)))
        strict.append(True)
    return lp_feasible_strict(d + 1, constraints, strict).feasible


def validate_subdivision(subdivision: Subdivision) -> None:
    """
    Check the subdivision invariants; raise InvariantViolationError with the
    violating cell (pair) otherwise.
    """
    config = subdivision.config
    d = config.affine_dimension
    points = config.affine_points
    cells = subdivision.cells
    if not cells:
        raise InvariantViolationError("subdivision has no cells")
    for cell in cells:
        if linalg.affine_rank([points[i] for i in cell]) != d:
            raise InvariantViolationError(f"cell {cell} is not full-dimensional", (cell,))
    for a, b in itertools.combinations(cells, 2):
        if set(a) <= set(b) or set(b) <= set(a):
            raise InvariantViolationError(f"cell {a} and cell {b} are nested", (a, b))
        if not cells_meet_properly(config, a, b):
            raise InvariantViolationError(f"cells {a} and {b} do not meet in a common face", (a, b))
    total = sum((normalized_volume(config, c) for c in cells), Fraction(0))
    expected = hull_volume(config)
    if total != expected:
        raise InvariantViolationError(f"cell volumes sum to {total}, hull volume is {expected}")


# ---------- Regularity ---------- #
@dataclass(frozen=True)
class RegularityResult:
    regular: bool
    witness: Optional[Lifting] = None


def is_regular(config: PointConfiguration, subdivision: Subdivision) -> RegularityResult:
    """
    Decide regularity of a subdivision.

    Unknowns: heights lambda and, per maximal cell, an affine function that
    equals lambda on the cell and is strictly greater elsewhere.

    :return: Regularity and, if regular, a lifting whose regular subdivision
             is exactly the input.
    """
    if subdivision.config != config:
        raise MalformedInputError("subdivision belongs to another configuration")
    validate_subdivision(subdivision)
    n = config.size
    if len(subdivision.cells) == 1 and len(subdivision.cells[0]) == n:
        return RegularityResult(True, Lifting(tuple([Fraction(0)] * n)))

    d = config.affine_dimension
    points = config.affine_points
    width = n + len(subdivision.cells) * (d + 1)
    constraints, strict = [], []
    for k, cell in enumerate(subdivision.cells):
        start = n + k * (d + 1)
        members = set(cell)
        for v in range(n):
            row = [Fraction(0)] * width
            row[v] = Fraction(-1)
            for j, x in enumerate(points[v]):
                row[start + j] = x
            row[start + d] = Fraction(1)
            if v in members:
                constraints.append(Constraint(tuple(row), Relation.EQ, Fraction(0)))
                strict.append(False)
            else:
                constraints.append(Constraint(tuple(row), Relation.GE, Fraction(0)))
                strict.append(True)
    outcome = lp_feasible_strict(width, constraints, strict)
    if not outcome.feasible:
        return RegularityResult(False)
    witness = Lifting(tuple(outcome.witness[:n]))
    if regular_subdivision(config, witness).cells != subdivision.cells:
        raise InvariantViolationError("regularity witness does not reproduce the subdivision")
    return RegularityResult(True, witness)


def refine_to_triangulation(
    config: PointConfiguration, subdivision: Subdivision, witness: Lifting
) -> Subdivision:
    """
    Regular triangulation refining a regular subdivision.

    Realizes the perturbation lambda + eps * omega with omega_i = eps^i: each
    cell is replaced by its pulling triangulation in global index order.

    :param witness: A lifting inducing `subdivision`.
    """
    if regular_subdivision(config, witness).cells != subdivision.cells:
        raise InvariantViolationError("witness lifting does not induce the given subdivision")
    points = config.affine_points
    simplices = []
    for cell in subdivision.cells:
        simplices.extend(_pulling(points, cell))
    return Subdivision.of(config, simplices)


# ---------- Symmetry ---------- #
def canonicalize(subdivision: Subdivision, group: SymmetryGroup) -> Subdivision:
    """
    Lexicographically smallest image of the sorted cell list over the group.
    """
    size = subdivision.config.size
    if any(len(g.image) != size for g in group):
        raise IncompatibleGroupError("group does not act on the subdivision's configuration")
    best = min(g.apply(subdivision.cells) for g in group)
    return Subdivision(subdivision.config, best)
