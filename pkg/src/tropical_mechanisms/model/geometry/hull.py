"""
Exact facet computation by the double description method.

The facets of a pointed full-dimensional cone cone(G) are the extreme rays
of its polar {a : g . a >= 0 for all g in G}; those are computed by
Motzkin's incremental double description with the combinatorial adjacency
test. Everything is integral: rational rows are scaled by their common
denominator and rays are divided by their gcd.

Two uses:
- `convex_hull_facets(points)`: facets of conv(points) as on-sets;
- `upper_hull(points, heights)`: upper facets of the lifted configuration,
  obtained from the cone over the lifted points plus the downward ray
  (0, ..., 0, -1), whose facets are exactly the upper facets and the
  vertical ones.
"""

import logging
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import FrozenSet, List, Sequence, Tuple

from tropical_mechanisms.model.common.errors import MalformedInputError
from tropical_mechanisms.model.exact import linalg

logger = logging.getLogger(__name__)

IntVector = Tuple[int, ...]


@dataclass(frozen=True)
class UpperFacet:
    """
    An upper facet of a lifted configuration: h(u) = offset + slope . u
    majorizes the heights and agrees with them exactly on `cell`.
    """

    cell: FrozenSet[int]
    slope: Tuple[Fraction, ...]
    offset: Fraction


def _integral(vector: Sequence) -> IntVector:
    fractions = [Fraction(x) for x in vector]
    scale = 1
    for x in fractions:
        scale = scale * x.denominator // math.gcd(scale, x.denominator)
    ints = [int(x * scale) for x in fractions]
    g = 0
    for x in ints:
        g = math.gcd(g, abs(x))
    if g > 1:
        ints = [x // g for x in ints]
    return tuple(ints)


def _popcount(mask: int) -> int:
    return bin(mask).count("1")


def extreme_rays(rows: Sequence[Sequence]) -> List[Tuple[IntVector, int]]:
    """
    Extreme rays of {a : rows . a >= 0}, which must be pointed.

    :param rows: Constraint rows (rationals), rank equal to the width.
    :return: (ray, bitmask of rows tight at the ray) for every extreme ray.
    """
    int_rows = [_integral(r) for r in rows]
    width = len(int_rows[0])
    basis = linalg.pivot_rows(int_rows)
    if len(basis) != width:
        raise MalformedInputError(f"cone is not pointed: rank {len(basis)} < {width}")

    identity = [[1 if i == j else 0 for j in range(width)] for i in range(width)]
    reduced, _ = linalg.row_reduce([list(int_rows[b]) + identity[k] for k, b in enumerate(basis)])
    inverse = [row[width:] for row in reduced]

    rays: List[Tuple[IntVector, int]] = []
    for j in range(width):
        column = [inverse[i][j] for i in range(width)]
        mask = 0
        for k, b in enumerate(basis):
            if k != j:
                mask |= 1 << b
        rays.append((_integral(column), mask))

    in_basis = set(basis)
    for t, row in enumerate(int_rows):
        if t in in_basis:
            continue
        bit = 1 << t
        positive, zero, negative = [], [], []
        for ray, mask in rays:
            s = sum(a * b for a, b in zip(row, ray))
            if s > 0:
                positive.append((ray, mask, s))
            elif s < 0:
                negative.append((ray, mask, s))
            else:
                zero.append((ray, mask | bit))
        if not negative:
            rays = [(r, m) for r, m, _ in positive] + zero
            continue
        all_masks = [m for _, m in rays]
        created = []
        for p_ray, p_mask, p_s in positive:
            for n_ray, n_mask, n_s in negative:
                common = p_mask & n_mask
                if _popcount(common) < width - 2:
                    continue
                adjacent = True
                for other in all_masks:
                    if other != p_mask and other != n_mask and (other & common) == common:
                        adjacent = False
                        break
                if not adjacent:
                    continue
                combined = [p_s * b - n_s * a for a, b in zip(p_ray, n_ray)]
                created.append((_integral(combined), common | bit))
        rays = [(r, m) for r, m, _ in positive] + zero + created
        logger.debug(f"double description: row {t} -> {len(rays)} rays")
    return rays


def _mask_members(mask: int, limit: int) -> FrozenSet[int]:
    return frozenset(i for i in range(limit) if (mask >> i) & 1)


def convex_hull_facets(points: Sequence[Sequence]) -> List[FrozenSet[int]]:
    """
    Facets of conv(points) as sets of point indices lying on each facet.

    :param points: At least two points; any ambient dimension.
    :return: Facet on-sets in the affine hull; for a 1-dimensional hull the
             "facets" are the two end points.
    """
    if len(points) < 2:
        raise MalformedInputError("a hull needs at least two points")
    columns = linalg.affine_coordinate_columns(points)
    if not columns:
        raise MalformedInputError("all points coincide")
    coordinates = linalg.project(points, columns)
    generators = [(Fraction(1),) + p for p in coordinates]
    facets = []
    for _, mask in extreme_rays(generators):
        facets.append(_mask_members(mask, len(points)))
    return sorted(facets, key=sorted)


def upper_hull(points: Sequence[Sequence[Fraction]], heights: Sequence[Fraction]) -> List[UpperFacet]:
    """
    Upper facets of the lifted full-dimensional configuration.

    :param points: Points in affine coordinates (full-dimensional).
    :param heights: One height per point.
    :return: Every upper facet with its majorizing affine function.
    """
    n = len(points)
    d = len(points[0])
    generators = [(Fraction(1),) + tuple(p) + (Fraction(h),) for p, h in zip(points, heights)]
    generators.append((Fraction(0),) * (d + 1) + (Fraction(-1),))
    facets = []
    for ray, mask in extreme_rays(generators):
        lift = ray[-1]
        if lift >= 0:
            continue
        scale = Fraction(-lift)
        slope = tuple(Fraction(a) / scale for a in ray[1:-1])
        offset = Fraction(ray[0]) / scale
        facets.append(UpperFacet(_mask_members(mask, n), slope, offset))
    return facets
