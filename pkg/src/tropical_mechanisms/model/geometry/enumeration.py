"""
Exhaustive enumeration of triangulations by backtracking.

Search state: a set of pairwise compatible full-dimensional simplices and
the interior facets covered from one side only ("open" facets). Each step
closes the open facet with the fewest candidates by a simplex on its other
side. When nothing is open, the chosen simplices tile the hull (checked by
volume).

Every triangulation has a simplex through the smallest point (a vertex); the
root level branches over those simplices in index order and forbids smaller
ones below, so each triangulation is reached from exactly one root. Root
branches are independent and may run in a multiprocessing pool.
"""

import itertools
import logging
import multiprocessing
import random
from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Optional, Tuple

from tropical_mechanisms.controller.config import (
    ENUMERATION_MAX_CUBE_ITEMS,
    ENUMERATION_MAX_PRODUCT_POINTS,
)
from tropical_mechanisms.model.common.errors import SizeGuardError
from tropical_mechanisms.model.exact import linalg
from tropical_mechanisms.model.geometry import hull
from tropical_mechanisms.model.geometry.point_config import PointConfiguration
from tropical_mechanisms.model.geometry.subdivision import (
    Cell,
    Subdivision,
    canonicalize,
    cells_meet_properly,
    hull_volume,
    is_regular,
    simplex_volume,
)
from tropical_mechanisms.model.geometry.symmetry import SymmetryGroup

logger = logging.getLogger(__name__)


@dataclass
class EnumerationResult:
    """
    Counts and representatives of an enumeration run.

    :param total: Number of triangulations (regular or not).
    :param regular: Number of regular triangulations, if regularity was tested.
    :param orbits: Number of group orbits among the counted triangulations.
    :param representatives: Canonical forms (one per orbit) when a group was
                            given, otherwise every counted triangulation.
    :param orbit_sizes: Orbit size per representative, same order.
    """

    config: PointConfiguration
    regular_only: bool
    total: int
    regular: Optional[int] = None
    group_kind: Optional[str] = None
    orbits: Optional[int] = None
    representatives: List[Subdivision] = field(default_factory=list)
    orbit_sizes: List[int] = field(default_factory=list)

    @property
    def count(self) -> int:
        """The headline count: orbits if a group was given, else (regular) triangulations."""
        if self.orbits is not None:
            return self.orbits
        return self.regular if self.regular_only else self.total


def check_size_guard(config: PointConfiguration, long_running: bool) -> None:
    if long_running:
        return
    if config.kind == "cube":
        blocked = config.shape[0] > ENUMERATION_MAX_CUBE_ITEMS
    else:
        blocked = config.size > ENUMERATION_MAX_PRODUCT_POINTS
    if blocked:
        raise SizeGuardError(
            f"exhaustive enumeration of {config.shorthand or config.kind} ({config.size} points) "
            f"needs the long-running flag"
        )


def _orientation(points, facet: Tuple[int, ...], x) -> int:
    base = points[facet[0]]
    rows = [[a - b for a, b in zip(points[f], base)] for f in facet[1:]]
    rows.append([a - b for a, b in zip(x, base)])
    det = linalg.determinant(rows)
    return (det > 0) - (det < 0)


class _TriangulationSearch:
    """
    Precomputed simplices, facet incidences and the pairwise compatibility
    bitsets of one configuration.
    """

    def __init__(self, config: PointConfiguration, order_seed: Optional[int] = None):
        self.config = config
        points = config.affine_points
        d = config.affine_dimension
        self.total_volume = hull_volume(config)

        simplices = []
        for combo in itertools.combinations(range(config.size), d + 1):
            volume = simplex_volume(config, combo)
            if volume:
                simplices.append((combo, volume))
        if order_seed is not None:
            random.Random(order_seed).shuffle(simplices)
        self.simplices: List[Cell] = [s for s, _ in simplices]
        self.volumes: List[Fraction] = [v for _, v in simplices]
        logger.debug(f"{len(self.simplices)} full-dimensional simplices in {config.shorthand}")

        boundary = [sum(1 << i for i in f) for f in hull.convex_hull_facets(points)]
        # facet -> [(simplex index, side of its apex)]
        self.incidence: Dict[Tuple[int, ...], List[Tuple[int, int]]] = {}
        self.interior_facets: List[List[Tuple[Tuple[int, ...], int]]] = []
        for k, simplex in enumerate(self.simplices):
            own = []
            for apex in simplex:
                facet = tuple(i for i in simplex if i != apex)
                mask = sum(1 << i for i in facet)
                if any((mask & b) == mask for b in boundary):
                    continue
                side = _orientation(points, facet, points[apex])
                self.incidence.setdefault(facet, []).append((k, side))
                own.append((facet, side))
            self.interior_facets.append(own)

        self.compatible = [0] * len(self.simplices)
        for a, b in itertools.combinations(range(len(self.simplices)), 2):
            if self._compatible(a, b):
                self.compatible[a] |= 1 << b
                self.compatible[b] |= 1 << a

    def _compatible(self, a: int, b: int) -> bool:
        first, second = self.simplices[a], self.simplices[b]
        shared = set(first) & set(second)
        if len(shared) == len(first) - 1:
            facet = tuple(sorted(shared))
            sides = {k: s for k, s in self.incidence.get(facet, [])}
            if a in sides and b in sides:
                return sides[a] != sides[b]
        return cells_meet_properly(self.config, first, second)

    def roots(self) -> List[int]:
        # the lexicographically smallest point is a vertex of the hull
        first = min(range(self.config.size), key=lambda i: self.config.points[i])
        return [k for k, s in enumerate(self.simplices) if first in s]

    def run_root(self, position: int) -> List[Tuple[Cell, ...]]:
        """All triangulations whose first root simplex is roots()[position]."""
        roots = self.roots()
        forbidden = 0
        for k in roots[:position]:
            forbidden |= 1 << k
        root = roots[position]
        allowed = self.compatible[root] & ~forbidden
        open_facets: Dict[Tuple[int, ...], int] = {}
        self._add(root, open_facets)
        found: List[Tuple[Cell, ...]] = []
        self._extend([root], allowed, open_facets, self.volumes[root], found)
        return found

    def _add(self, k: int, open_facets: Dict[Tuple[int, ...], int]) -> None:
        for facet, side in self.interior_facets[k]:
            if facet in open_facets:
                del open_facets[facet]
            else:
                open_facets[facet] = side

    def _extend(self, chosen, allowed, open_facets, volume, found) -> None:
        if not open_facets:
            if volume == self.total_volume:
                found.append(tuple(sorted(self.simplices[k] for k in chosen)))
            return
        best = None
        for facet, side in open_facets.items():
            options = [
                k for k, s in self.incidence[facet] if s == -side and (allowed >> k) & 1
            ]
            if best is None or len(options) < len(best):
                best = options
                if not options:
                    return
        for k in best:
            branch = dict(open_facets)
            self._add(k, branch)
            chosen.append(k)
            self._extend(chosen, allowed & self.compatible[k], branch, volume + self.volumes[k], found)
            chosen.pop()


def _run_root(search: _TriangulationSearch, position: int) -> List[Tuple[Cell, ...]]:
    return search.run_root(position)


def all_triangulations(
    config: PointConfiguration, jobs: int = 1, order_seed: Optional[int] = None
) -> List[Tuple[Cell, ...]]:
    """
    Every triangulation of the configuration, as sorted cell tuples, sorted.

    :param jobs: Worker processes for the root branches (1 = in-process).
    :param order_seed: Shuffle the simplex order (the result does not change).
    """
    search = _TriangulationSearch(config, order_seed)
    positions = range(len(search.roots()))
    if jobs > 1:
        with multiprocessing.Pool(processes=jobs) as pool:
            batches = pool.starmap(_run_root, [(search, p) for p in positions])
    else:
        batches = [search.run_root(p) for p in positions]
    found = set()
    for batch in batches:
        found.update(batch)
    return sorted(found)


def enumerate_triangulations(
    config: PointConfiguration,
    regular_only: bool = False,
    group: Optional[SymmetryGroup] = None,
    long_running: bool = False,
    jobs: int = 1,
    order_seed: Optional[int] = None,
) -> EnumerationResult:
    """
    Count triangulations, regular triangulations, or their group orbits.

    :param config: Cube m <= 3 or at most 9 points unless `long_running`.
    :param regular_only: Keep only regular triangulations.
    :param group: Count orbits and return canonical representatives.
    :return: An EnumerationResult.
    """
    check_size_guard(config, long_running)
    triangulations = all_triangulations(config, jobs=jobs, order_seed=order_seed)
    label = config.shorthand or config.kind
    logger.info(f"[ENUMERATE] {len(triangulations)} triangulations of {label}")

    subdivisions = [Subdivision(config, cells) for cells in triangulations]
    result = EnumerationResult(config, regular_only, total=len(subdivisions))
    if regular_only:
        subdivisions = [s for s in subdivisions if is_regular(config, s).regular]
        result.regular = len(subdivisions)
        logger.info(f"[ENUMERATE] {result.regular} of them are regular")

    if group is None:
        result.representatives = subdivisions
        result.orbit_sizes = [1] * len(subdivisions)
        return result

    sizes: Counter = Counter()
    for subdivision in subdivisions:
        sizes[canonicalize(subdivision, group).cells] += 1
    canonical = sorted(sizes)
    result.group_kind = group.kind
    result.orbits = len(canonical)
    result.representatives = [Subdivision(config, cells) for cells in canonical]
    result.orbit_sizes = [sizes[cells] for cells in canonical]
    logger.info(f"[ENUMERATE] {result.orbits} orbits under {group.kind} (order {group.order})")
    return result

