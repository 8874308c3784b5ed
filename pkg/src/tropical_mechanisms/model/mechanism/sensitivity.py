"""
Sensitivity of indifference complexes.

For a facet F of the complex, a player whose type moves across the common
boundary of the difference sets in F can see the bundle jump between any
two allocations of F. Sensitivity is the worst such jump, measured as
cardinality distance ||a| - |b|| or Hamming distance |a - b|_1.
"""

import logging
import math
from dataclasses import dataclass
from typing import Sequence, Union

from tropical_mechanisms.controller.config import HAMMING_VERIFY_MAX_ITEMS
from tropical_mechanisms.model.common.errors import MalformedInputError, SizeGuardError
from tropical_mechanisms.model.geometry.enumeration import all_triangulations, check_size_guard
from tropical_mechanisms.model.geometry.point_config import cube_config
from tropical_mechanisms.model.geometry.subdivision import Subdivision, is_regular
from tropical_mechanisms.model.mechanism.mechanism import Mechanism, mechanism_subdivision
from tropical_mechanisms.model.mechanism.robust import construct_hamming_robust

logger = logging.getLogger(__name__)

METRICS = ("cardinality", "hamming")


def cardinality_distance(a: Sequence[int], b: Sequence[int]) -> int:
    return abs(sum(a) - sum(b))


def hamming_distance(a: Sequence[int], b: Sequence[int]) -> int:
    return sum(abs(x - y) for x, y in zip(a, b))


def _cube_subdivision(source: Union[Subdivision, Mechanism]) -> Subdivision:
    if isinstance(source, Mechanism):
        return mechanism_subdivision(source)
    if source.config.kind != "cube":
        raise MalformedInputError(f"sensitivity needs a cube subdivision, got {source.config.kind}")
    return source


def _max_distance(subdivision: Subdivision, distance) -> int:
    points = subdivision.config.points
    worst = 0
    for cell in subdivision.cells:
        for i in cell:
            for j in cell:
                if j > i:
                    worst = max(worst, distance(points[i], points[j]))
    return worst


def cardinality_sensitivity(source: Union[Subdivision, Mechanism]) -> int:
    """Largest bundle-size difference inside one facet."""
    return _max_distance(_cube_subdivision(source), cardinality_distance)


def hamming_sensitivity(source: Union[Subdivision, Mechanism]) -> int:
    """Largest Hamming distance inside one facet."""
    return _max_distance(_cube_subdivision(source), hamming_distance)


def sensitivity(source: Union[Subdivision, Mechanism], metric: str) -> int:
    if metric == "cardinality":
        return cardinality_sensitivity(source)
    if metric == "hamming":
        return hamming_sensitivity(source)
    raise MalformedInputError(f"unknown metric {metric!r}; expected one of {METRICS}")


def has_antipodal_pair(subdivision: Subdivision) -> bool:
    """Some cell contains a vertex x together with 1 - x."""
    m = subdivision.config.dimension
    return hamming_sensitivity(subdivision) == m


@dataclass(frozen=True)
class SensitivityBound:
    """
    Optimal sensitivity over implementable complexes, or a bracket for it.
    """

    metric: str
    items: int
    lower: int
    upper: int

    @property
    def exact(self) -> bool:
        return self.lower == self.upper

    @property
    def value(self) -> int:
        if not self.exact:
            raise MalformedInputError(f"{self.metric} sensitivity for m={self.items} is only bracketed")
        return self.lower


def optimal_sensitivity(m: int, metric: str, jobs: int = 1) -> SensitivityBound:
    """
    Minimum sensitivity over all regular subdivisions of the m-cube.

    Refining a subdivision never increases a within-cell maximum, and every
    regular subdivision refines to a regular triangulation, so for m <= 3 the
    minimum over regular triangulations is exact. For larger m the cardinality
    value is 1 (slicing construction) and the Hamming value is bracketed by 2
    and the best construction.
    """
    if metric not in METRICS:
        raise MalformedInputError(f"unknown metric {metric!r}; expected one of {METRICS}")
    if m < 1:
        raise MalformedInputError(f"item count must be positive, got {m}")
    config = cube_config(m)
    try:
        check_size_guard(config, long_running=False)
    except SizeGuardError:
        return _bracket(m, metric)
    best = math.inf
    for cells in all_triangulations(config, jobs=jobs):
        subdivision = Subdivision(config, cells)
        value = sensitivity(subdivision, metric)
        if value < best and is_regular(config, subdivision).regular:
            best = value
    logger.info(f"optimal {metric} sensitivity for m={m}: {best}")
    return SensitivityBound(metric, m, best, best)


def _bracket(m: int, metric: str) -> SensitivityBound:
    if metric == "cardinality":
        return SensitivityBound(metric, m, 1, 1)
    upper = m - 1
    if m <= HAMMING_VERIFY_MAX_ITEMS:
        upper = hamming_sensitivity(construct_hamming_robust(m).subdivision)
    bound = SensitivityBound(metric, m, 2, upper)
    if not bound.exact:
        logger.warning(f"hamming sensitivity for m={m} is only known to lie in [{bound.lower}, {bound.upper}]")
    return bound
