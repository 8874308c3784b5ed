"""
Allocation network of a mechanism.

Complete digraph on bundles with arc lengths
l(a, a') = inf{theta . a' - theta . a : theta in Q_a'}, taken over the closed
difference set. A DSIC mechanism has zero length on every cycle whose
consecutive difference sets meet.
"""

import itertools
import logging
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, List, Sequence, Tuple, Union

from tropical_mechanisms.model.common.errors import InvariantViolationError, MalformedInputError
from tropical_mechanisms.model.exact.lp import LinearProgram, Sense, Status, lp_solve
from tropical_mechanisms.model.mechanism.mechanism import (
    Bundle,
    Mechanism,
    bundle_index,
    regions_intersect,
    utility_polynomial,
)
from tropical_mechanisms.model.tropical.polynomial import region

logger = logging.getLogger(__name__)

Length = Union[Fraction, float]


def difference_set(mech: Mechanism, bundle: Bundle):
    """Closed difference set Q_a as a Polyhedron."""
    index = bundle_index(mech.items, bundle)
    return region(utility_polynomial(mech), mech.config.points[index])


def is_tie_region(mech: Mechanism, bundle: Bundle) -> bool:
    """Q_a is nonempty but has no interior (a measure-zero set of types)."""
    q = difference_set(mech, bundle)
    return not q.is_empty() and not q.is_full_dimensional()


def arc_length(mech: Mechanism, a: Bundle, a_prime: Bundle) -> Length:
    """
    l(a, a') by LP over Q_a'.

    :return: The exact optimum, or math.inf when Q_a' is empty.
    """
    i = bundle_index(mech.items, a)
    j = bundle_index(mech.items, a_prime)
    if i == j:
        return Fraction(0) if regions_intersect(mech, [j]) is not None else math.inf
    points = mech.config.points
    q = difference_set(mech, j)
    objective = tuple(Fraction(x - y) for x, y in zip(points[j], points[i]))
    outcome = lp_solve(LinearProgram(mech.items, tuple(q.constraints()), objective, Sense.MIN))
    if outcome.status is Status.INFEASIBLE:
        return math.inf
    if outcome.status is Status.UNBOUNDED:
        # theta . (a' - a) >= p_a' - p_a holds on Q_a'
        raise InvariantViolationError(f"arc {mech.config.labels[i]} -> {mech.config.labels[j]} is unbounded")
    if not q.is_full_dimensional():
        logger.warning(
            f"arc {mech.config.labels[i]} -> {mech.config.labels[j]}: "
            f"Q_{mech.config.labels[j]} is a tie region, length taken over its closure"
        )
    return outcome.optimum


def regions_meet(mech: Mechanism, a: Bundle, b: Bundle) -> bool:
    i = bundle_index(mech.items, a)
    j = bundle_index(mech.items, b)
    return regions_intersect(mech, sorted({i, j})) is not None


@dataclass(frozen=True)
class CycleCheck:
    length: Length
    adjacent: bool


def verify_zero_cycles(mech: Mechanism, cycle: Sequence[Bundle]) -> CycleCheck:
    """
    Length of a closed walk in the allocation network.

    :param cycle: Bundles with cycle[0] == cycle[-1].
    :return: The exact length and whether consecutive difference sets meet.
    :raises InvariantViolationError: adjacent but of nonzero length.
    """
    indices = [bundle_index(mech.items, b) for b in cycle]
    if not indices or indices[0] != indices[-1]:
        raise MalformedInputError("a cycle must start and end at the same bundle")
    if len(indices) == 1:
        indices = indices * 2
    total: Length = Fraction(0)
    adjacent = True
    for a, b in zip(indices, indices[1:]):
        step = arc_length(mech, a, b)
        total = total + step if step != math.inf and total != math.inf else math.inf
        if adjacent and not regions_meet(mech, a, b):
            adjacent = False
    if adjacent and total != 0:
        labels = [mech.config.labels[i] for i in indices]
        raise InvariantViolationError(f"adjacent cycle {labels} has length {total}", tuple(labels))
    return CycleCheck(total, adjacent)


@dataclass(frozen=True)
class CycleAudit:
    """
    :param adjacent_pairs: Unordered bundle pairs whose difference sets meet.
    :param cycles_checked: Adjacent closed walks examined.
    :param max_length: Longest walk, in arcs.
    :param price_identity: l(a, a') = p_a' - p_a held on every adjacent pair.
    """

    adjacent_pairs: int
    cycles_checked: int
    max_length: int
    price_identity: bool


def audit_zero_cycles(mech: Mechanism, max_length: int = 4) -> CycleAudit:
    """
    Check every adjacent closed walk with at most `max_length` arcs.

    Arc lengths on adjacent pairs are computed once by LP.
    """
    size = 2 ** mech.items
    arcs: Dict[Tuple[int, int], Length] = {}
    neighbours: Dict[int, List[int]] = {a: [] for a in range(size)}
    pairs = 0
    price_identity = True
    for a, b in itertools.combinations(range(size), 2):
        if not regions_meet(mech, a, b):
            continue
        pairs += 1
        neighbours[a].append(b)
        neighbours[b].append(a)
        for x, y in ((a, b), (b, a)):
            arcs[(x, y)] = arc_length(mech, x, y)
            if arcs[(x, y)] != mech.payments[y] - mech.payments[x]:
                price_identity = False

    checked = 0

    def walk(path: List[int], length: Fraction) -> None:
        nonlocal checked
        for nxt in neighbours[path[-1]]:
            step = length + arcs[(path[-1], nxt)]
            if nxt == path[0]:
                checked += 1
                if step != 0:
                    labels = [mech.config.labels[i] for i in path + [nxt]]
                    raise InvariantViolationError(f"adjacent cycle {labels} has length {step}", tuple(labels))
            if len(path) < max_length:
                walk(path + [nxt], step)

    for start in range(size):
        walk([start], Fraction(0))
    logger.debug(f"zero-cycle audit: {pairs} adjacent pairs, {checked} cycles")
    return CycleAudit(pairs, checked, max_length, price_identity)
