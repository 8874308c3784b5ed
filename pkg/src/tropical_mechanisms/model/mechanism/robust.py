"""
Mechanisms with small sensitivity.

- cardinality: prices (sum a_i)^2; the lifting -(sum x_i)^2 cuts the cube
  into the slices P_k = {k-1 <= sum x_i <= k}, so bundles in one facet differ
  in size by at most 1;
- hamming: the parity lifting (odd m) or prisms over it (even m), so no
  facet holds an antipodal pair;
- multiplayer: biases -(max_j sum_i A_ij)^2 for n players.
"""

import logging
from dataclasses import dataclass
from fractions import Fraction
from typing import List, Tuple

from tropical_mechanisms.model.common.errors import MalformedInputError
from tropical_mechanisms.model.geometry.point_config import cube_config, simplex_product_config
from tropical_mechanisms.model.geometry.subdivision import (
    Lifting,
    Subdivision,
    refine_to_triangulation,
    regular_subdivision,
)
from tropical_mechanisms.model.mechanism.affine import AffineMaximizer
from tropical_mechanisms.model.mechanism.mechanism import Mechanism

logger = logging.getLogger(__name__)


# ---------- Cardinality ---------- #
def cardinality_robust_lifting(m: int) -> Lifting:
    config = cube_config(m)
    return Lifting(tuple(Fraction(-sum(p) ** 2) for p in config.points))


def slice_plane(k: int) -> Tuple[Fraction, Fraction]:
    """
    Supporting function of slice P_k on the lifted cube, as (slope, offset)
    in s = sum x_i: h_k(s) = offset + slope * s agrees with -s^2 at s = k-1
    and s = k and lies above it elsewhere.
    """
    return Fraction(-(2 * k - 1)), Fraction(k * (k - 1))


def slice_cells(m: int) -> List[Tuple[int, ...]]:
    """The slices P_1, ..., P_m as cube index sets: the points on each supporting plane."""
    config = cube_config(m)
    cells = []
    for k in range(1, m + 1):
        slope, offset = slice_plane(k)
        cells.append(tuple(i for i, p in enumerate(config.points) if offset + slope * sum(p) == -sum(p) ** 2))
    return cells


def construct_cardinality_robust(m: int) -> Mechanism:
    """Mechanism with payments p_a = |a|^2; cardinality sensitivity 1."""
    if m < 1:
        raise MalformedInputError(f"item count must be positive, got {m}")
    config = cube_config(m)
    return Mechanism(m, tuple(Fraction(sum(p) ** 2) for p in config.points))


# ---------- Hamming ---------- #
@dataclass(frozen=True)
class HammingConstruction:
    lifting: Lifting
    mechanism: Mechanism
    subdivision: Subdivision


def hamming_robust_lifting(m: int) -> Lifting:
    """
    Parity lifting: 0 on even vertices, -1 on odd ones; for even m the last
    coordinate is ignored, which lifts the prisms over the (m-1) construction.
    """
    config = cube_config(m)
    significant = m if m % 2 else m - 1
    return Lifting(tuple(Fraction(-(sum(p[:significant]) % 2)) for p in config.points))


def construct_hamming_robust(m: int, refine: bool = False) -> HammingConstruction:
    """
    Mechanism whose facets contain no antipodal pair.

    Odd m: the big cell of even vertices and a cornered simplex at every odd
    vertex. Even m: prisms over the cells for m - 1.

    :param refine: Refine the subdivision to a regular triangulation.
    """
    if m < 3:
        raise MalformedInputError(f"the hamming construction needs m >= 3, got {m}")
    config = cube_config(m)
    lifting = hamming_robust_lifting(m)
    subdivision = regular_subdivision(config, lifting)
    if refine:
        subdivision = refine_to_triangulation(config, subdivision, lifting)
    logger.info(f"[CONSTRUCT] hamming-robust subdivision for m={m}: {len(subdivision.cells)} cells")
    mechanism = Mechanism(m, tuple(-h for h in lifting.heights))
    return HammingConstruction(lifting, mechanism, subdivision)


# ---------- Multiplayer ---------- #
def construct_multiplayer_robust(n: int, m: int) -> AffineMaximizer:
    """
    Unit weights and biases c_A = -(max_j sum_i A_ij)^2; for two players the
    first player's count alone, c_A = -(sum_i A_i1)^2.
    """
    config = simplex_product_config(n, m)
    biases = []
    for p in config.points:
        counts = [sum(p[i * n + j] for i in range(m)) for j in range(n)]
        top = counts[0] if n == 2 else max(counts)
        biases.append(Fraction(-top ** 2))
    return AffineMaximizer(n, m, tuple(Fraction(1) for _ in range(n)), tuple(biases))
