"""
Point configurations the theory quantifies over.

- unit-cube vertices {0,1}^m (one player, m items), index k = binary value
  of the bundle, most significant item first;
- vertices of the product of simplices (Delta_{n-1})^m, i.e. allocation
  matrices with one 1 per item row (n players, m items);
- lattice boxes [0,b_1] x ... x [0,b_k] (multi-unit supply).
"""

import itertools
import math
from dataclasses import dataclass, field
from functools import cached_property
from typing import Dict, Optional, Sequence, Tuple

from tropical_mechanisms.controller.config import (
    MAX_BOX_POINTS,
    MAX_CUBE_ITEMS,
    MAX_PRODUCT_POINTS,
)
from tropical_mechanisms.model.common.errors import MalformedInputError
from tropical_mechanisms.model.exact import linalg

Point = Tuple[int, ...]


@dataclass(frozen=True)
class PointConfiguration:
    """
    Ordered finite set of distinct integer points with one label per point.

    :param dimension: Ambient dimension.
    :param points: The points, in canonical order.
    :param labels: Display labels (bitstrings, row-major matrices, tuples).
    :param kind: "cube", "simplexprod", "box" or "custom".
    :param shape: (m,) for cubes, (n, m) for products, the bounds for boxes.
    """

    dimension: int
    points: Tuple[Point, ...]
    labels: Tuple[str, ...]
    kind: str = "custom"
    shape: Tuple[int, ...] = field(default=())

    def __post_init__(self):
        if len(self.labels) != len(self.points):
            raise MalformedInputError("one label per point expected")
        if any(len(p) != self.dimension for p in self.points):
            raise MalformedInputError("point dimension differs from configuration dimension")
        if len(set(self.points)) != len(self.points):
            raise MalformedInputError("points must be pairwise distinct")

    @property
    def size(self) -> int:
        return len(self.points)

    @cached_property
    def index(self) -> Dict[Point, int]:
        return {p: i for i, p in enumerate(self.points)}

    @cached_property
    def label_index(self) -> Dict[str, int]:
        return {label: i for i, label in enumerate(self.labels)}

    @cached_property
    def affine_columns(self):
        return linalg.affine_coordinate_columns(self.points)

    @cached_property
    def affine_points(self):
        """Points in coordinates of their affine hull (full-dimensional)."""
        return linalg.project(self.points, self.affine_columns)

    @property
    def affine_dimension(self) -> int:
        return len(self.affine_columns)

    @property
    def shorthand(self) -> Optional[str]:
        if self.kind == "cube":
            return f"cube:{self.shape[0]}"
        if self.kind == "simplexprod":
            return f"simplexprod:{self.shape[0]}x{self.shape[1]}"
        if self.kind == "box":
            return "box:" + "x".join(str(b) for b in self.shape)
        return None

    def labels_of(self, indices) -> Tuple[str, ...]:
        return tuple(self.labels[i] for i in sorted(indices))


# ---------- Builders ---------- #
def bundle_label(k: int, m: int) -> str:
    """Bitstring of bundle k, most significant item first."""
    return format(k, f"0{m}b") if m else ""


def cube_config(m: int) -> PointConfiguration:
    """
    Vertices of the unit m-cube; index k is the binary expansion of k.

    :param m: Number of items, 1 <= m <= 10.
    """
    if not 1 <= m <= MAX_CUBE_ITEMS:
        raise MalformedInputError(f"cube dimension must be in [1, {MAX_CUBE_ITEMS}], got {m}")
    points = tuple(tuple((k >> (m - 1 - j)) & 1 for j in range(m)) for k in range(2 ** m))
    labels = tuple(bundle_label(k, m) for k in range(2 ** m))
    return PointConfiguration(m, points, labels, "cube", (m,))


def allocation_label(rows: Sequence[int], n: int) -> str:
    """Row-major label of an allocation given the player index of each item."""
    return "|".join("".join("1" if j == player else "0" for j in range(n)) for player in rows)


def simplex_product_config(n: int, m: int) -> PointConfiguration:
    """
    Vertices of (Delta_{n-1})^m as flattened m x n allocation matrices.

    Row i is the unit vector of the player receiving item i; assignments are
    listed lexicographically, so for (n, m) = (2, 1) the points are (1,0), (0,1).

    :param n: Players, n >= 2.
    :param m: Items, m >= 1.
    """
    if n < 2 or m < 1:
        raise MalformedInputError(f"simplex product needs n >= 2 and m >= 1, got ({n}, {m})")
    if n ** m > MAX_PRODUCT_POINTS:
        raise MalformedInputError(f"simplex product ({n}, {m}) has more than {MAX_PRODUCT_POINTS} points")
    points = []
    labels = []
    for assignment in itertools.product(range(n), repeat=m):
        flat = []
        for player in assignment:
            flat.extend(1 if j == player else 0 for j in range(n))
        points.append(tuple(flat))
        labels.append(allocation_label(assignment, n))
    return PointConfiguration(n * m, tuple(points), tuple(labels), "simplexprod", (n, m))


def box_lattice_config(bounds: Sequence[int]) -> PointConfiguration:
    """
    All lattice points of [0, b_1] x ... x [0, b_k], lexicographic order.

    :param bounds: Units available per item, each >= 1.
    """
    bounds = tuple(int(b) for b in bounds)
    if not bounds or any(b < 1 for b in bounds):
        raise MalformedInputError(f"box bounds must be >= 1, got {bounds}")
    if math.prod(b + 1 for b in bounds) > MAX_BOX_POINTS:
        raise MalformedInputError(f"box {bounds} has more than {MAX_BOX_POINTS} points")
    points = tuple(itertools.product(*(range(b + 1) for b in bounds)))
    labels = tuple("(" + ",".join(str(x) for x in p) + ")" for p in points)
    return PointConfiguration(len(bounds), points, labels, "box", bounds)


def custom_config(points: Sequence[Sequence[int]], labels: Optional[Sequence[str]] = None) -> PointConfiguration:
    """Configuration from explicit points (e.g. a polynomial's support)."""
    pts = tuple(tuple(int(x) for x in p) for p in points)
    if not pts:
        raise MalformedInputError("empty point configuration")
    if labels is None:
        labels = ["(" + ",".join(str(x) for x in p) + ")" for p in pts]
    return PointConfiguration(len(pts[0]), pts, tuple(labels), "custom", ())


def config_from_shorthand(text: str) -> PointConfiguration:
    """
    Parse "cube:3", "simplexprod:3x2" (players x items) or "box:2x3".
    """
    try:
        kind, _, arg = text.strip().partition(":")
        if kind == "cube":
            return cube_config(int(arg))
        if kind == "simplexprod":
            n, m = (int(x) for x in arg.split("x"))
            return simplex_product_config(n, m)
        if kind == "box":
            return box_lattice_config([int(x) for x in arg.split("x")])
    except ValueError as e:
        raise MalformedInputError(f"bad configuration shorthand {text!r}: {e}")
    raise MalformedInputError(f"unknown configuration shorthand {text!r}")
