"""
Symmetry groups acting on point configurations.

Groups are stored as explicit element lists, so orbit canonicalization is a
minimum over images. Orders above MAX_GROUP_ORDER are refused before any
element is built.

Kinds
-----
- "item-permutations": Sym(m) permuting coordinates of a cube (or of a box
  with equal bounds); fixes the origin.
- "full-cube": Gamma_m = Sym(m) x| Z_2^m, coordinate permutations and
  reflections x_j -> 1 - x_j; order m! 2^m.
- "player-item": Sym(n) x Sym(m) permuting the players (columns) and the
  items (rows) of allocation matrices.
"""

import itertools
import math
from dataclasses import dataclass
from typing import Iterator, Sequence, Tuple

from tropical_mechanisms.controller.config import MAX_GROUP_ORDER
from tropical_mechanisms.model.common.errors import IncompatibleGroupError, SizeGuardError
from tropical_mechanisms.model.geometry.point_config import PointConfiguration

KINDS = ("item-permutations", "full-cube", "player-item")


@dataclass(frozen=True)
class GroupElement:
    """
    One symmetry, with its action on configuration indices.

    The coordinate action is y[items[i]] = x[i] xor flips[items[i]] for cube
    and box configurations, and A'[items[i]][players[j]] = A[i][j] for
    allocation matrices.
    """

    items: Tuple[int, ...]
    flips: Tuple[int, ...]
    players: Tuple[int, ...]
    image: Tuple[int, ...]

    def __call__(self, index: int) -> int:
        return self.image[index]

    def apply(self, cells) -> Tuple[Tuple[int, ...], ...]:
        """Image of a cell collection, sorted."""
        return tuple(sorted(tuple(sorted(self.image[i] for i in cell)) for cell in cells))

    def compose(self, other: "GroupElement") -> "GroupElement":
        """self after other."""
        items = tuple(self.items[other.items[i]] for i in range(len(self.items)))
        players = tuple(self.players[other.players[j]] for j in range(len(self.players)))
        inverse_items = _inverse(self.items)
        flips = tuple(
            self.flips[k] ^ other.flips[inverse_items[k]] for k in range(len(self.flips))
        )
        image = tuple(self.image[other.image[i]] for i in range(len(self.image)))
        return GroupElement(items, flips, players, image)

    def inverse(self) -> "GroupElement":
        inverse_items = _inverse(self.items)
        flips = tuple(self.flips[self.items[i]] for i in range(len(self.flips)))
        return GroupElement(inverse_items, flips, _inverse(self.players), _inverse(self.image))

    @property
    def is_identity(self) -> bool:
        return all(i == j for i, j in enumerate(self.image))


@dataclass(frozen=True)
class SymmetryGroup:
    kind: str
    elements: Tuple[GroupElement, ...]

    @property
    def order(self) -> int:
        return len(self.elements)

    def __iter__(self) -> Iterator[GroupElement]:
        return iter(self.elements)

    def is_closed(self) -> bool:
        """Closure under composition, checked on the index action."""
        images = {g.image for g in self.elements}
        return all(g.compose(h).image in images for g in self.elements for h in self.elements)

    def orbit(self, cells) -> set:
        return {g.apply(cells) for g in self.elements}


def _inverse(perm: Sequence[int]) -> Tuple[int, ...]:
    inv = [0] * len(perm)
    for i, p in enumerate(perm):
        inv[p] = i
    return tuple(inv)


def identity_group(config: PointConfiguration) -> SymmetryGroup:
    """The trivial group on a configuration."""
    identity = GroupElement((), (), (), tuple(range(config.size)))
    return SymmetryGroup("identity", (identity,))


def _coordinate_elements(config: PointConfiguration, with_flips: bool):
    m = config.dimension
    top = config.shape if config.kind == "box" else (1,) * m
    masks = itertools.product((0, 1), repeat=m) if with_flips else [(0,) * m]
    masks = list(masks)
    for perm in itertools.permutations(range(m)):
        for mask in masks:
            image = []
            for p in config.points:
                y = [0] * m
                for i, x in enumerate(p):
                    target = perm[i]
                    y[target] = top[target] - x if mask[target] else x
                image.append(config.index[tuple(y)])
            yield GroupElement(tuple(perm), tuple(mask), (), tuple(image))


def _player_item_elements(config: PointConfiguration):
    n, m = config.shape
    for players in itertools.permutations(range(n)):
        for items in itertools.permutations(range(m)):
            image = []
            for p in config.points:
                moved = [0] * (n * m)
                for i in range(m):
                    for j in range(n):
                        moved[items[i] * n + players[j]] = p[i * n + j]
                image.append(config.index[tuple(moved)])
            yield GroupElement(tuple(items), (0,) * m, tuple(players), tuple(image))


def group_order(config: PointConfiguration, kind: str) -> int:
    """Order of the group symmetry_group would build, without building it."""
    if kind == "player-item" and config.kind == "simplexprod":
        n, m = config.shape
        return math.factorial(n) * math.factorial(m)
    items = len(config.shape) if config.kind == "box" else config.shape[0]
    if kind == "full-cube":
        return math.factorial(items) * 2 ** items
    return math.factorial(items)


def symmetry_group(config: PointConfiguration, kind: str) -> SymmetryGroup:
    """
    Build the explicit symmetry group of the given kind.

    :param config: A cube, product-of-simplices or box configuration.
    :param kind: "item-permutations", "full-cube" or "player-item".
    :return: The group, with every element acting on configuration indices.
    :raises SizeGuardError: If the group order exceeds MAX_GROUP_ORDER.
    """
    if kind == "full-cube":
        if config.kind != "cube":
            raise IncompatibleGroupError(f"full-cube symmetries need a cube configuration, got {config.kind}")
        elements = _coordinate_elements(config, with_flips=True)
    elif kind == "item-permutations":
        if config.kind == "box" and len(set(config.shape)) != 1:
            raise IncompatibleGroupError(f"item permutations need equal box bounds, got {config.shape}")
        if config.kind not in ("cube", "box"):
            raise IncompatibleGroupError(f"item permutations act on cubes and boxes, got {config.kind}")
        elements = _coordinate_elements(config, with_flips=False)
    elif kind == "player-item":
        if config.kind != "simplexprod":
            raise IncompatibleGroupError(f"player-item symmetries need a simplex product, got {config.kind}")
        elements = _player_item_elements(config)
    else:
        raise IncompatibleGroupError(f"unknown symmetry kind {kind!r}; expected one of {KINDS}")
    order = group_order(config, kind)
    if order > MAX_GROUP_ORDER:
        raise SizeGuardError(
            f"{kind} group of {config.shorthand or config.kind} has order {order}, "
            f"above the limit of {MAX_GROUP_ORDER}"
        )
    return SymmetryGroup(kind, tuple(elements))
