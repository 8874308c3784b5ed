"""
Max-plus tropical polynomials and their dual subdivisions.

p(x) = max{ lambda_u + x . u : u in supp(p) }, with lambda_u = -inf allowed
(such points are dropped before lifting). The regions of the hypersurface
V(p) are in inclusion-reversing bijection with the cells of the regular
subdivision of the support induced by the coefficients (upper faces).
"""

import itertools
import logging
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple

from tropical_mechanisms.model.common.errors import MalformedInputError
from tropical_mechanisms.model.exact import linalg
from tropical_mechanisms.model.exact.lp import Constraint, Relation, lp_feasible, lp_feasible_strict
from tropical_mechanisms.model.exact.rational import Vector, as_rational, format_rational, to_vector
from tropical_mechanisms.model.geometry import hull
from tropical_mechanisms.model.geometry.point_config import PointConfiguration, custom_config
from tropical_mechanisms.model.geometry.subdivision import Cell, Lifting, Subdivision, regular_subdivision

logger = logging.getLogger(__name__)

Point = Tuple[int, ...]
NEG_INF = "-inf"


@dataclass(frozen=True)
class TropicalPolynomial:
    """
    :param support: Distinct integer exponent vectors.
    :param coefficients: One Fraction per support point, None for -inf.
    """

    support: Tuple[Point, ...]
    coefficients: Tuple[Optional[Fraction], ...]

    def __post_init__(self):
        if not self.support:
            raise MalformedInputError("a tropical polynomial needs a nonempty support")
        if len(self.support) != len(self.coefficients):
            raise MalformedInputError("one coefficient per support point expected")
        if len(set(self.support)) != len(self.support):
            raise MalformedInputError("support points must be distinct")
        if len({len(u) for u in self.support}) != 1:
            raise MalformedInputError("support points have different dimensions")
        if all(c is None for c in self.coefficients):
            raise MalformedInputError("at least one coefficient must be finite")

    @classmethod
    def of(cls, support: Sequence[Sequence[int]], coefficients: Sequence) -> "TropicalPolynomial":
        """Build from exponent vectors and rational-likes ("-inf" or None for absent terms)."""
        coeffs = []
        for c in coefficients:
            if c is None or (isinstance(c, str) and c.strip() == NEG_INF):
                coeffs.append(None)
            else:
                coeffs.append(as_rational(c))
        return cls(tuple(tuple(int(x) for x in u) for u in support), tuple(coeffs))

    @classmethod
    def from_terms(cls, terms: Dict[Tuple[int, ...], object]) -> "TropicalPolynomial":
        return cls.of(list(terms), list(terms.values()))

    @property
    def dimension(self) -> int:
        return len(self.support[0])

    @property
    def finite_terms(self) -> List[Tuple[Point, Fraction]]:
        return [(u, c) for u, c in zip(self.support, self.coefficients) if c is not None]

    def coefficient(self, u: Sequence[int]) -> Optional[Fraction]:
        u = tuple(u)
        if u not in self.support:
            raise MalformedInputError(f"{u} is not in the support")
        return self.coefficients[self.support.index(u)]

    def __str__(self) -> str:
        terms = []
        for u, c in self.finite_terms:
            parts = []
            for j, e in enumerate(u):
                if e:
                    parts.append(f"x{j + 1}" if e == 1 else f"{e}x{j + 1}")
            text = " + ".join(parts)
            if c or not parts:
                sign = "-" if c < 0 else "+"
                text = f"{text} {sign} {format_rational(abs(c))}" if parts else format_rational(c)
            terms.append(text)
        return "max{" + ", ".join(terms) + "}"


@dataclass(frozen=True)
class Evaluation:
    value: Fraction
    argmax: Tuple[Point, ...]

    @property
    def on_hypersurface(self) -> bool:
        return len(self.argmax) >= 2


def evaluate(p: TropicalPolynomial, x: Sequence) -> Evaluation:
    """
    Exact value and every maximizing support point.

    :param p: The polynomial.
    :param x: A point of the same dimension as the support.
    """
    x = to_vector(x)
    if len(x) != p.dimension:
        raise MalformedInputError(f"point has dimension {len(x)}, polynomial has {p.dimension}")
    values = [(c + linalg.dot(u, x), u) for u, c in p.finite_terms]
    best = max(v for v, _ in values)
    return Evaluation(best, tuple(u for v, u in values if v == best))


# ---------- Polyhedra ---------- #
@dataclass(frozen=True)
class Polyhedron:
    """
    {x : normal . x >= offset for every row}.
    """

    dimension: int
    normals: Tuple[Vector, ...] = ()
    offsets: Tuple[Fraction, ...] = ()

    def __post_init__(self):
        if len(self.normals) != len(self.offsets):
            raise MalformedInputError("one offset per normal expected")
        if any(len(a) != self.dimension for a in self.normals):
            raise MalformedInputError("normal dimension differs from ambient dimension")

    def constraints(self) -> List[Constraint]:
        return [Constraint(a, Relation.GE, b) for a, b in zip(self.normals, self.offsets)]

    def contains(self, x: Sequence) -> bool:
        x = to_vector(x)
        return all(linalg.dot(a, x) >= b for a, b in zip(self.normals, self.offsets))

    def point(self) -> Optional[Vector]:
        """Some point of the polyhedron, None if empty."""
        if not self.normals:
            return tuple([Fraction(0)] * self.dimension)
        return lp_feasible(self.dimension, self.constraints())

    def is_empty(self) -> bool:
        return self.point() is None

    def interior_point(self) -> Optional[Vector]:
        """A point satisfying every inequality strictly, None if there is none."""
        if not self.normals:
            return tuple([Fraction(0)] * self.dimension)
        outcome = lp_feasible_strict(self.dimension, self.constraints(), [True] * len(self.normals))
        return outcome.witness if outcome.feasible else None

    def is_full_dimensional(self) -> bool:
        return self.interior_point() is not None

    def intersect(self, other: "Polyhedron") -> "Polyhedron":
        if other.dimension != self.dimension:
            raise MalformedInputError("cannot intersect polyhedra of different dimensions")
        return Polyhedron(self.dimension, self.normals + other.normals, self.offsets + other.offsets)


# ---------- Duality ---------- #
def support_config(p: TropicalPolynomial) -> PointConfiguration:
    """Configuration of the finite-coefficient support points, in order."""
    return custom_config([u for u, _ in p.finite_terms])


def dual_subdivision(p: TropicalPolynomial) -> Subdivision:
    """
    Regular subdivision of the finite support lifted by the coefficients.
    """
    terms = p.finite_terms
    config = support_config(p)
    if len(terms) == 1:
        return Subdivision.of(config, [(0,)])
    return regular_subdivision(config, Lifting(tuple(c for _, c in terms)))


def region(p: TropicalPolynomial, u: Sequence[int]) -> Polyhedron:
    """
    Closed region where the term of u attains the maximum:
    {x : lambda_u + x.u >= lambda_v + x.v for every finite v}.
    """
    u = tuple(u)
    own = p.coefficient(u)
    if own is None:
        raise MalformedInputError(f"{u} has coefficient -inf")
    normals, offsets = [], []
    for v, c in p.finite_terms:
        if v == u:
            continue
        normals.append(tuple(Fraction(a - b) for a, b in zip(u, v)))
        offsets.append(c - own)
    return Polyhedron(p.dimension, tuple(normals), tuple(offsets))


def dual_vertex(p: TropicalPolynomial, cell: Cell) -> Vector:
    """
    The point of V(p) where every term of the cell ties.

    :param cell: A full-dimensional maximal cell of dual_subdivision(p), as
                 indices into support_config(p).
    :return: The unique x with lambda_u + x.u equal over the cell.
    """
    terms = p.finite_terms
    rows, rhs = [], []
    for i in cell:
        u, c = terms[i]
        rows.append([Fraction(a) for a in u] + [Fraction(-1)])
        rhs.append(-c)
    solution = linalg.solve_unique(rows, rhs)
    if solution is None:
        raise MalformedInputError(f"cell {tuple(cell)} is not full-dimensional: its dual point is not unique")
    return solution[:-1]


@dataclass(frozen=True)
class TightSpan:
    """
    Vertices and edges of the bounded part of the hypersurface.

    vertices[k] is dual to cells[k]; an edge (i, j) is dual to an interior
    facet shared by cells[i] and cells[j].
    """

    cells: Tuple[Cell, ...]
    vertices: Tuple[Vector, ...]
    edges: Tuple[Tuple[int, int], ...]


def tight_span(p: TropicalPolynomial) -> TightSpan:
    """
    0- and 1-skeleton of the tight span.

    A support that is not full-dimensional leaves every region unbounded, so
    its tight span is empty.
    """
    subdivision = dual_subdivision(p)
    config = subdivision.config
    d = p.dimension
    if config.size < 2 or config.affine_dimension < d:
        return TightSpan((), (), ())
    cells = subdivision.cells
    vertices = tuple(dual_vertex(p, cell) for cell in cells)
    boundary = hull.convex_hull_facets(config.points)
    edges = []
    for i, j in itertools.combinations(range(len(cells)), 2):
        shared = set(cells[i]) & set(cells[j])
        if linalg.affine_rank([config.points[k] for k in shared]) != d - 1:
            continue
        if any(shared <= facet for facet in boundary):
            continue
        edges.append((i, j))
    logger.debug(f"tight span: {len(vertices)} vertices, {len(edges)} edges")
    return TightSpan(cells, vertices, tuple(edges))
