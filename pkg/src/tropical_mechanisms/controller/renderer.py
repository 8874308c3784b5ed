"""
Deterministic SVG figures and the HTML analysis report.

All geometry is computed exactly; rationals are converted to fixed
6-decimal strings (round half to even) only when written. Elements are
emitted in a fixed order: cells sorted, then edges, then marks, then labels.
"""

import functools
import logging
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path
from typing import Dict, List, Optional, Sequence, Tuple

import markdown
from jinja2 import Environment, FileSystemLoader, TemplateNotFound, select_autoescape

from tropical_mechanisms.controller.config import (
    DEFAULT_VIEWPORT,
    SVG_DECIMALS,
    SVG_MARGIN_PX,
    SVG_SIZE_PX,
    TEMPLATES_DIR,
)
from tropical_mechanisms.model.common.errors import MalformedInputError, RenderDimensionError
from tropical_mechanisms.model.exact.rational import as_rational, format_rational, to_decimal_string
from tropical_mechanisms.model.mechanism.affine import AffineMaximizer, affine_regions_reduced, lineality_reduce
from tropical_mechanisms.model.mechanism.mechanism import Mechanism, utility_polynomial
from tropical_mechanisms.model.tropical.polynomial import (
    Polyhedron,
    TropicalPolynomial,
    dual_subdivision,
    region,
    tight_span,
)

logger = logging.getLogger(__name__)

Point2 = Tuple[Fraction, Fraction]

TARGETS = ("difference-sets", "dual-subdivision", "tight-span")
PALETTE = ("#cfe2f3", "#f4cccc", "#d9ead3", "#fff2cc", "#d9d2e9", "#fce5cd", "#d0e0e3", "#ead1dc")


@dataclass(frozen=True)
class RenderSpec:
    """
    :param target: "difference-sets", "dual-subdivision" or "tight-span".
    :param viewport: (x_min, y_min, width, height); None picks one from the data.
    :param labels: Write allocation / point labels.
    :param stroke_width: Line width in pixels.
    """

    target: str = "difference-sets"
    viewport: Optional[Tuple[Fraction, Fraction, Fraction, Fraction]] = None
    labels: bool = True
    stroke_width: int = 1

    def __post_init__(self):
        if self.target not in TARGETS:
            raise MalformedInputError(f"unknown render target {self.target!r}; expected one of {TARGETS}")
        if self.viewport is not None:
            if len(self.viewport) != 4:
                raise MalformedInputError("viewport is (x_min, y_min, width, height)")
            if self.viewport[2] <= 0 or self.viewport[3] <= 0:
                raise MalformedInputError("viewport width and height must be positive")

    @classmethod
    def of(cls, target: str, viewport: Optional[Sequence] = None, labels: bool = True) -> "RenderSpec":
        box = None if viewport is None else tuple(as_rational(v) for v in viewport)
        return cls(target, box, labels)


# ---------- Exact plane geometry ---------- #
def clip_polygon(vertices: List[Point2], normal: Sequence[Fraction], offset: Fraction) -> List[Point2]:
    """Sutherland-Hodgman clip of a convex polygon to normal . x >= offset."""
    result: List[Point2] = []
    count = len(vertices)
    for k in range(count):
        p, q = vertices[k], vertices[(k + 1) % count]
        fp = normal[0] * p[0] + normal[1] * p[1] - offset
        fq = normal[0] * q[0] + normal[1] * q[1] - offset
        if fp >= 0:
            result.append(p)
        if (fp > 0 and fq < 0) or (fp < 0 and fq > 0):
            t = fp / (fp - fq)
            result.append((p[0] + t * (q[0] - p[0]), p[1] + t * (q[1] - p[1])))
    deduped: List[Point2] = []
    for v in result:
        if not deduped or deduped[-1] != v:
            deduped.append(v)
    if len(deduped) > 1 and deduped[0] == deduped[-1]:
        deduped.pop()
    return deduped


def polyhedron_in_box(polyhedron: Polyhedron, box: Tuple[Fraction, Fraction, Fraction, Fraction]) -> List[Point2]:
    x0, y0, w, h = box
    polygon = [(x0, y0), (x0 + w, y0), (x0 + w, y0 + h), (x0, y0 + h)]
    for normal, offset in zip(polyhedron.normals, polyhedron.offsets):
        if normal[0] == 0 and normal[1] == 0:
            if offset > 0:
                return []
            continue
        polygon = clip_polygon(polygon, normal, offset)
        if not polygon:
            return []
    return polygon


def _half(v: Point2) -> int:
    return 0 if v[1] > 0 or (v[1] == 0 and v[0] > 0) else 1


def _angle_cmp(a: Point2, b: Point2) -> int:
    ha, hb = _half(a), _half(b)
    if ha != hb:
        return ha - hb
    cross = a[0] * b[1] - a[1] * b[0]
    return -1 if cross > 0 else (1 if cross < 0 else 0)


def counterclockwise(points: Sequence[Point2]) -> List[Point2]:
    """Boundary points of a convex polygon in counterclockwise order."""
    cx = sum((p[0] for p in points), Fraction(0)) / len(points)
    cy = sum((p[1] for p in points), Fraction(0)) / len(points)
    key = functools.cmp_to_key(lambda a, b: _angle_cmp((a[0] - cx, a[1] - cy), (b[0] - cx, b[1] - cy)))
    return sorted(points, key=key)


def _centroid(points: Sequence[Point2]) -> Point2:
    return (
        sum((p[0] for p in points), Fraction(0)) / len(points),
        sum((p[1] for p in points), Fraction(0)) / len(points),
    )


def _bounding_box(points: Sequence[Point2], margin: Fraction = Fraction(1)):
    xs = [p[0] for p in points]
    ys = [p[1] for p in points]
    x0, y0 = min(xs) - margin, min(ys) - margin
    return x0, y0, max(xs) + margin - x0, max(ys) + margin - y0


class FigureRenderer:
    """
    Renders figures through the Jinja2 templates in view/templates.

    Attributes
    ----------
    templates_dir : Path
        Directory containing figure.svg and report.html.
    env : Environment
        Jinja2 environment for template rendering.
    """

    def __init__(self, templates_dir: Path = TEMPLATES_DIR):
        self.templates_dir: Path = Path(templates_dir)
        self.env: Environment = self._get_env()

    # ------------------ Public API ------------------ #
    def render(self, source, spec: RenderSpec) -> str:
        """
        SVG for a mechanism, a polynomial or an affine maximizer.

        :raises RenderDimensionError: the input is not two-dimensional.
        """
        if isinstance(source, Mechanism):
            if source.items != 2:
                raise RenderDimensionError(f"only 2-item mechanisms can be drawn, got {source.items} items")
            polynomial = utility_polynomial(source)
            if spec.target == "difference-sets":
                return self.render_difference_sets(polynomial, spec)
            return self._render_polynomial(polynomial, spec)
        if isinstance(source, TropicalPolynomial):
            if source.dimension != 2:
                raise RenderDimensionError(f"only bivariate polynomials can be drawn, got dimension {source.dimension}")
            if spec.target == "difference-sets":
                return self.render_difference_sets(source, spec)
            return self._render_polynomial(source, spec)
        if isinstance(source, AffineMaximizer):
            reduction = lineality_reduce(source)
            if reduction.dimension != 2:
                raise RenderDimensionError(
                    f"affine maximizer reduces to dimension {reduction.dimension}, only 2 can be drawn"
                )
            if spec.target != "difference-sets":
                raise RenderDimensionError("affine maximizers are drawn as difference sets only")
            return self.render_affine_regions(source, spec)
        raise MalformedInputError(f"cannot render {type(source).__name__}")

    def render_difference_sets(self, p: TropicalPolynomial, spec: RenderSpec) -> str:
        """Regions of V(p) clipped to the viewport."""
        labels = {u: "".join(str(x) for x in u) for u in p.support}
        regions = [(labels[u], region(p, u)) for u, _ in p.finite_terms]
        return self._render_regions(regions, spec, f"Difference sets of {p}")

    def render_affine_regions(self, am: AffineMaximizer, spec: RenderSpec) -> str:
        regions = sorted(affine_regions_reduced(am).items())
        return self._render_regions(regions, spec, f"Difference sets of a {am.players}-player affine maximizer")

    def render_report_html(self, title: str, summary_markdown: str, report_json: str) -> str:
        """HTML page with the Markdown summary and the raw report."""
        try:
            template = self.env.get_template("report.html")
        except TemplateNotFound:
            logger.error("Error: 'report.html' template not found.")
            raise
        return template.render(
            title=title,
            summary_html=self._markdown_to_html(summary_markdown),
            report_json=report_json,
        )

    # ------------------ Private Helpers ------------------ #
    def _get_env(self) -> Environment:
        """Set up Jinja2 environment."""
        return Environment(
            loader=FileSystemLoader(str(self.templates_dir)),
            autoescape=select_autoescape(["html", "xml", "svg"]),
            trim_blocks=True,
            lstrip_blocks=True,
            keep_trailing_newline=True,
        )

    @staticmethod
    def _markdown_to_html(md_text: str) -> str:
        return markdown.markdown(md_text, extensions=["tables"], output_format="html5")

    def _render_polynomial(self, p: TropicalPolynomial, spec: RenderSpec) -> str:
        subdivision = dual_subdivision(p)
        config = subdivision.config
        if config.affine_dimension != 2:
            raise RenderDimensionError("the support must span the plane")
        if spec.target == "dual-subdivision":
            points = [tuple(Fraction(x) for x in u) for u in p.support]
            box = spec.viewport or _bounding_box(points)
            used = subdivision.used_points
            polygons = []
            for k, cell in enumerate(subdivision.cells):
                corners = counterclockwise([tuple(Fraction(x) for x in config.points[i]) for i in cell])
                polygons.append({"points": corners, "fill": PALETTE[k % len(PALETTE)]})
            marks = []
            labels = []
            for u, c in zip(p.support, p.coefficients):
                point = tuple(Fraction(x) for x in u)
                inside = c is not None and config.index.get(u) in used
                marks.append({"at": point, "fill": "black" if inside else "gray"})
                if spec.labels:
                    labels.append({"at": point, "text": "-inf" if c is None else format_rational(c)})
            return self._svg(f"Dual subdivision of {p}", box, polygons, [], marks, labels, spec)

        span = tight_span(p)
        vertices = [tuple(v) for v in span.vertices]
        if not vertices:
            box = spec.viewport or tuple(as_rational(v) for v in DEFAULT_VIEWPORT)
            return self._svg(f"Tight span of {p}", box, [], [], [], [], spec)
        box = spec.viewport or _bounding_box(vertices)
        edges = [{"start": vertices[i], "end": vertices[j]} for i, j in span.edges]
        marks = [{"at": v, "fill": "black"} for v in vertices]
        labels = []
        if spec.labels:
            labels = [{"at": v, "text": ",".join(format_rational(x) for x in v)} for v in vertices]
        return self._svg(f"Tight span of {p}", box, [], edges, marks, labels, spec)

    def _render_regions(self, regions, spec: RenderSpec, title: str) -> str:
        box = spec.viewport or tuple(as_rational(v) for v in DEFAULT_VIEWPORT)
        polygons = []
        labels = []
        for k, (label, polyhedron) in enumerate(regions):
            corners = polyhedron_in_box(polyhedron, box)
            if len(corners) < 3:
                logger.debug(f"[SKIP] region {label} has no area in the viewport")
                continue
            polygons.append({"points": corners, "fill": PALETTE[k % len(PALETTE)]})
            if spec.labels:
                labels.append({"at": _centroid(corners), "text": label})
        return self._svg(title, box, polygons, [], [], labels, spec)

    def _svg(self, title, box, polygons, edges, marks, labels, spec: RenderSpec) -> str:
        x0, y0, w, h = box
        scale = Fraction(SVG_SIZE_PX)

        def px(point: Point2) -> Tuple[str, str]:
            x = SVG_MARGIN_PX + (point[0] - x0) / w * scale
            y = SVG_MARGIN_PX + (y0 + h - point[1]) / h * scale
            return to_decimal_string(x, SVG_DECIMALS), to_decimal_string(y, SVG_DECIMALS)

        context: Dict[str, object] = {
            "title": title,
            "size": SVG_SIZE_PX + 2 * SVG_MARGIN_PX,
            "stroke_width": spec.stroke_width,
            "polygons": [
                {"points": " ".join(",".join(px(v)) for v in poly["points"]), "fill": poly["fill"]}
                for poly in polygons
            ],
            "edges": [dict(zip(("x1", "y1", "x2", "y2"), px(e["start"]) + px(e["end"]))) for e in edges],
            "marks": [dict(zip(("cx", "cy"), px(m["at"])), fill=m["fill"]) for m in marks],
            "labels": [dict(zip(("x", "y"), px(lab["at"])), text=lab["text"]) for lab in labels],
        }
        try:
            template = self.env.get_template("figure.svg")
        except TemplateNotFound:
            logger.error("Error: 'figure.svg' template not found.")
            raise
        return template.render(**context)
