"""
tropical
========

Tropical polynomials, their dual subdivisions, regions and tight spans.
"""

from tropical_mechanisms.model.tropical.polynomial import (
    NEG_INF,
    Evaluation,
    Polyhedron,
    TightSpan,
    TropicalPolynomial,
    dual_subdivision,
    dual_vertex,
    evaluate,
    region,
    tight_span,
)
