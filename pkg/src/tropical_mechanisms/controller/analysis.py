"""
analysis
========

One place that turns model results into report documents for the CLI.

Features
--------

- Analyze a mechanism: subdivision, indifference complex, regularity
  witness, sensitivities, tight span, zero-cycle audit.
- Enumerate triangulations of a configuration, optionally up to symmetry.
- Check a subdivision file for regularity.
- Construct robust mechanisms.
- Analyze an affine maximizer.

Every report carries the schema version and validates against the
shipped schema.
"""

import logging
from typing import Optional

from tropical_mechanisms.controller.config import MAX_INTERSECTION_CHECK_ITEMS, SCHEMA_VERSION
from tropical_mechanisms.controller.serialization import (
    Json,
    affine_to_json,
    config_to_json,
    lifting_to_json,
    mechanism_to_json,
    subdivision_to_json,
    validate_report,
)
from tropical_mechanisms.model.common.errors import MalformedInputError
from tropical_mechanisms.model.exact.rational import format_rational
from tropical_mechanisms.model.geometry.enumeration import enumerate_triangulations
from tropical_mechanisms.model.geometry.point_config import config_from_shorthand
from tropical_mechanisms.model.geometry.subdivision import Subdivision, is_regular
from tropical_mechanisms.model.geometry.symmetry import symmetry_group
from tropical_mechanisms.model.mechanism.affine import (
    AffineMaximizer,
    affine_subdivision,
    lineality_reduce,
    multiplayer_cardinality_sensitivity,
)
from tropical_mechanisms.model.mechanism.mechanism import (
    Mechanism,
    indifference_complex,
    mechanism_subdivision,
    utility_polynomial,
    verify_complex_by_intersection,
)
from tropical_mechanisms.model.mechanism.network import audit_zero_cycles
from tropical_mechanisms.model.mechanism.robust import (
    construct_cardinality_robust,
    construct_hamming_robust,
    construct_multiplayer_robust,
)
from tropical_mechanisms.model.mechanism.sensitivity import cardinality_sensitivity, hamming_sensitivity
from tropical_mechanisms.model.tropical.polynomial import tight_span

logger = logging.getLogger(__name__)

ORBIT_MODES = ("none", "sym", "full")
CONSTRUCTIONS = ("cardinality", "hamming", "multiplayer")


class MechanismAnalyzer:
    """
    Interface to the analyses behind every CLI command.
    """

    # -------- Mechanisms ----------
    def analyze(self, mech: Mechanism) -> Json:
        """
        Full analysis of a one-player mechanism.

        :param mech: The mechanism.
        :return: Report document (kind "mechanism-analysis").
        """
        subdivision = mechanism_subdivision(mech)
        complex_ = indifference_complex(mech)
        regularity = is_regular(subdivision.config, subdivision)
        span = tight_span(utility_polynomial(mech))

        intersection_check: Optional[bool] = None
        cycles = None
        if mech.items <= MAX_INTERSECTION_CHECK_ITEMS:
            intersection_check = verify_complex_by_intersection(mech)
            cycles = audit_zero_cycles(mech)
        else:
            logger.info(f"[SKIP] LP cross-checks for {mech.items} items")

        report = {
            "schema_version": SCHEMA_VERSION,
            "kind": "mechanism-analysis",
            "mechanism": mechanism_to_json(mech),
            "polynomial": str(utility_polynomial(mech)),
            "cells": [list(cell) for cell in subdivision.cells],
            "facets": [list(f) for f in complex_.facets],
            "nondegenerate": subdivision.is_triangulation,
            "regular": regularity.regular,
            "witness": None if regularity.witness is None else lifting_to_json(regularity.witness)["heights"],
            "sensitivity": {
                "cardinality": cardinality_sensitivity(subdivision),
                "hamming": hamming_sensitivity(subdivision),
            },
            "tight_span": {
                "vertices": [[format_rational(x) for x in v] for v in span.vertices],
                "edges": [list(e) for e in span.edges],
            },
            "intersection_check": intersection_check,
            "zero_cycles": None
            if cycles is None
            else {
                "adjacent_pairs": cycles.adjacent_pairs,
                "cycles_checked": cycles.cycles_checked,
                "max_length": cycles.max_length,
                "price_identity": cycles.price_identity,
            },
        }
        logger.info(f"Analyzed mechanism on {mech.items} items: {len(complex_.facets)} facets")
        validate_report(report)
        return report

    # -------- Enumeration ----------
    def enumerate(
        self,
        shorthand: str,
        regular_only: bool = False,
        orbits: str = "none",
        long_running: bool = False,
        jobs: int = 1,
    ) -> Json:
        """
        Count triangulations of a configuration given by shorthand.

        :param orbits: "none", "sym" (item permutations, or players x items
                       for simplex products) or "full" (the whole cube group).
        """
        if orbits not in ORBIT_MODES:
            raise MalformedInputError(f"unknown orbit mode {orbits!r}; expected one of {ORBIT_MODES}")
        config = config_from_shorthand(shorthand)
        group = None
        if orbits == "sym":
            kind = "player-item" if config.kind == "simplexprod" else "item-permutations"
            group = symmetry_group(config, kind)
        elif orbits == "full":
            group = symmetry_group(config, "full-cube")
        result = enumerate_triangulations(
            config, regular_only=regular_only, group=group, long_running=long_running, jobs=jobs
        )
        report = {
            "schema_version": SCHEMA_VERSION,
            "kind": "enumeration",
            "config": config_to_json(config),
            "regular_only": regular_only,
            "orbits": orbits,
            "group": result.group_kind,
            "total": result.total,
            "regular": result.regular,
            "orbit_count": result.orbits,
            "count": result.count,
            "representatives": [[list(c) for c in s.cells] for s in result.representatives],
            "orbit_sizes": result.orbit_sizes,
        }
        validate_report(report)
        return report

    # -------- Regularity ----------
    def check(self, subdivision: Subdivision) -> Json:
        """Regularity of a subdivision, with a witness lifting if regular."""
        regularity = is_regular(subdivision.config, subdivision)
        report = {
            "schema_version": SCHEMA_VERSION,
            "kind": "regularity-check",
            "subdivision": subdivision_to_json(subdivision),
            "triangulation": subdivision.is_triangulation,
            "regular": regularity.regular,
            "witness": None if regularity.witness is None else lifting_to_json(regularity.witness)["heights"],
        }
        validate_report(report)
        return report

    # -------- Constructions ----------
    def construct(self, kind: str, items: int, players: Optional[int] = None) -> Json:
        """
        Input document (mechanism or affine maximizer) of a robust construction.
        """
        if kind == "cardinality":
            document = mechanism_to_json(construct_cardinality_robust(items))
        elif kind == "hamming":
            construction = construct_hamming_robust(items)
            document = mechanism_to_json(construction.mechanism)
            document["lifting"] = lifting_to_json(construction.lifting)["heights"]
            document["cells"] = [list(cell) for cell in construction.subdivision.cells]
        elif kind == "multiplayer":
            if players is None:
                raise MalformedInputError("the multiplayer construction needs --players")
            document = affine_to_json(construct_multiplayer_robust(players, items))
        else:
            raise MalformedInputError(f"unknown construction {kind!r}; expected one of {CONSTRUCTIONS}")
        logger.info(f"[CONSTRUCT] {kind} construction for {items} items")
        return document

    # -------- Affine maximizers ----------
    def affine(self, am: AffineMaximizer) -> Json:
        """Indifference complex and sensitivity of an affine maximizer."""
        subdivision = affine_subdivision(am)
        reduction = lineality_reduce(am)
        report = {
            "schema_version": SCHEMA_VERSION,
            "kind": "affine-analysis",
            "maximizer": affine_to_json(am),
            "cells": [list(cell) for cell in subdivision.cells],
            "facets": [list(labels) for labels in subdivision.cell_labels()],
            "nondegenerate": subdivision.is_triangulation,
            "sensitivity": {"multiplayer_cardinality": multiplayer_cardinality_sensitivity(subdivision)},
            "lineality": {
                "direction": [format_rational(x) for x in reduction.direction],
                "normalized": list(reduction.normalized),
                "reduced_dimension": reduction.dimension,
            },
        }
        validate_report(report)
        return report


def summary_markdown(report: Json) -> str:
    """Short Markdown summary of a report, for the HTML page."""
    kind = report["kind"]
    lines = [f"**Kind:** {kind}", ""]
    if kind in ("mechanism-analysis", "affine-analysis"):
        lines += [
            f"**Nondegenerate:** {report['nondegenerate']}",
            "",
            "| Facet | Allocations |",
            "|---|---|",
        ]
        lines += [f"| {i + 1} | {', '.join(f)} |" for i, f in enumerate(report["facets"])]
        lines += ["", "| Sensitivity | Value |", "|---|---|"]
        lines += [f"| {k} | {v} |" for k, v in sorted(report["sensitivity"].items())]
    elif kind == "enumeration":
        lines += [f"**Configuration:** {report['config']}", "", f"**Count:** {report['count']}"]
    elif kind == "regularity-check":
        lines += [f"**Regular:** {report['regular']}"]
    return "\n".join(lines) + "\n"
