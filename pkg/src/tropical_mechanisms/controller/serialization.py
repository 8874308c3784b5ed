"""
JSON codecs for the domain types and validation of analysis reports.

Rationals are written as "num/den" strings ("num" when den = 1); -inf
coefficients as "-inf". Output is deterministic: keys sorted, two-space
indentation, trailing newline.
"""

import json
import logging
from functools import lru_cache
from pathlib import Path
from typing import Any, Dict, Union

import jsonschema

from tropical_mechanisms.controller.config import REPORT_SCHEMA_PATH
from tropical_mechanisms.model.common.errors import InvariantViolationError, MalformedInputError
from tropical_mechanisms.model.exact.rational import format_rational, parse_rational
from tropical_mechanisms.model.geometry.point_config import (
    PointConfiguration,
    config_from_shorthand,
    custom_config,
)
from tropical_mechanisms.model.geometry.subdivision import Lifting, Subdivision
from tropical_mechanisms.model.mechanism.affine import AffineMaximizer
from tropical_mechanisms.model.mechanism.mechanism import Mechanism, bundle_labels
from tropical_mechanisms.model.tropical.polynomial import NEG_INF, TropicalPolynomial

logger = logging.getLogger(__name__)

Json = Dict[str, Any]


# ---------- Files ---------- #
def load_json(path: Union[str, Path]) -> Json:
    """
    Read a JSON object from a file.

    :raises MalformedInputError: unreadable file or invalid JSON.
    """
    try:
        data = json.loads(Path(path).read_text(encoding="utf-8"))
    except OSError as e:
        raise MalformedInputError(f"cannot read {path}: {e}")
    except json.JSONDecodeError as e:
        raise MalformedInputError(f"{path} is not valid JSON: {e}")
    if not isinstance(data, dict):
        raise MalformedInputError(f"{path}: expected a JSON object")
    return data


def dump_json(data: Json) -> str:
    return json.dumps(data, indent=2, sort_keys=True) + "\n"


def _rational(text: Any):
    if not isinstance(text, (str, int)) or isinstance(text, bool):
        raise MalformedInputError(f"rationals are written as strings, got {text!r}")
    return parse_rational(str(text))


def _field(data: Json, key: str):
    if key not in data:
        raise MalformedInputError(f"missing field {key!r}")
    return data[key]


# ---------- Configurations ---------- #
def config_to_json(config: PointConfiguration) -> Union[str, Json]:
    """Shorthand for the standard configurations, inline otherwise."""
    if config.shorthand:
        return config.shorthand
    return {
        "dimension": config.dimension,
        "points": [list(p) for p in config.points],
        "labels": list(config.labels),
    }


def config_from_json(data: Union[str, Json]) -> PointConfiguration:
    if isinstance(data, str):
        return config_from_shorthand(data)
    points = _field(data, "points")
    config = custom_config(points, data.get("labels"))
    if "dimension" in data and data["dimension"] != config.dimension:
        raise MalformedInputError(f"dimension {data['dimension']} does not match the points")
    return config


# ---------- Liftings and subdivisions ---------- #
def lifting_to_json(lifting: Lifting) -> Json:
    return {"heights": [format_rational(h) for h in lifting.heights]}


def lifting_from_json(data: Json) -> Lifting:
    return Lifting(tuple(_rational(h) for h in _field(data, "heights")))


def subdivision_to_json(subdivision: Subdivision) -> Json:
    return {
        "config": config_to_json(subdivision.config),
        "cells": [list(cell) for cell in subdivision.cells],
    }


def subdivision_from_json(data: Json) -> Subdivision:
    config = config_from_json(_field(data, "config"))
    cells = _field(data, "cells")
    if not isinstance(cells, list) or not all(isinstance(c, list) for c in cells):
        raise MalformedInputError("cells must be a list of index lists")
    return Subdivision.of(config, cells)


# ---------- Mechanisms ---------- #
def mechanism_to_json(mech: Mechanism) -> Json:
    labels = bundle_labels(mech.items)
    return {
        "items": mech.items,
        "payments": {label: format_rational(p) for label, p in zip(labels, mech.payments)},
    }


def mechanism_from_json(data: Json) -> Mechanism:
    items = _field(data, "items")
    payments = _field(data, "payments")
    if not isinstance(items, int) or not isinstance(payments, dict):
        raise MalformedInputError("a mechanism needs an integer 'items' and a 'payments' object")
    return Mechanism.from_mapping(items, {k: _rational(v) for k, v in payments.items()})


def affine_to_json(am: AffineMaximizer) -> Json:
    return {
        "players": am.players,
        "items": am.items,
        "weights": [format_rational(w) for w in am.weights],
        "biases": {label: format_rational(c) for label, c in zip(am.config.labels, am.biases)},
    }


def affine_from_json(data: Json) -> AffineMaximizer:
    biases = _field(data, "biases")
    if not isinstance(biases, dict):
        raise MalformedInputError("'biases' must be an object keyed by allocation labels")
    return AffineMaximizer.from_mapping(
        int(_field(data, "players")),
        int(_field(data, "items")),
        [_rational(w) for w in _field(data, "weights")],
        {k: _rational(v) for k, v in biases.items()},
    )


# ---------- Polynomials ---------- #
def polynomial_to_json(p: TropicalPolynomial) -> Json:
    return {
        "support": [list(u) for u in p.support],
        "coeffs": [NEG_INF if c is None else format_rational(c) for c in p.coefficients],
    }


def polynomial_from_json(data: Json) -> TropicalPolynomial:
    coeffs = []
    for c in _field(data, "coeffs"):
        coeffs.append(None if c == NEG_INF else _rational(c))
    return TropicalPolynomial.of(_field(data, "support"), coeffs)


def detect_kind(data: Json) -> str:
    """Which document a JSON object holds, judged by its keys."""
    if "players" in data and "biases" in data:
        return "affine"
    if "payments" in data:
        return "mechanism"
    if "support" in data:
        return "polynomial"
    if "cells" in data:
        return "subdivision"
    if "heights" in data:
        return "lifting"
    raise MalformedInputError(f"unrecognized document with keys {sorted(data)}")


# ---------- Reports ---------- #
@lru_cache(maxsize=1)
def report_schema() -> Json:
    return json.loads(REPORT_SCHEMA_PATH.read_text(encoding="utf-8"))


def validate_report(report: Json) -> None:
    """
    Check a report against the versioned schema.

    :raises InvariantViolationError: the report does not match the schema.
    """
    try:
        jsonschema.validate(instance=report, schema=report_schema())
    except jsonschema.ValidationError as e:
        raise InvariantViolationError(f"report does not match schema: {e.message}")
    logger.debug(f"report validated against {REPORT_SCHEMA_PATH.name}")
