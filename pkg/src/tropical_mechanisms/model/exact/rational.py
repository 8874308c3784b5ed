"""
Exact rational scalars.

`Rational` is `fractions.Fraction`: always reduced, denominator positive.
Helpers here convert to and from the string forms used in JSON files
("num/den", or "num" when den = 1) and to fixed decimal strings for SVG.
"""

import decimal
from fractions import Fraction
from typing import Iterable, Tuple, Union

from tropical_mechanisms.model.common.errors import MalformedInputError

Rational = Fraction
RationalLike = Union[Fraction, int, str]
Vector = Tuple[Fraction, ...]


def as_rational(value: RationalLike) -> Fraction:
    """
    Convert an int, Fraction or "num/den" string to a Fraction.

    Floats are rejected: a float has already lost exactness.

    :param value: The value to convert.
    :return: The exact rational.
    """
    if isinstance(value, bool) or isinstance(value, float):
        raise MalformedInputError(f"not an exact rational: {value!r}")
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        return parse_rational(value)
    raise MalformedInputError(f"not an exact rational: {value!r}")


def parse_rational(text: str) -> Fraction:
    """
    Parse "num/den" or "num".

    :param text: Serialized rational.
    :return: The parsed Fraction.
    """
    body = text.strip()
    if "." in body or "e" in body.lower():
        raise MalformedInputError(f"rational must be written as num/den: {text!r}")
    try:
        value = Fraction(body)
    except (ValueError, ZeroDivisionError) as e:
        raise MalformedInputError(f"cannot parse rational {text!r}: {e}")
    return value


def format_rational(value: Fraction) -> str:
    """Serialize a rational as "num/den", or "num" when den = 1."""
    value = Fraction(value)
    if value.denominator == 1:
        return str(value.numerator)
    return f"{value.numerator}/{value.denominator}"


def to_vector(values: Iterable[RationalLike]) -> Vector:
    """Convert an iterable of rational-likes to a tuple of Fractions."""
    return tuple(as_rational(v) for v in values)


def to_decimal_string(value: Fraction, digits: int = 6) -> str:
    """
    Render a rational with a fixed number of decimals, rounding half to even.

    :param value: The rational to render.
    :param digits: Number of digits after the decimal point.
    :return: e.g. "1.333333" for 4/3.
    """
    value = Fraction(value)
    quantum = decimal.Decimal(1).scaleb(-digits)
    context = decimal.Context(prec=max(28, digits + 30), rounding=decimal.ROUND_HALF_EVEN)
    with decimal.localcontext(context):
        exact = decimal.Decimal(value.numerator) / decimal.Decimal(value.denominator)
        rounded = exact.quantize(quantum, rounding=decimal.ROUND_HALF_EVEN)
    text = f"{rounded:f}"
    # no negative zero
    if rounded == 0:
        text = f"{decimal.Decimal(0).quantize(quantum):f}"
    return text
