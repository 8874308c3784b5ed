"""
Exception hierarchy for tropical_mechanisms.

Every error carries the process exit code the CLI should use when it
reaches the top level.
"""

from typing import Optional, Tuple


class TropicalMechanismError(Exception):
    """Base class for all errors raised by the package."""

    exit_code = 1


class MalformedInputError(TropicalMechanismError):
    """Input does not satisfy the preconditions of an operation."""

    exit_code = 2


class IncompatibleGroupError(MalformedInputError):
    """A symmetry group kind that does not act on the given configuration."""


class InvariantViolationError(TropicalMechanismError):
    """
    An invariant that should hold by construction failed.

    :param message: Human readable description.
    :param pair: Optional pair of offending objects (e.g. two cells).
    """

    exit_code = 3

    def __init__(self, message: str, pair: Optional[Tuple] = None):
        super().__init__(message)
        self.pair = pair


class SizeGuardError(TropicalMechanismError):
    """Exhaustive search refused without the long-running flag."""

    exit_code = 4


class RenderDimensionError(TropicalMechanismError):
    """Rendering requested for an input that is not two-dimensional."""

    exit_code = 5
