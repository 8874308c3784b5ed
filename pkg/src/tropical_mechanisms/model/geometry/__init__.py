"""
geometry
========

Point configurations, symmetry groups, exact hulls, regular subdivisions
and triangulation enumeration.
"""

from tropical_mechanisms.model.geometry.enumeration import EnumerationResult, enumerate_triangulations
from tropical_mechanisms.model.geometry.point_config import (
    PointConfiguration,
    box_lattice_config,
    config_from_shorthand,
    cube_config,
    custom_config,
    simplex_product_config,
)
from tropical_mechanisms.model.geometry.subdivision import (
    Lifting,
    RegularityResult,
    Subdivision,
    canonicalize,
    is_regular,
    normalized_volume,
    refine_to_triangulation,
    regular_subdivision,
    validate_subdivision,
)
from tropical_mechanisms.model.geometry.symmetry import GroupElement, SymmetryGroup, symmetry_group
