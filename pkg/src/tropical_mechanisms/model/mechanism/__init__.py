"""
mechanism
=========

One-player mechanisms on m items, allocation networks, sensitivity,
robust constructions and multi-player affine maximizers.
"""

from tropical_mechanisms.model.mechanism.affine import (
    AffineMaximizer,
    affine_indifference_complex,
    affine_subdivision,
    lineality_reduce,
    multiplayer_cardinality_sensitivity,
)
from tropical_mechanisms.model.mechanism.mechanism import (
    IndifferenceComplex,
    Mechanism,
    indifference_complex,
    random_mechanism,
    utility_polynomial,
    verify_complex_by_intersection,
)
from tropical_mechanisms.model.mechanism.network import arc_length, audit_zero_cycles, verify_zero_cycles
from tropical_mechanisms.model.mechanism.robust import (
    construct_cardinality_robust,
    construct_hamming_robust,
    construct_multiplayer_robust,
)
from tropical_mechanisms.model.mechanism.sensitivity import SensitivityBound, optimal_sensitivity, sensitivity
