"""
exact
=====

Exact rational arithmetic, exact linear algebra and an exact simplex solver.
"""

from tropical_mechanisms.model.exact.lp import (
    Constraint,
    LinearProgram,
    LpOutcome,
    Relation,
    Sense,
    Status,
    StrictFeasibility,
    lp_feasible,
    lp_feasible_strict,
    lp_solve,
)
from tropical_mechanisms.model.exact.rational import (
    Rational,
    as_rational,
    format_rational,
    parse_rational,
    to_decimal_string,
    to_vector,
)
