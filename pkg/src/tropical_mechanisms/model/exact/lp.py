"""
Exact linear programming.

A two-phase tableau simplex over Fractions with Bland's rule, so it
terminates on degenerate programs (duplicated constraints, ties in the
ratio test). Variables are free; sign restrictions are ordinary rows.

Every geometric predicate in the package ("attained at least twice",
"nonempty intersection", "supporting hyperplane", regularity) ends up here.
"""

import enum
import logging
from dataclasses import dataclass, field
from fractions import Fraction
from typing import List, Optional, Sequence, Tuple

from tropical_mechanisms.model.common.errors import (
    InvariantViolationError,
    MalformedInputError,
)
from tropical_mechanisms.model.exact.rational import Vector, to_vector

logger = logging.getLogger(__name__)


class Relation(str, enum.Enum):
    GE = ">="
    EQ = "="
    LE = "<="


class Sense(str, enum.Enum):
    MIN = "min"
    MAX = "max"


class Status(str, enum.Enum):
    OPTIMAL = "optimal"
    INFEASIBLE = "infeasible"
    UNBOUNDED = "unbounded"


@dataclass(frozen=True)
class Constraint:
    coefficients: Vector
    relation: Relation
    rhs: Fraction

    @classmethod
    def of(cls, coefficients: Sequence, relation: str, rhs) -> "Constraint":
        """Build a constraint from rational-likes and a relation symbol."""
        return cls(to_vector(coefficients), Relation(relation), to_vector([rhs])[0])

    def holds(self, x: Sequence[Fraction]) -> bool:
        """Exact substitution check, zero tolerance."""
        lhs = sum((a * b for a, b in zip(self.coefficients, x)), Fraction(0))
        if self.relation is Relation.GE:
            return lhs >= self.rhs
        if self.relation is Relation.LE:
            return lhs <= self.rhs
        return lhs == self.rhs


@dataclass(frozen=True)
class LinearProgram:
    num_variables: int
    constraints: Tuple[Constraint, ...]
    objective: Vector
    sense: Sense = Sense.MIN

    def __post_init__(self):
        if self.num_variables < 0:
            raise MalformedInputError("negative variable count")
        if len(self.objective) != self.num_variables:
            raise MalformedInputError(
                f"objective has {len(self.objective)} coefficients, expected {self.num_variables}"
            )
        for i, con in enumerate(self.constraints):
            if len(con.coefficients) != self.num_variables:
                raise MalformedInputError(
                    f"constraint {i} has {len(con.coefficients)} coefficients, expected {self.num_variables}"
                )


@dataclass(frozen=True)
class LpOutcome:
    status: Status
    optimum: Optional[Fraction] = None
    witness: Optional[Vector] = None


@dataclass(frozen=True)
class StrictFeasibility:
    feasible: bool
    witness: Optional[Vector] = None
    slack: Fraction = field(default=Fraction(0))


# ---------- Tableau ---------- #
class _Tableau:
    """
    Dense simplex tableau for: minimize cost . y  s.t.  rows . y = rhs, y >= 0.

    Every row has a basic column with coefficient 1; rhs stays nonnegative.
    """

    def __init__(self, rows: List[List[Fraction]], rhs: List[Fraction], basis: List[int], width: int):
        self.rows = rows
        self.rhs = rhs
        self.basis = basis
        self.width = width
        self.reduced: List[Fraction] = [Fraction(0)] * width
        self.value = Fraction(0)

    def set_cost(self, cost: List[Fraction]) -> None:
        self.reduced = list(cost)
        self.value = Fraction(0)
        for i, b in enumerate(self.basis):
            cb = cost[b]
            if cb != 0:
                row = self.rows[i]
                self.reduced = [r - cb * a for r, a in zip(self.reduced, row)]
                self.value += cb * self.rhs[i]

    def pivot(self, r: int, c: int) -> None:
        row = self.rows[r]
        inv = 1 / row[c]
        if inv != 1:
            row = [a * inv for a in row]
            self.rows[r] = row
            self.rhs[r] *= inv
        for i in range(len(self.rows)):
            if i == r:
                continue
            factor = self.rows[i][c]
            if factor != 0:
                self.rows[i] = [a - factor * b for a, b in zip(self.rows[i], row)]
                self.rhs[i] -= factor * self.rhs[r]
        factor = self.reduced[c]
        if factor != 0:
            self.reduced = [a - factor * b for a, b in zip(self.reduced, row)]
            self.value += factor * self.rhs[r]
        self.basis[r] = c

    def run(self) -> Tuple[Status, Optional[int]]:
        """
        Iterate with Bland's rule until optimal or unbounded.

        :return: (status, entering column of the unbounded ray if any)
        """
        iterations = 0
        while True:
            entering = next(
                (j for j, r in enumerate(self.reduced) if r < 0),
                None,
            )
            if entering is None:
                logger.debug(f"simplex optimal after {iterations} pivots")
                return Status.OPTIMAL, None
            best: Optional[Tuple[Fraction, int, int]] = None
            for i, row in enumerate(self.rows):
                a = row[entering]
                if a > 0:
                    key = (self.rhs[i] / a, self.basis[i], i)
                    if best is None or key < best:
                        best = key
            if best is None:
                return Status.UNBOUNDED, entering
            self.pivot(best[2], entering)
            iterations += 1

    def primal(self) -> List[Fraction]:
        y = [Fraction(0)] * self.width
        for i, b in enumerate(self.basis):
            y[b] = self.rhs[i]
        return y

    def ray(self, entering: int) -> List[Fraction]:
        d = [Fraction(0)] * self.width
        d[entering] = Fraction(1)
        for i, b in enumerate(self.basis):
            d[b] = -self.rows[i][entering]
        return d


def _standard_form(lp: LinearProgram):
    """
    Rewrite with y = (x+, x-, slacks, artificials) >= 0.

    :return: (tableau, number of structural + slack columns, artificial columns)
    """
    n = lp.num_variables
    slack_rows = [i for i, c in enumerate(lp.constraints) if c.relation is not Relation.EQ]
    slack_col = {row: 2 * n + k for k, row in enumerate(slack_rows)}
    base_width = 2 * n + len(slack_rows)

    rows: List[List[Fraction]] = []
    rhs: List[Fraction] = []
    basis: List[int] = []
    needs_artificial: List[int] = []
    for i, con in enumerate(lp.constraints):
        row = [Fraction(0)] * base_width
        for j, a in enumerate(con.coefficients):
            row[j] = a
            row[n + j] = -a
        b = con.rhs
        if con.relation is Relation.LE:
            row = [-a for a in row]
            b = -b
        # row . y (>= or =) b
        if con.relation is not Relation.EQ:
            row[slack_col[i]] = Fraction(-1)
            if b <= 0:
                row = [-a for a in row]
                b = -b
                basis.append(slack_col[i])
            else:
                basis.append(-1)
                needs_artificial.append(len(rows))
        else:
            if b < 0:
                row = [-a for a in row]
                b = -b
            basis.append(-1)
            needs_artificial.append(len(rows))
        rows.append(row)
        rhs.append(b)

    width = base_width + len(needs_artificial)
    artificial_cols = []
    for k, r in enumerate(needs_artificial):
        col = base_width + k
        artificial_cols.append(col)
        basis[r] = col
    rows = [row + [Fraction(0)] * len(needs_artificial) for row in rows]
    for r, col in zip(needs_artificial, artificial_cols):
        rows[r][col] = Fraction(1)
    return _Tableau(rows, rhs, basis, width), base_width, artificial_cols


def lp_solve(lp: LinearProgram) -> LpOutcome:
    """
    Solve a linear program exactly.

    :param lp: The program; variables are free.
    :return: optimal (optimum + witness), infeasible, or unbounded (witness is
             a recession direction along which the objective improves without
             bound).
    """
    n = lp.num_variables
    tableau, base_width, artificial_cols = _standard_form(lp)

    # ---------- Phase 1 ---------- #
    if artificial_cols:
        cost = [Fraction(0)] * tableau.width
        for col in artificial_cols:
            cost[col] = Fraction(1)
        tableau.set_cost(cost)
        tableau.run()
        if tableau.value > 0:
            return LpOutcome(Status.INFEASIBLE)
        artificial = set(artificial_cols)
        keep = []
        for i, b in enumerate(tableau.basis):
            if b in artificial:
                col = next(
                    (j for j in range(base_width) if tableau.rows[i][j] != 0),
                    None,
                )
                if col is None:
                    continue
                tableau.pivot(i, col)
            keep.append(i)
        tableau.rows = [tableau.rows[i][:base_width] for i in keep]
        tableau.rhs = [tableau.rhs[i] for i in keep]
        tableau.basis = [tableau.basis[i] for i in keep]
        tableau.width = base_width

    # ---------- Phase 2 ---------- #
    sign = Fraction(1) if lp.sense is Sense.MIN else Fraction(-1)
    cost = [Fraction(0)] * tableau.width
    for j, c in enumerate(lp.objective):
        cost[j] = sign * c
        cost[n + j] = -sign * c
    tableau.set_cost(cost)
    status, entering = tableau.run()

    if status is Status.UNBOUNDED:
        d = tableau.ray(entering)
        return LpOutcome(Status.UNBOUNDED, witness=tuple(d[j] - d[n + j] for j in range(n)))

    y = tableau.primal()
    x = tuple(y[j] - y[n + j] for j in range(n))
    optimum = sum((c * v for c, v in zip(lp.objective, x)), Fraction(0))
    for i, con in enumerate(lp.constraints):
        if not con.holds(x):
            raise InvariantViolationError(f"simplex witness violates constraint {i}")
    return LpOutcome(Status.OPTIMAL, optimum=optimum, witness=x)


def lp_feasible(num_variables: int, constraints: Sequence[Constraint]) -> Optional[Vector]:
    """
    Find any point satisfying weak constraints.

    :return: A witness, or None if infeasible.
    """
    lp = LinearProgram(num_variables, tuple(constraints), tuple([Fraction(0)] * num_variables))
    outcome = lp_solve(lp)
    return outcome.witness if outcome.status is Status.OPTIMAL else None


def lp_feasible_strict(
    num_variables: int,
    constraints: Sequence[Constraint],
    strict: Sequence[bool],
) -> StrictFeasibility:
    """
    Decide feasibility of a system in which some inequalities are strict.

    One slack variable eps, bounded above by 1, is added to every strict
    inequality (a.x > b becomes a.x >= b + eps) and eps is maximized; the
    system is strictly feasible iff the optimum is positive.

    :param num_variables: Number of free variables x.
    :param constraints: The constraints on x.
    :param strict: One flag per constraint; equalities may not be strict.
    :return: Feasibility, a witness satisfying the strict rows strictly, and
             the attained slack.
    """
    if not constraints:
        raise MalformedInputError("strict feasibility needs at least one constraint")
    if len(strict) != len(constraints):
        raise MalformedInputError("one strictness flag per constraint expected")
    rows = []
    for con, is_strict in zip(constraints, strict):
        if len(con.coefficients) != num_variables:
            raise MalformedInputError("constraint width differs from variable count")
        if is_strict and con.relation is Relation.EQ:
            raise MalformedInputError("an equality cannot be strict")
        eps = Fraction(0)
        if is_strict:
            eps = Fraction(-1) if con.relation is Relation.GE else Fraction(1)
        rows.append(Constraint(con.coefficients + (eps,), con.relation, con.rhs))
    bound = tuple([Fraction(0)] * num_variables + [Fraction(1)])
    rows.append(Constraint(bound, Relation.LE, Fraction(1)))
    objective = tuple([Fraction(0)] * num_variables + [Fraction(1)])
    outcome = lp_solve(LinearProgram(num_variables + 1, tuple(rows), objective, Sense.MAX))
    if outcome.status is not Status.OPTIMAL:
        return StrictFeasibility(False)
    slack = outcome.optimum
    if not any(strict):
        return StrictFeasibility(True, outcome.witness[:num_variables], slack)
    if slack <= 0:
        return StrictFeasibility(False, slack=slack)
    return StrictFeasibility(True, outcome.witness[:num_variables], slack)
