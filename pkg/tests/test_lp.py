import itertools
import random
from fractions import Fraction as F

import pytest

from conftest import RANDOM_SEED
from tropical_mechanisms.model.exact.linalg import solve_unique
from tropical_mechanisms.model.common.errors import MalformedInputError
from tropical_mechanisms.model.exact.lp import (
    Constraint,
    LinearProgram,
    Sense,
    Status,
    lp_feasible,
    lp_feasible_strict,
    lp_solve,
)


def program(rows, objective, sense=Sense.MIN):
    constraints = tuple(Constraint.of(a, rel, b) for a, rel, b in rows)
    return LinearProgram(len(objective), constraints, tuple(F(c) for c in objective), sense)


def test_minimum_with_free_variables():
    outcome = lp_solve(program([([1, 0], ">=", 1), ([0, 1], ">=", 2)], [1, 1]))
    assert outcome.status is Status.OPTIMAL
    assert outcome.optimum == 3
    assert outcome.witness == (F(1), F(2))


def test_maximum_with_negative_values():
    outcome = lp_solve(program([([1], "<=", F(-1, 3)), ([1], ">=", -5)], [1], Sense.MAX))
    assert outcome.optimum == F(-1, 3)


def test_equalities_and_rational_data():
    rows = [([1, 1, 1], "=", 1), ([1, -1, 0], "=", F(1, 2)), ([0, 0, 1], ">=", 0)]
    outcome = lp_solve(program(rows, [0, 0, 1]))
    assert outcome.optimum == 0
    assert outcome.witness == (F(3, 4), F(1, 4), F(0))


def test_infeasible():
    outcome = lp_solve(program([([1], ">=", 1), ([1], "<=", 0)], [1]))
    assert outcome.status is Status.INFEASIBLE
    assert outcome.witness is None


def test_unbounded_returns_improving_ray():
    outcome = lp_solve(program([([1, 0], "<=", 0)], [1, 0]))
    assert outcome.status is Status.UNBOUNDED
    assert outcome.witness[0] < 0


def test_degenerate_duplicate_rows_terminate():
    rows = [([1, 1], ">=", 1)] * 4 + [([1, 0], ">=", 0), ([0, 1], ">=", 0), ([1, 0], ">=", 0)]
    outcome = lp_solve(program(rows, [2, 3]))
    assert outcome.optimum == 2


def test_feasible_point():
    witness = lp_feasible(2, [Constraint.of([1, 1], "=", 2), Constraint.of([1, -1], ">=", 0)])
    assert witness is not None
    assert witness[0] + witness[1] == 2 and witness[0] >= witness[1]
    assert lp_feasible(1, [Constraint.of([1], ">=", 1), Constraint.of([1], "<=", 0)]) is None


def test_strict_feasibility():
    open_ray = lp_feasible_strict(1, [Constraint.of([1], ">=", 0), Constraint.of([1], "<=", 1)], [True, False])
    assert open_ray.feasible
    assert open_ray.witness[0] > 0
    assert open_ray.slack > 0

    touching = lp_feasible_strict(1, [Constraint.of([1], ">=", 0), Constraint.of([1], "<=", 0)], [True, False])
    assert not touching.feasible


def test_strict_equality_is_rejected():
    with pytest.raises(MalformedInputError):
        lp_feasible_strict(1, [Constraint.of([1], "=", 0)], [True])


def test_shape_mismatch():
    with pytest.raises(MalformedInputError):
        LinearProgram(2, (Constraint.of([1], ">=", 0),), (F(0), F(0)))


def _random_boxed_rows(rng, n):
    """-5 <= x_i <= 5 plus a few random rows a.x >= b with b <= 0, so the origin is feasible."""
    rows = []
    for i in range(n):
        unit = [1 if j == i else 0 for j in range(n)]
        rows.append((unit, ">=", -5))
        rows.append((unit, "<=", 5))
    extra = rng.randint(1, 4)
    while len(rows) < 2 * n + extra:
        a = [rng.randint(-4, 4) for _ in range(n)]
        if any(a):
            rows.append((a, ">=", F(rng.randint(-12, 0), rng.randint(1, 3))))
    return rows


def _vertex_optimum(rows, objective, n):
    """Best objective over every feasible intersection of n constraint hyperplanes."""
    constraints = [Constraint.of(a, rel, b) for a, rel, b in rows]
    values = []
    for chosen in itertools.combinations(constraints, n):
        x = solve_unique([list(c.coefficients) for c in chosen], [c.rhs for c in chosen])
        if x is not None and all(c.holds(x) for c in constraints):
            values.append(sum((F(c) * v for c, v in zip(objective, x)), F(0)))
    return min(values)


@pytest.mark.parametrize("n", [2, 3])
def test_random_boxed_programs(n):
    rng = random.Random(RANDOM_SEED + n)
    for _ in range(50):
        rows = _random_boxed_rows(rng, n)
        objective = [rng.randint(-5, 5) for _ in range(n)]
        low = lp_solve(program(rows, objective))
        high = lp_solve(program(rows, [-c for c in objective], Sense.MAX))
        assert low.status is Status.OPTIMAL and high.status is Status.OPTIMAL
        assert low.optimum == -high.optimum
        assert low.optimum == _vertex_optimum(rows, objective, n), (rows, objective)
        assert sum((F(c) * v for c, v in zip(objective, low.witness)), F(0)) == low.optimum
