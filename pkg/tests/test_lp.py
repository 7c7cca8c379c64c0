import random
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

import oracles as O
from l1gap.errors import DimensionMismatch
from l1gap.field import QQ, FieldDescriptor
from l1gap.linalg import Subspace, annihilator
from l1gap.lp import (FREE, INFEASIBLE, OPTIMAL, UNBOUNDED, LinearProgram, complementary_slackness,
                      dual_feasible, dual_objective, l1_distance, solve)

Q2 = FieldDescriptor.quadratic(2)
r2 = Q2.sqrt()


def _certified(lp, sol):
    assert sol.status == OPTIMAL
    for row, bi, rel in zip(lp.A, lp.b, lp.relations):
        lhs = sum((a * x for a, x in zip(row, sol.primal)), lp.field.zero)
        assert {"<=": lhs <= bi, ">=": lhs >= bi, "=": lhs == bi}[rel]
    for (lo, hi), x in zip(lp.bounds, sol.primal):
        assert (lo is None or x >= lo) and (hi is None or x <= hi)
    assert sum((c * x for c, x in zip(lp.objective, sol.primal)), lp.field.zero) == sol.value
    assert dual_objective(lp, sol) == sol.value
    assert dual_feasible(lp, sol)
    assert complementary_slackness(lp, sol)


def test_min_x_at_least_one():
    lp = LinearProgram(QQ, [1], [[1]], [1], [">="])
    sol = solve(lp)
    assert sol.value == 1
    _certified(lp, sol)


def test_infeasible():
    lp = LinearProgram(QQ, [0], [[1], [1]], [-1, 1], ["<=", ">="], [FREE], sense="max")
    assert solve(lp).status == INFEASIBLE


def test_unbounded():
    lp = LinearProgram(QQ, [1], [[1]], [0], [">="], sense="max")
    assert solve(lp).status == UNBOUNDED


def test_free_and_boxed_variables():
    # max x + y with x in [-1, 2], y free, x + y <= 3, y - x <= 1
    lp = LinearProgram(Q2, [1, 1], [[1, 1], [-1, 1]], [3, 1], ["<=", "<="],
                       [(-1, 2), FREE], sense="max")
    sol = solve(lp)
    assert sol.value == 3
    _certified(lp, sol)


def test_irrational_data():
    # min x s.t. sqrt2 * x >= 1  ->  x = 1/sqrt2
    lp = LinearProgram(Q2, [1], [[r2]], [1], [">="])
    sol = solve(lp)
    assert sol.value == r2 / 2
    _certified(lp, sol)


def test_degenerate_cycling_example():
    # Beale's classic cycling instance; Bland's rule must terminate.
    c = [Fraction(-3, 4), 150, Fraction(-1, 50), 6]
    A = [[Fraction(1, 4), -60, Fraction(-1, 25), 9],
         [Fraction(1, 2), -90, Fraction(-1, 50), 3],
         [0, 0, 1, 0]]
    lp = LinearProgram(QQ, c, A, [0, 0, 1], ["<=", "<=", "<="])
    sol = solve(lp)
    assert sol.value == Fraction(-1, 20)
    _certified(lp, sol)


def test_dimension_checks():
    with pytest.raises(DimensionMismatch):
        LinearProgram(QQ, [1, 2], [[1]], [1], [">="])
    with pytest.raises(ValueError):
        LinearProgram(QQ, [1], [[1]], [1], ["<"])


def _rhs(rng, A, x0, rel, infeasible=False):
    """Right-hand sides making x0 feasible, or random ones for an unconstrained draw."""
    if infeasible:
        return [rng.randint(-3, 3) for _ in A]
    out = []
    for row, r in zip(A, rel):
        v = sum((a * x for a, x in zip(row, x0)), 0)
        slack = rng.randint(0, 2)
        out.append(v + slack if r == "<=" else v - slack if r == ">=" else v)
    return out


@pytest.mark.parametrize("seed", range(30))
def test_random_rational_lps_match_vertex_oracle(seed):
    rng = random.Random(seed)
    n, m = rng.randint(1, 3), rng.randint(1, 4)
    c = [rng.randint(0, 4) for _ in range(n)]  # nonnegative costs keep min bounded
    A = [[rng.randint(-3, 3) for _ in range(n)] for _ in range(m)]
    rel = [rng.choice(["<=", ">=", "="]) for _ in range(m)]
    b = _rhs(rng, A, [rng.randint(0, 2) for _ in range(n)], rel, infeasible=seed % 5 == 0)
    lp = LinearProgram(QQ, c, A, b, rel)
    sol = solve(lp)
    expected = O.lp_vertex_optimum(c, A, b, rel)
    if expected is None:
        assert sol.status == INFEASIBLE
    else:
        assert sol.value == expected
        _certified(lp, sol)


@pytest.mark.parametrize("seed", range(20))
def test_random_quadratic_lps_strong_duality(seed):
    rng = random.Random(100 + seed)
    n, m = rng.randint(1, 4), rng.randint(1, 5)
    def el():
        return Q2(rng.randint(-3, 3), rng.randint(-2, 2))
    c = [Q2(rng.randint(0, 3), rng.randint(0, 1)) for _ in range(n)]
    A = [[el() for _ in range(n)] for _ in range(m)]
    rel = [rng.choice(["<=", ">=", "="]) for _ in range(m)]
    b = _rhs(rng, A, [Q2(rng.randint(0, 1)) for _ in range(n)], rel)
    bounds = [rng.choice([(0, None), (-2, 3), (0, r2)]) for _ in range(n)]
    lp = LinearProgram(Q2, c, A, b, rel, bounds, sense=rng.choice(["min", "max"]))
    sol = solve(lp)
    assert sol.status in (OPTIMAL, INFEASIBLE, UNBOUNDED)
    if sol.status == OPTIMAL:
        _certified(lp, sol)


def _p(v):
    return [O.pair(Q2.coerce(x)) for x in v]


def test_l1_distance_examples():
    res = l1_distance((1, 0), Subspace.span([(1, 1)], 2, Q2))
    assert res.value == 1
    res = l1_distance((1, 0), Subspace.span([(r2, 1)], 2, Q2))
    assert res.value == r2 / 2
    assert O.pair(res.value) == O.l1_breakpoint_scan(_p((1, 0)), _p((r2, 1)), 2)
    assert l1_distance((r2, 1), Subspace.span([(r2, 1)], 2, Q2)).value == 0


vecs = st.lists(st.tuples(st.integers(-4, 4), st.integers(-2, 2)), min_size=3, max_size=3)


@settings(max_examples=40, deadline=None)
@given(vecs, vecs)
def test_l1_distance_to_a_line_matches_breakpoint_scan(p, u):
    point = tuple(Q2(*x) for x in p)
    direction = tuple(Q2(*x) for x in u)
    if all(x.is_zero() for x in direction):
        return
    W = Subspace.span([direction], 3, Q2)
    res = l1_distance(point, W)
    assert O.pair(res.value) == O.l1_breakpoint_scan(_p(point), _p(direction), 2)
    cert = res.certificate
    assert all(abs(x) <= 1 for x in cert)
    assert annihilator(W).contains(cert)
    assert sum((a * b for a, b in zip(cert, point)), Q2.zero) == res.value
    assert sum((abs(a - b) for a, b in zip(point, res.witness)), Q2.zero) == res.value
    assert W.contains(res.witness)


@settings(max_examples=30, deadline=None)
@given(vecs, vecs, vecs, st.tuples(st.integers(-3, 3), st.integers(-2, 2)))
def test_l1_distance_seminorm_properties(p, q, u, c):
    W = Subspace.span([tuple(Q2(*x) for x in u)], 3, Q2)
    x, y = tuple(Q2(*v) for v in p), tuple(Q2(*v) for v in q)
    c = Q2(*c)
    dx, dy = l1_distance(x, W).value, l1_distance(y, W).value
    assert l1_distance(tuple(a + b for a, b in zip(x, y)), W).value <= dx + dy
    assert l1_distance(tuple(c * a for a in x), W).value == abs(c) * dx
    assert (dx == 0) == W.contains(x)


def test_l1_distance_dimension_mismatch():
    with pytest.raises(DimensionMismatch):
        l1_distance((1, 2, 3), Subspace.span([(1, 1)], 2, Q2))
