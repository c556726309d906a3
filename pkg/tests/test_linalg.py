from __future__ import annotations

import random
from fractions import Fraction

from hypothesis import given, settings
from hypothesis import strategies as st

from infoflow.linalg import lp_solve, nullspace, rank, rref, solve_affine

F = Fraction


def _mat_vec(A, x):
    return [sum((F(a) * xi for a, xi in zip(row, x)), F(0)) for row in A]


def test_rref_and_rank():
    m, piv = rref([[1, 2], [2, 4]])
    assert piv == [0] and rank([[1, 2], [2, 4]]) == 1
    assert rank([[1, 0], [0, 1]]) == 2
    assert rank([[1], [1], [-1]]) == 1


def test_solve_affine_inconsistent():
    assert solve_affine([[1, 1], [1, 1]], [1, 2]) is None


@settings(max_examples=100, deadline=None)
@given(st.integers(0, 10 ** 6))
def test_solutions_satisfy_the_system(seed):
    rng = random.Random(seed)
    n, m = rng.randint(1, 4), rng.randint(1, 4)
    A = [[F(rng.randint(-3, 3)) for _ in range(n)] for _ in range(m)]
    x_true = [F(rng.randint(-3, 3), rng.randint(1, 3)) for _ in range(n)]
    b = _mat_vec(A, x_true)
    x0, basis = solve_affine(A, b)
    assert _mat_vec(A, x0) == b
    assert len(basis) == n - rank(A)
    for v in basis:
        assert all(y == 0 for y in _mat_vec(A, v))
    assert len(nullspace(A)) == n - rank(A)


def test_lp_feasibility_and_optimum():
    # x + y = 1, x, y >= 0: min x is 0, max x is 1
    lo = lp_solve([[1, 1]], [1], [1, 0])
    hi = lp_solve([[1, 1]], [1], [1, 0], maximize=True)
    assert lo[1] == 0 and hi[1] == 1
    assert lp_solve([[1, 1]], [-1]) is None


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 10 ** 6))
def test_lp_matches_vertex_enumeration_on_small_polytopes(seed):
    """Oracle: enumerate basic feasible solutions by brute force."""
    from itertools import combinations

    rng = random.Random(seed)
    n = rng.randint(2, 4)
    A = [[F(rng.randint(0, 2)) for _ in range(n)] for _ in range(2)]
    x_feas = [F(rng.randint(0, 2)) for _ in range(n)]
    b = _mat_vec(A, x_feas)
    c = [F(rng.randint(-2, 2)) for _ in range(n)]
    best = None
    for cols in combinations(range(n), 2):
        sub = [[row[j] for j in cols] for row in A]
        sol = solve_affine(sub, b)
        if sol is None or sol[1]:
            continue
        x = [F(0)] * n
        for j, v in zip(cols, sol[0]):
            x[j] = v
        if all(v >= 0 for v in x):
            val = sum((ci * xi for ci, xi in zip(c, x)), F(0))
            best = val if best is None else min(best, val)
    for j in range(n):  # degenerate single-column bases
        sub = [[row[j]] for row in A]
        sol = solve_affine(sub, b)
        if sol is not None and not sol[1] and sol[0][0] >= 0:
            val = c[j] * sol[0][0]
            best = val if best is None else min(best, val)
    if all(v == 0 for v in b):
        best = F(0) if best is None else min(best, F(0))
    try:
        got = lp_solve(A, b, c)
    except ValueError:
        return  # unbounded; vertex enumeration cannot see that
    assert got is not None
    assert _mat_vec(A, got[0]) == b and all(v >= 0 for v in got[0])
    if best is not None:
        assert got[1] == best
