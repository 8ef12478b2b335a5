"""Exact row reduction against sympy as the independent oracle."""
import random
from fractions import Fraction

import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

from localaut.exactlinalg import nullspace, rank, rref, solve

entry = st.fractions(min_value=-6, max_value=6, max_denominator=4)


def _sym(rows):
    return sympy.Matrix(len(rows), len(rows[0]), lambda i, j: sympy.Rational(str(rows[i][j])))


@settings(max_examples=40, deadline=None)
@given(st.lists(st.lists(entry, min_size=3, max_size=3), min_size=3, max_size=3))
def test_rank_matches_sympy(rows):
    assert rank([list(r) for r in rows]) == _sym(rows).rank()


def test_solve_verifies():
    rng = random.Random(7)
    for _ in range(25):
        a = [[Fraction(rng.randint(-5, 5), rng.choice((1, 2))) for _ in range(4)] for _ in range(4)]
        x = [Fraction(rng.randint(-3, 3)) for _ in range(4)]
        b = [sum(a[i][j] * x[j] for j in range(4)) for i in range(4)]
        got = solve([row[:] for row in a], b)
        if got is None:
            # singular A: confirm with the oracle
            assert _sym(a).rank() < 4
            continue
        assert [sum(a[i][j] * got[j] for j in range(4)) for i in range(4)] == b


def test_solve_inconsistent_is_none():
    a = [[Fraction(1), Fraction(2)], [Fraction(2), Fraction(4)]]
    assert solve(a, [Fraction(1), Fraction(3)]) is None


def test_nullspace_vectors_annihilate():
    rng = random.Random(3)
    for _ in range(20):
        m, n = rng.choice(((2, 4), (3, 5), (3, 3)))
        a = [[Fraction(rng.randint(-3, 3)) for _ in range(n)] for _ in range(m)]
        basis = nullspace([row[:] for row in a])
        assert len(basis) == n - rank([row[:] for row in a])
        for v in basis:
            assert all(sum(a[i][j] * v[j] for j in range(n)) == 0 for i in range(m))


def test_rref_idempotent_on_pivots():
    a = [
        [Fraction(2), Fraction(4), Fraction(1)],
        [Fraction(1), Fraction(2), Fraction(3)],
        [Fraction(0), Fraction(0), Fraction(5)],
    ]
    m, pivots = rref([row[:] for row in a])
    assert pivots == [0, 2]
    for r, c in enumerate(pivots):
        assert m[r][c] == 1
        assert all(m[k][c] == 0 for k in range(len(m)) if k != r)
