"""Exact dense linear algebra over Q and Q(i), list-of-lists based.

Everything here is field-generic over scalars supporting +, -, *, / and an
exact zero test (Fraction or GaussRational). Nothing rounds.
"""
from __future__ import annotations

from fractions import Fraction

from .scalars import GaussRational


def is_zero_scalar(x) -> bool:
    if isinstance(x, GaussRational):
        return x.is_zero()
    return x == 0


def rref(rows: list[list], aug: int = 0):
    """Reduced row echelon form in place on a copy.

    Returns (matrix, pivot_columns). The final `aug` columns are carried along
    but never pivoted on (augmented system).
    """
    m = [list(r) for r in rows]
    if not m:
        return m, []
    nrows, ncols = len(m), len(m[0])
    pivots: list[int] = []
    r = 0
    for c in range(ncols - aug):
        if r >= nrows:
            break
        pivot = next((i for i in range(r, nrows) if not is_zero_scalar(m[i][c])), None)
        if pivot is None:
            continue
        m[r], m[pivot] = m[pivot], m[r]
        pv = m[r][c]
        m[r] = [x / pv for x in m[r]]
        for i in range(nrows):
            if i != r and not is_zero_scalar(m[i][c]):
                f = m[i][c]
                m[i] = [a - f * b for a, b in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
    return m, pivots


def rank(rows: list[list]) -> int:
    _, pivots = rref(rows)
    return len(pivots)


def solve(a: list[list], b: list):
    """One solution x of A x = b, or None if inconsistent.

    Free variables are set to zero. Exact.
    """
    if not a or not a[0]:
        return [] if all(is_zero_scalar(x) for x in b) else None
    ncols = len(a[0])
    aug_rows = [list(r) + [bv] for r, bv in zip(a, b)]
    m, pivots = rref(aug_rows, aug=1)
    for row in m:
        if all(is_zero_scalar(x) for x in row[:-1]) and not is_zero_scalar(row[-1]):
            return None
    zero = a[0][0] - a[0][0]
    x = [zero] * ncols
    for r, c in enumerate(pivots):
        x[c] = m[r][-1]
    return x


def nullspace(a: list[list]) -> list[list]:
    """Basis of the kernel of A, exact."""
    if not a:
        return []
    ncols = len(a[0])
    m, pivots = rref(a)
    zero = a[0][0] - a[0][0]
    one = None
    for row in a:
        for x in row:
            if not is_zero_scalar(x):
                one = x / x
                break
        if one is not None:
            break
    if one is None:
        # zero matrix: kernel is everything
        basis = []
        for j in range(ncols):
            v = [zero] * ncols
            v[j] = _unit_like(zero)
            basis.append(v)
        return basis
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for fc in free:
        v = [zero] * ncols
        v[fc] = one
        for r, c in enumerate(pivots):
            v[c] = -m[r][fc]
        basis.append(v)
    return basis


def _unit_like(zero):
    if isinstance(zero, GaussRational):
        from .scalars import GQ_ONE

        return GQ_ONE
    return Fraction(1)
