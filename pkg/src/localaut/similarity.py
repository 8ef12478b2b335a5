"""Simultaneous similarity: find invertible S with S A_i = B_i S for all i.

The intertwiner space L = {S : S A_i = B_i S} is computed exactly (nullspace
of a linear system over Q or Q(i)); an invertible element is then hunted by a
seeded randomized search plus a deterministic grid sweep. The solver is sound:
a returned S is verified by direct multiplication, NoSolution is certified
(L = {0}, or the determinant polynomial vanishes on a full grid whose size
bounds its degree), and anything else is Inconclusive.
"""
from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field

from .errors import BadParameters, RegimeMismatch
from .exactlinalg import is_zero_scalar, nullspace
from .matrices import (
    C64,
    Mat,
    coerce_scalar,
    close,
    det,
    mul,
    scalar_zero,
    smul,
    add,
    zeros,
    _to_numpy,
    _from_numpy,
)
from .scalars import DEFAULT_TOL

GRID_CAP = 4096


@dataclass
class SimilarityResult:
    status: str  # "Solved" | "NoSolution" | "Inconclusive"
    s: Mat | None = None
    dim: int = 0
    note: str = ""


def intertwiner_basis(pairs: list[tuple[Mat, Mat]]) -> list[Mat]:
    """Exact basis of {S : S A_i = B_i S}."""
    if not pairs:
        raise BadParameters("at least one pair is required")
    n = pairs[0][0].n
    regime = pairs[0][0].regime
    if regime == C64:
        raise RegimeMismatch("exact regimes only; use numeric_intertwiner_basis")
    zero = scalar_zero(regime)
    rows: list[list] = []
    for a, b in pairs:
        if a.n != n or b.n != n or a.regime != regime or b.regime != regime:
            raise RegimeMismatch("all pairs must share size and regime")
        for p in range(n):
            for q in range(n):
                row = [zero] * (n * n)
                for k in range(n):
                    row[p * n + k] = row[p * n + k] + a.entries[k][q]
                    row[k * n + q] = row[k * n + q] - b.entries[p][k]
                rows.append(row)
    basis_vecs = nullspace(rows)
    out = []
    for v in basis_vecs:
        ent = tuple(tuple(v[i * n + j] for j in range(n)) for i in range(n))
        out.append(Mat(n, regime, ent))
    return out


def _combine(basis: list[Mat], coeffs) -> Mat:
    out = zeros(basis[0].n, basis[0].regime)
    for c, k in zip(coeffs, basis):
        if c:
            out = add(out, smul(c, k))
    return out


def verify_intertwines(s: Mat, pairs: list[tuple[Mat, Mat]], tol: float = DEFAULT_TOL) -> bool:
    return all(close(mul(s, a), mul(b, s), tol) for a, b in pairs)


def simultaneous_similarity(
    pairs: list[tuple[Mat, Mat]],
    seed: int = 0,
    attempts: int = 50,
    tol: float = DEFAULT_TOL,
) -> SimilarityResult:
    regime = pairs[0][0].regime
    if regime == C64:
        return _numeric_similarity(pairs, seed, attempts, tol)
    basis = intertwiner_basis(pairs)
    d = len(basis)
    if d == 0:
        return SimilarityResult("NoSolution", dim=0, note="intertwiner space is zero")
    n = basis[0].n

    def try_candidate(s: Mat) -> Mat | None:
        if is_zero_scalar(det(s)):
            return None
        assert verify_intertwines(s, pairs)
        return s

    for k in basis:
        s = try_candidate(k)
        if s is not None:
            return SimilarityResult("Solved", s=s, dim=d)
    rng = random.Random(seed)
    for _ in range(attempts):
        coeffs = [rng.randint(-5, 5) for _ in range(d)]
        if all(c == 0 for c in coeffs):
            continue
        s = try_candidate(_combine(basis, coeffs))
        if s is not None:
            return SimilarityResult("Solved", s=s, dim=d)
    # deterministic sweep; det has per-coordinate degree <= n, so vanishing on
    # a full (n+1)^d grid certifies that every element of L is singular
    if (n + 1) ** d <= GRID_CAP:
        for coeffs in itertools.product(range(n + 1), repeat=d):
            if all(c == 0 for c in coeffs):
                continue
            s = try_candidate(_combine(basis, coeffs))
            if s is not None:
                return SimilarityResult("Solved", s=s, dim=d)
        return SimilarityResult(
            "NoSolution",
            dim=d,
            note="determinant vanishes identically on the intertwiner space",
        )
    return SimilarityResult("Inconclusive", dim=d, note="search exhausted without certificate")


def numeric_intertwiner_basis(pairs: list[tuple[Mat, Mat]], tol: float = DEFAULT_TOL) -> list[Mat]:
    import numpy as np

    n = pairs[0][0].n
    blocks = []
    for a, b in pairs:
        am, bm = _to_numpy(a), _to_numpy(b)
        sys = np.zeros((n * n, n * n), dtype=complex)
        for p in range(n):
            for q in range(n):
                row = np.zeros((n, n), dtype=complex)
                row[p, :] += am[:, q]
                row[:, q] -= bm[p, :]
                sys[p * n + q] = row.reshape(-1)
        blocks.append(sys)
    big = np.vstack(blocks)
    _, sv, vh = np.linalg.svd(big)
    cutoff = max(tol, (sv[0] if len(sv) else 1.0) * 1e-12)
    # null vectors are columns of V, i.e. conjugated rows of V^H
    null_rows = [vh[i].conj() for i in range(len(vh)) if i >= len(sv) or sv[i] <= cutoff]
    return [_from_numpy(v.reshape(n, n)) for v in null_rows]


def _numeric_similarity(pairs, seed: int, attempts: int, tol: float) -> SimilarityResult:
    import numpy as np

    basis = numeric_intertwiner_basis(pairs, tol)
    d = len(basis)
    if d == 0:
        return SimilarityResult("NoSolution", dim=0, note="numeric intertwiner space is zero")
    n = basis[0].n
    mats = [_to_numpy(k) for k in basis]
    rng = np.random.default_rng(seed)
    candidates = mats + [
        sum(c * k for c, k in zip(rng.normal(size=d), mats)) for _ in range(attempts)
    ]
    for sm in candidates:
        if np.linalg.cond(sm) < 1e8:
            s = _from_numpy(sm)
            if verify_intertwines(s, pairs, tol):
                return SimilarityResult("Solved", s=s, dim=d)
    return SimilarityResult("Inconclusive", dim=d, note="no well-conditioned intertwiner found")


def unitary_intertwiner(pairs: list[tuple[Mat, Mat]], seed: int = 0, tol: float = 1e-8) -> Mat | None:
    """Unitary U with U A_i = B_i U, when the A_i, B_i are unitary.

    Any invertible intertwiner S of unitary tuples polar-decomposes into
    S = U P with P commuting with the A_i, so U itself intertwines.
    """
    import numpy as np

    res = _numeric_similarity(pairs, seed, attempts=60, tol=tol)
    if res.status != "Solved":
        return None
    sm = _to_numpy(res.s)
    u_, _, vh = np.linalg.svd(sm)
    u = _from_numpy(u_ @ vh)
    if verify_intertwines(u, pairs, max(tol, 1e-7)):
        return u
    return None
