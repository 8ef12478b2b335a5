"""Pairwise interpolation tests for sampled maps on classical groups.

check_pair decides whether one automorphism in canonical form passes through
two input/output samples at once; check_map runs every unordered pair of a
sampled map. Over the rationals the verdicts are certificates: a witness
automorphism on the positive side, an exhaustive branch refutation on the
negative side. Interpolation branches are indexed by kind, sigma, and the
finitely many values g can take at the sample determinants: n-th roots of
determinant ratios, which must stay in the ground field because the
conjugated matrix has a nonzero entry.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .autos import (
    CONTRAGREDIENT,
    SIGMA_CONJ,
    SIGMA_ID,
    STANDARD,
    Automorphism,
    apply,
    make_automorphism,
)
from .errors import BadParameters, NotInGroup, RegimeMismatch
from .matrices import (
    C64,
    QC,
    GroupTag,
    Mat,
    agree,
    apply_sigma,
    charpoly,
    det,
    inv,
    member,
    smul,
    to_c64,
    transpose,
)
from .scalarmaps import (
    CircleTableFunc,
    GaussTableFunc,
    TableFunc,
    pair_ok_mu,
    pair_ok_rclass,
    point_ok_rclass,
)
from .scalars import (
    DEFAULT_TOL,
    GaussRational,
    complex_nth_roots,
    rational_nth_root,
    real_nth_root_candidates,
)
from .similarity import simultaneous_similarity, unitary_intertwiner


@dataclass
class BranchReport:
    kind: str
    sigma: str
    outcome: str  # "witness" | "refuted" | "inconclusive"
    detail: str
    scalars: tuple = ()
    witness: Automorphism | None = None


@dataclass
class PairVerdict:
    status: str  # "Interpolable" | "Obstructed" | "Inconclusive"
    witness: Automorphism | None
    branches: list[BranchReport] = field(default_factory=list)
    notes: list[str] = field(default_factory=list)

    def refusal_reasons(self) -> list[str]:
        return [f"{b.kind}/{b.sigma}: {b.detail}" for b in self.branches if b.outcome == "refuted"]


def _group_branches(group: GroupTag) -> tuple[list[str], list[str]]:
    kinds = [STANDARD] if group.unitary else [STANDARD, CONTRAGREDIENT]
    sigmas = [SIGMA_ID] if group.field == "R" else [SIGMA_ID, SIGMA_CONJ]
    return kinds, sigmas


def _op(a: Mat, kind: str, sigma: str) -> Mat:
    b = apply_sigma(a, sigma)
    if kind == CONTRAGREDIENT:
        b = transpose(inv(b))
    return b


def _charpolys_match(x: Mat, y: Mat) -> bool:
    if x.regime == C64:
        import numpy as np

        from .matrices import _to_numpy

        cx = np.poly(_to_numpy(x))
        cy = np.poly(_to_numpy(y))
        scale = max(1.0, max(abs(c) for c in cx))
        return all(abs(p - q) <= 1e-6 * scale for p, q in zip(cx, cy))
    return charpoly(x) == charpoly(y)


# ---------------------------------------------------------------------------
# scalar candidate extraction


def _gauss_candidates(ratio: GaussRational, n: int) -> tuple[list[GaussRational], bool]:
    """Gaussian rational solutions of c^n = ratio with an exhaustiveness flag.

    |c|^2 must be the rational n-th root of |ratio|^2, which kills most
    branches exactly; surviving numeric roots are rationalized and verified
    by exact powering.
    """
    mag = rational_nth_root(ratio.abs2(), n)
    if mag is None:
        return [], True
    found = []
    exhaustive = True
    for z in complex_nth_roots(complex(ratio), n):
        fr = Fraction(z.real).limit_denominator(10**9)
        fi = Fraction(z.imag).limit_denominator(10**9)
        cand = GaussRational(fr, fi)
        if cand**n == ratio:
            found.append(cand)
        else:
            # a Gaussian root with a denominator beyond the rationalization
            # bound would be missed, so a refusal here is not a certificate
            exhaustive = False
    return found, exhaustive


def _candidates(group: GroupTag, ratio_a, ratio_b, n: int):
    """(cands_a, cands_b, exhaustive, description) for g at the two dets."""
    if isinstance(ratio_a, Fraction):
        return (
            real_nth_root_candidates(ratio_a, n),
            real_nth_root_candidates(ratio_b, n),
            True,
            f"rational n-th roots of {ratio_a} and {ratio_b}",
        )
    if isinstance(ratio_a, GaussRational):
        ca, ea = _gauss_candidates(ratio_a, n)
        cb, eb = _gauss_candidates(ratio_b, n)
        return ca, cb, ea and eb, "Gaussian n-th roots"
    za, zb = complex(ratio_a), complex(ratio_b)
    return complex_nth_roots(za, n), complex_nth_roots(zb, n), False, "numeric n-th roots"


# ---------------------------------------------------------------------------
# scalar class screening per family


def _scalar_pair_ok(group, kind, da, ca, db, cb, n, tol) -> tuple[bool, str]:
    if group.family == "Un":
        return pair_ok_mu(
            complex(da), complex(ca), complex(db), complex(cb), n, None, max(tol, 1e-8)
        )
    if group.field == "R":
        first = kind == STANDARD
        if da == db:
            if ca != cb:
                return False, "one g cannot take two values at one determinant"
            return point_ok_rclass(Fraction(da), Fraction(ca), n, first)
        return pair_ok_rclass(
            (Fraction(da), Fraction(ca)), (Fraction(db), Fraction(cb)), n, first
        )
    return _cstar_pair_ok(da, ca, db, cb, n)


def _cstar_pair_ok(da, ca, db, cb, n) -> tuple[bool, str]:
    """Necessary conditions for a C* character pair: torsion preservation
    and magnitude transport. Gaussian rationals carry torsion {1, 2, 4}."""
    if not isinstance(da, GaussRational):
        return True, ""
    fa = (ca**n) * da
    fb = (cb**n) * db
    for d, f in ((da, fa), (db, fb)):
        o = _unit_order(d)
        if o is not None and _unit_order(f) != o:
            return False, f"f must preserve the torsion order of {d}"
        if o is None and d.abs2() == 1 and _unit_order(f) is not None:
            return False, "infinite-order circle element maps to torsion"
    from .mullattice import dep_exponent, factor

    da2, db2 = da.abs2(), db.abs2()
    if da2 != 1 and db2 != 1:
        q = dep_exponent(da2, db2)
        if q is not None:
            ea = factor(fa.abs2()).exponents()
            eb = factor(fb.abs2()).exponents()
            if {p: Fraction(e) for p, e in ea.items()} != {
                p: e * q for p, e in eb.items() if e * q != 0
            }:
                return False, "magnitude transport fails"
    return True, ""


def _unit_order(z: GaussRational) -> int | None:
    one = GaussRational(Fraction(1), Fraction(0))
    for o in (1, 2, 4):
        if z**o == one:
            return o
    return None


# ---------------------------------------------------------------------------
# the pair check


def check_pair(
    group: GroupTag,
    pair1: tuple[Mat, Mat],
    pair2: tuple[Mat, Mat],
    seed: int = 0,
    tol: float = DEFAULT_TOL,
) -> PairVerdict:
    """Is there one canonical-form automorphism through both samples?"""
    a, a_out = pair1
    b, b_out = pair2
    for x in (a, a_out, b, b_out):
        if not member(x, group, tol):
            raise NotInGroup(f"sample outside {group.family}_{group.n}({group.field})")
    if group.unitary and a.regime == QC:
        # unitary witnesses need polar factors, which live in ApproxC
        p1 = (to_c64(a), to_c64(a_out))
        p2 = (to_c64(b), to_c64(b_out))
        return check_pair(group, p1, p2, seed, max(tol, 1e-8))
    kinds, sigmas = _group_branches(group)
    verdict = PairVerdict("Obstructed", None)
    inconclusive = False
    for kind in kinds:
        for sigma in sigmas:
            br = _try_branch(group, kind, sigma, (a, a_out), (b, b_out), seed, tol)
            verdict.branches.append(br)
            if br.outcome == "witness":
                verdict.status = "Interpolable"
                verdict.witness = br.witness
                if group.field == "C" and not group.unitary:
                    verdict.notes.append("scalar class screened by necessary conditions on C*")
                return verdict
            if br.outcome == "inconclusive":
                inconclusive = True
    if inconclusive or a.regime == C64:
        verdict.status = "Inconclusive"
        if a.regime == C64 and not inconclusive:
            verdict.notes.append("numeric refusals are not certificates")
    return verdict


def _try_branch(group, kind, sigma, p1, p2, seed, tol) -> BranchReport:
    a, a_out = p1
    b, b_out = p2
    a_op = _op(a, kind, sigma)
    b_op = _op(b, kind, sigma)
    if group.family in ("SL", "SUn"):
        return _similarity_step(group, kind, sigma, [(a_op, a_out), (b_op, b_out)], None, (p1, p2), seed, tol)
    da, db = det(a), det(b)
    if group.family == "Un" and sigma == SIGMA_CONJ:
        da, db = da.conjugate(), db.conjugate()
    if group.family == "Un":
        ratio_a = det(a_out) / da
        ratio_b = det(b_out) / db
    else:
        eps = -1 if kind == CONTRAGREDIENT else 1
        ratio_a = det(a_out) / (da**eps)
        ratio_b = det(b_out) / (db**eps)
    n = group.n
    cands_a, cands_b, exhaustive, how = _candidates(group, ratio_a, ratio_b, n)
    if not cands_a or not cands_b:
        outcome = "refuted" if exhaustive else "inconclusive"
        return BranchReport(kind, sigma, outcome, f"no scalar values ({how})")
    pending_inconclusive = None
    refusals = []
    for ca in cands_a:
        for cb in cands_b:
            ok, why = _scalar_pair_ok(group, kind, da, ca, db, cb, n, tol)
            if not ok:
                refusals.append(f"g({da})={ca}, g({db})={cb}: {why}")
                continue
            pairs = [(a_op, _unscale(a_out, ca)), (b_op, _unscale(b_out, cb))]
            br = _similarity_step(group, kind, sigma, pairs, (da, ca, db, cb), (p1, p2), seed, tol)
            if br.outcome == "witness":
                return br
            if br.outcome == "inconclusive":
                pending_inconclusive = br
            else:
                refusals.append(f"scalars ({ca}, {cb}): {br.detail}")
    if pending_inconclusive is not None:
        return pending_inconclusive
    if not exhaustive:
        return BranchReport(kind, sigma, "inconclusive", "scalar candidates may be incomplete")
    return BranchReport(kind, sigma, "refuted", "; ".join(refusals) or "no admissible scalars")


def _unscale(m: Mat, c) -> Mat:
    if m.regime == C64:
        return smul(1.0 / complex(c), m)
    if isinstance(c, GaussRational):
        return smul(GaussRational(Fraction(1), Fraction(0)) / c, m)
    return smul(Fraction(1) / Fraction(c), m)


def _similarity_step(group, kind, sigma, pairs, scalars, originals, seed, tol) -> BranchReport:
    for x, y in pairs:
        if not _charpolys_match(x, y):
            return BranchReport(kind, sigma, "refuted", "characteristic polynomials differ", scalars or ())
    if group.unitary:
        u = unitary_intertwiner(pairs, seed=seed, tol=max(tol, 1e-8))
        if u is None:
            return BranchReport(kind, sigma, "inconclusive", "no unitary intertwiner found", scalars or ())
        return _witness_report(group, kind, sigma, u, scalars, originals, tol, "unitary intertwiner")
    res = simultaneous_similarity(pairs, seed=seed, tol=tol)
    if res.status == "Solved":
        return _witness_report(
            group, kind, sigma, res.s, scalars, originals, tol, f"intertwiner space dim {res.dim}"
        )
    if res.status == "NoSolution":
        return BranchReport(kind, sigma, "refuted", res.note, scalars or ())
    return BranchReport(kind, sigma, "inconclusive", res.note, scalars or ())


def _witness_report(group, kind, sigma, t, scalars, originals, tol, detail) -> BranchReport:
    g = _witness_scalar(group, scalars)
    try:
        witness = make_automorphism(group, kind, sigma, t, g, tol=max(tol, 1e-8))
    except Exception as exc:
        return BranchReport(kind, sigma, "inconclusive", f"witness rejected: {exc}", scalars or ())
    vtol = max(tol, 1e-7) if t.regime == C64 else tol
    for a, a_out in originals:
        if not agree(apply(witness, a, vtol), a_out, vtol):
            return BranchReport(
                kind, sigma, "inconclusive", "witness failed sample verification", scalars or ()
            )
    return BranchReport(kind, sigma, "witness", detail, scalars or (), witness)


def _witness_scalar(group, scalars):
    if scalars is None:
        return None
    da, ca, db, cb = scalars
    if group.family == "Un":
        pts = [(complex(da), complex(ca))]
        if abs(complex(da) - complex(db)) > 1e-12:
            pts.append((complex(db), complex(cb)))
        return CircleTableFunc(tuple(pts))
    if isinstance(da, Fraction):
        table = {Fraction(da): Fraction(ca), Fraction(db): Fraction(cb)}
        return TableFunc(tuple(sorted(table.items())))
    pts = [(da, ca)]
    if db != da:
        pts.append((db, cb))
    return GaussTableFunc(tuple(pts))


# ---------------------------------------------------------------------------
# map-level checks


@dataclass
class SampleMap:
    group: GroupTag
    samples: tuple[tuple[Mat, Mat], ...]

    def __post_init__(self):
        for a, out in self.samples:
            if a.n != self.group.n or out.n != self.group.n:
                raise BadParameters("sample size does not match the group")
            if a.regime != out.regime:
                raise RegimeMismatch("sample input and output regimes differ")


@dataclass
class MapReport:
    status: str  # "LocallyConsistent" | "Obstructed" | "Inconclusive"
    pair_verdicts: list  # ((i, j), PairVerdict)
    first_obstruction: tuple | None = None

    def counts(self) -> dict:
        out = {"Interpolable": 0, "Obstructed": 0, "Inconclusive": 0}
        for _, v in self.pair_verdicts:
            out[v.status] += 1
        return out


def check_map(sample_map: SampleMap, seed: int = 0, tol: float = DEFAULT_TOL) -> MapReport:
    """Run check_pair over every unordered pair of samples (a single sample
    is paired with itself)."""
    samples = sample_map.samples
    group = sample_map.group
    if not samples:
        raise BadParameters("an empty sample map has nothing to check")
    m = len(samples)
    idx_pairs = [(0, 0)] if m == 1 else [(i, j) for i in range(m) for j in range(i + 1, m)]
    verdicts = []
    status = "LocallyConsistent"
    first_obstruction = None
    for i, j in idx_pairs:
        sub_seed = seed * 9973 + i * m + j
        v = check_pair(group, samples[i], samples[j], seed=sub_seed, tol=tol)
        verdicts.append(((i, j), v))
        if v.status == "Obstructed" and first_obstruction is None:
            first_obstruction = (i, j)
            status = "Obstructed"
        elif v.status == "Inconclusive" and status == "LocallyConsistent":
            status = "Inconclusive"
    return MapReport(status, verdicts, first_obstruction)


def samples_from_automorphism(auto: Automorphism, mats, tol: float = DEFAULT_TOL) -> SampleMap:
    pairs = tuple((a, apply(auto, a, tol)) for a in mats)
    return SampleMap(auto.group, pairs)
