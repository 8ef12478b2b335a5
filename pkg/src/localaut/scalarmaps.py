"""Scalar character classes and their local (pairwise) closures.

A first-kind GL_n(R) automorphism carries a multiplicative g with
f(t) = g(t)^n t an automorphism of R* (class M1r); the contragredient kind
uses f(t) = g(t)^n / t (class M2r); U_n uses the circle analog (class Mu).
Local automorphisms only pin g down pairwise, which is decided here exactly
on factored rationals: class transport for dependent arguments, class
injectivity for independent ones, and the sign/parity rules.
"""
from __future__ import annotations

import cmath
from dataclasses import dataclass
from fractions import Fraction
from math import gcd

from .errors import AmbientMismatch, BadParameters, ZeroInput
from .mullattice import (
    CircleHom,
    CircleLattice,
    LatticeHom,
    MulLattice,
    dep_exponent,
    factor,
)
from .scalars import rational_pow

RSTAR = "Rstar"
CIRCLE = "Circle"
CSTAR = "Cstar"


@dataclass(frozen=True)
class PowerFunc:
    """g(t) = |t|^c on positives with g(-t) = +-g(t); on the circle, z -> z^c."""

    c: Fraction
    neg: str = "same"  # "same" | "flip"
    ambient: str = RSTAR

    def __post_init__(self):
        if self.neg not in ("same", "flip"):
            raise BadParameters("neg must be 'same' or 'flip'")
        if self.ambient == CIRCLE and self.c.denominator != 1:
            raise BadParameters("circle powers need integer exponents")
        if self.ambient not in (RSTAR, CIRCLE):
            raise AmbientMismatch("PowerFunc lives on Rstar or Circle")


@dataclass(frozen=True)
class PowerConjFunc:
    """g(z) = z^k conj(z)^m on C*.

    Integer exponents evaluate exactly on Gaussian rationals. The k = m
    diagonal, g(z) = |z|^(2k), also admits rational k (it is the only part
    of the family closed under composition and inversion) and evaluates
    through |z|^2, which stays rational.
    """

    k: Fraction | int
    m: Fraction | int
    ambient: str = CSTAR

    def __post_init__(self):
        kf, mf = Fraction(self.k), Fraction(self.m)
        if (kf.denominator != 1 or mf.denominator != 1) and kf != mf:
            raise BadParameters("fractional exponents need k = m")


@dataclass(frozen=True)
class LatticeFunc:
    hom: LatticeHom
    ambient: str = RSTAR


@dataclass(frozen=True)
class CircleHomFunc:
    hom: CircleHom
    ambient: str = CIRCLE


@dataclass(frozen=True)
class TableFunc:
    """Finite exact table on R*: the witness-grade partial scalar map."""

    points: tuple[tuple[Fraction, Fraction], ...]
    ambient: str = RSTAR

    def lookup(self, x: Fraction) -> Fraction | None:
        for a, v in self.points:
            if a == x:
                return v
        return None


@dataclass(frozen=True)
class CircleTableFunc:
    """Finite numeric table on the circle (ApproxC witnesses)."""

    points: tuple[tuple[complex, complex], ...]
    ambient: str = CIRCLE

    def lookup(self, z: complex, tol: float = 1e-8) -> complex | None:
        for a, v in self.points:
            if abs(a - z) <= tol:
                return v
        return None


@dataclass(frozen=True)
class GaussTableFunc:
    """Finite exact table on C* (Gaussian rational points)."""

    points: tuple
    ambient: str = CSTAR

    def lookup(self, z):
        for a, v in self.points:
            if a == z:
                return v
        return None


MulFunc = (
    PowerFunc
    | PowerConjFunc
    | LatticeFunc
    | CircleHomFunc
    | TableFunc
    | CircleTableFunc
    | GaussTableFunc
)


def trivial_power(ambient: str = RSTAR) -> PowerFunc:
    return PowerFunc(Fraction(0), "same", ambient)


def evaluate(g, x):
    """Value of g at x; None when x is outside g's exact domain."""
    if isinstance(g, PowerFunc):
        if g.ambient == CIRCLE:
            return x ** int(g.c)
        lam = Fraction(x)
        if lam == 0:
            raise ZeroInput("0 is outside R*")
        mag = rational_pow(abs(lam), g.c)
        if mag is None:
            return None
        if lam < 0 and g.neg == "flip":
            return -mag
        return mag
    if isinstance(g, PowerConjFunc):
        from .scalars import GaussRational

        kf, mf = Fraction(g.k), Fraction(g.m)
        if kf.denominator != 1:
            # the |z|^(2k) diagonal with rational k
            if isinstance(x, GaussRational):
                return rational_pow(x.abs2(), kf)
            return abs(complex(x)) ** (2 * float(kf))
        k, m = int(kf), int(mf)
        if isinstance(x, GaussRational):
            return (x**k) * (x.conjugate() ** m)
        z = complex(x)
        return (z**k) * (z.conjugate() ** m)
    if isinstance(g, LatticeFunc):
        return g.hom.evaluate(Fraction(x))
    if isinstance(g, TableFunc):
        return g.lookup(Fraction(x))
    if isinstance(g, GaussTableFunc):
        return g.lookup(x)
    if isinstance(g, CircleTableFunc):
        return g.lookup(complex(x))
    if isinstance(g, CircleHomFunc):
        raise BadParameters("CircleHomFunc evaluates on exponent vectors; use evaluate_exponents")
    raise BadParameters(f"not a MulFunc: {type(g).__name__}")


@dataclass
class ClassCheck:
    ok: bool
    reason: str = ""
    on_lattice: bool = False
    extension_assumed: bool = False
    counterexample: tuple | None = None


# ---------------------------------------------------------------------------
# single-point and pairwise membership on R*


def _h_value(lam: Fraction, v: Fraction, n: int, first_kind: bool) -> Fraction:
    return v**n * lam if first_kind else v**n / lam


def point_ok_rclass(lam: Fraction, v: Fraction, n: int, first_kind: bool) -> tuple[bool, str]:
    """Can some g in M1r (or M2r) take the value v at lam?"""
    if lam == 0 or v == 0:
        return False, "0 is outside R*"
    if lam > 0 and v <= 0:
        return False, f"g({lam}) must be positive"
    if lam < 0 and n % 2 == 1 and v <= 0:
        return False, f"n odd forces g({lam}) = g({-lam}) > 0"
    h = _h_value(lam, v, n, first_kind)
    if abs(lam) == 1:
        if abs(h) != 1:
            return False, f"|lam| = 1 but |f(lam)| = {abs(h)} != 1"
    else:
        if abs(h) == 1:
            return False, f"induced automorphism would send {lam} to {h}"
    return True, ""


def pair_ok_rclass(
    p: tuple[Fraction, Fraction], q: tuple[Fraction, Fraction], n: int, first_kind: bool
) -> tuple[bool, str]:
    """Pairwise interpolability by a single class member through both points.

    Necessary and sufficient on exact rationals: the induced automorphism
    values h = g^n * lam^(+-1) must respect the multiplicative dependence
    classes of |lam| (exact exponent transport when dependent, distinct
    image classes when independent), plus the sign/parity rules.
    """
    (lam, v), (mu, w) = p, q
    ok, why = point_ok_rclass(lam, v, n, first_kind)
    if not ok:
        return False, why
    ok, why = point_ok_rclass(mu, w, n, first_kind)
    if not ok:
        return False, why
    if n % 2 == 0 and lam < 0 and mu < 0 and (v > 0) != (w > 0):
        return False, "a single sign twist must serve all negative arguments"
    ha = abs(_h_value(lam, v, n, first_kind))
    hb = abs(_h_value(mu, w, n, first_kind))
    a, b = abs(lam), abs(mu)
    if a == 1 or b == 1:
        return True, ""  # the +-1 classes are pinned by the point conditions
    qexp = dep_exponent(a, b)
    if qexp is not None:
        ea = factor(ha).exponents()
        eb = factor(hb).exponents()
        scaled = {pr: e * qexp for pr, e in eb.items()}
        scaled = {pr: e for pr, e in scaled.items() if e != 0}
        if {pr: Fraction(e) for pr, e in ea.items()} != scaled:
            return False, f"transport fails: f({lam}) should be f({mu})^{qexp}"
        return True, ""
    if dep_exponent(ha, hb) is not None:
        return False, "independent arguments map into one class"
    return True, ""


# ---------------------------------------------------------------------------
# class membership checks


def check_M1r(g, n: int) -> ClassCheck:
    return _check_rclass(g, n, first_kind=True)


def check_M2r(g, n: int) -> ClassCheck:
    return _check_rclass(g, n, first_kind=False)


def _check_rclass(g, n: int, first_kind: bool) -> ClassCheck:
    if n < 3:
        raise BadParameters("n >= 3 is required")
    name = "M1r" if first_kind else "M2r"
    if isinstance(g, (CircleHomFunc, CircleTableFunc)) or getattr(g, "ambient", None) == CIRCLE:
        raise AmbientMismatch(f"{name} lives on R*")
    if isinstance(g, PowerConjFunc):
        raise AmbientMismatch(f"{name} lives on R*, not C*")
    if isinstance(g, PowerFunc):
        exponent = n * g.c + (1 if first_kind else -1)
        if exponent == 0:
            return ClassCheck(False, f"f(t) = t^{exponent} is not a bijection of (0, inf)")
        if g.neg == "flip" and n % 2 == 1:
            return ClassCheck(False, "sign flip on negatives needs even n")
        return ClassCheck(True, f"f(t) = t^{exponent} with valid parity")
    if isinstance(g, LatticeFunc):
        hom = g.hom
        if any(v <= 0 for v in hom.images):
            return ClassCheck(False, "a multiplicative g on R* is positive on positives")
        if hom.sign_image == -1 and n % 2 == 1:
            return ClassCheck(False, "sign flip on negatives needs even n")
        fvals = []
        for gen, img in zip(hom.lattice.generators, hom.images):
            base = gen.value()
            fvals.append(img**n * base if first_kind else img**n / base)
        if not _mul_independent(fvals):
            return ClassCheck(
                False,
                "f images of the generators are multiplicatively dependent",
                on_lattice=True,
            )
        return ClassCheck(
            True,
            "f injective on the lattice; global extension by a Hamel-basis argument",
            on_lattice=True,
            extension_assumed=True,
        )
    if isinstance(g, TableFunc):
        pts = list(g.points)
        for lam, v in pts:
            ok, why = point_ok_rclass(lam, v, n, first_kind)
            if not ok:
                return ClassCheck(False, why, counterexample=(lam,))
        for i in range(len(pts)):
            for j in range(i + 1, len(pts)):
                ok, why = pair_ok_rclass(pts[i], pts[j], n, first_kind)
                if not ok:
                    return ClassCheck(False, why, counterexample=(pts[i][0], pts[j][0]))
        return ClassCheck(True, f"all pairs admit a common {name} member", on_lattice=True)
    raise BadParameters(f"unsupported MulFunc for {name}: {type(g).__name__}")


def _mul_independent(vals: list[Fraction]) -> bool:
    from .exactlinalg import rank

    primes = sorted({p for v in vals for p in factor(abs(v)).exponents()})
    if len(primes) < len(vals):
        return False
    cols = [[Fraction(factor(abs(v)).exponents().get(p, 0)) for v in vals] for p in primes]
    return rank(cols) == len(vals)


# ---------------------------------------------------------------------------
# property (P), (LAR) and the local closure on domains


@dataclass(frozen=True)
class ClassMap:
    """Finite positive data (lam, k(lam)) standing for a map of ~-classes."""

    points: tuple[tuple[Fraction, Fraction], ...]

    def __post_init__(self):
        seen = {}
        for lam, v in self.points:
            if lam in seen and seen[lam] != v:
                raise BadParameters(f"contradictory values at {lam}")
            seen[lam] = v


def check_P(k: ClassMap) -> ClassCheck:
    """k(1) = 1, exact exponent transport inside classes, distinct classes
    land in distinct classes."""
    pts = list(k.points)
    for lam, v in pts:
        if lam <= 0 or v <= 0:
            return ClassCheck(False, "property (P) data lives on (0, inf)", counterexample=(lam,))
        if (lam == 1) != (v == 1):
            return ClassCheck(False, "the class of 1 is fixed and nothing else maps to it", counterexample=(lam,))
    for i in range(len(pts)):
        for j in range(i + 1, len(pts)):
            (lam, v), (mu, w) = pts[i], pts[j]
            if lam == 1 or mu == 1:
                continue
            qexp = dep_exponent(lam, mu)
            if qexp is not None:
                ea = factor(v).exponents()
                eb = factor(w).exponents()
                if {p: Fraction(e) for p, e in ea.items()} != {
                    p: e * qexp for p, e in eb.items() if e * qexp != 0
                }:
                    return ClassCheck(
                        False,
                        f"transport fails: k({lam}) != k({mu})^{qexp}",
                        counterexample=(lam, mu),
                    )
            else:
                if dep_exponent(v, w) is not None:
                    return ClassCheck(
                        False,
                        f"{lam} and {mu} are independent but their images are not",
                        counterexample=(lam, mu),
                    )
    return ClassCheck(True, "class map has property (P) on its support")


def check_LAR(h) -> ClassCheck:
    """(LAR): h keeps (0, inf) inside (0, inf), the restriction has (P), and
    h(-t) = -h(t). Accepts a MulFunc or a finite exact table {t: h(t)}."""
    if isinstance(h, dict):
        items = sorted(h.items())
        for x, v in items:
            if x == 0 or v == 0:
                return ClassCheck(False, "0 is outside R*", counterexample=(x,))
            if (x > 0) != (v > 0):
                return ClassCheck(False, f"sign not preserved at {x}", counterexample=(x,))
        if Fraction(1) in h and h[Fraction(1)] != 1:
            return ClassCheck(False, "h(1) must be 1", counterexample=(1,))
        if Fraction(-1) in h and h[Fraction(-1)] != -1:
            return ClassCheck(False, "h(-1) must be -1", counterexample=(-1,))
        for x, v in items:
            if -x in h and h[-x] != -v:
                return ClassCheck(False, f"h is not odd at {x}", counterexample=(x, -x))
        mag: dict[Fraction, Fraction] = {}
        for x, v in items:
            a, m = abs(x), abs(v)
            if a in mag and mag[a] != m:
                return ClassCheck(False, f"|h| ill-defined at |{x}|", counterexample=(x,))
            mag[a] = m
        return check_P(ClassMap(tuple(sorted(mag.items()))))
    if isinstance(h, PowerFunc):
        if h.ambient != RSTAR:
            raise AmbientMismatch("(LAR) lives on R*")
        if h.c == 0:
            return ClassCheck(False, "t -> 1 collapses every class")
        if h.neg != "flip":
            return ClassCheck(False, "h(-t) = -h(t) fails without the sign flip")
        return ClassCheck(True, f"t -> t^{h.c} is odd with (P)")
    if isinstance(h, LatticeFunc):
        hom = h.hom
        if any(v <= 0 for v in hom.images):
            return ClassCheck(False, "h must keep (0, inf) inside (0, inf)")
        if hom.sign_image != -1:
            return ClassCheck(False, "h(-t) = -h(t) forces the sign image -1")
        if not _mul_independent(list(hom.images)):
            return ClassCheck(False, "(P) fails: generator images are dependent", on_lattice=True)
        return ClassCheck(True, "(LAR) holds on the lattice", on_lattice=True, extension_assumed=True)
    raise BadParameters(f"unsupported (LAR) input: {type(h).__name__}")


@dataclass
class DomainReport:
    ok: bool
    n: int
    first_kind: bool
    values: dict
    pair_verdicts: list  # (lam, mu, ok, reason)
    failures: list

    def summary(self) -> str:
        status = "passes" if self.ok else "fails"
        cls = "LM1r" if self.first_kind else "LM2r"
        return f"{cls} pairwise check {status} on {len(self.values)} points"


def check_LM1r_on_domain(f, n: int, domain) -> DomainReport:
    return _check_lm_domain(f, n, domain, first_kind=True)


def check_LM2r_on_domain(f, n: int, domain) -> DomainReport:
    return _check_lm_domain(f, n, domain, first_kind=False)


def _check_lm_domain(f, n: int, domain, first_kind: bool) -> DomainReport:
    values: dict[Fraction, Fraction] = {}
    for x in domain:
        lam = Fraction(x)
        v = f.get(lam) if isinstance(f, dict) else evaluate(f, lam)
        if v is None:
            raise BadParameters(f"f is undefined at {lam}")
        values[lam] = Fraction(v)
    pts = sorted(values.items())
    verdicts = []
    failures = []
    for i in range(len(pts)):
        ok, why = point_ok_rclass(pts[i][0], pts[i][1], n, first_kind)
        if not ok:
            failures.append((pts[i][0], why))
    for i in range(len(pts)):
        for j in range(i + 1, len(pts)):
            ok, why = pair_ok_rclass(pts[i], pts[j], n, first_kind)
            verdicts.append((pts[i][0], pts[j][0], ok, why))
            if not ok:
                failures.append(((pts[i][0], pts[j][0]), why))
    return DomainReport(not failures, n, first_kind, values, verdicts, failures)


# ---------------------------------------------------------------------------
# the circle class Mu


def check_Mu(g, n: int) -> ClassCheck:
    """Is f(z) = g(z)^n z an automorphism of the circle (on the given data)?"""
    if n < 3:
        raise BadParameters("n >= 3 is required")
    if isinstance(g, PowerFunc) and g.ambient == CIRCLE:
        if Fraction(g.c).denominator != 1:
            raise BadParameters("only integer powers are single-valued on the circle")
        k = int(g.c)
        e = n * k + 1
        if abs(e) == 1:
            return ClassCheck(True, f"f(z) = z^{e} is an automorphism")
        return ClassCheck(False, f"f(z) = z^{e} is not injective on the circle")
    if isinstance(g, CircleHomFunc):
        hom = g.hom
        lat = hom.lattice
        m = lat.rank
        free_idx = [i for i, gen in enumerate(lat.generators) if gen.order() is None]
        tors_idx = [i for i in range(m) if i not in free_idx]
        for i in tors_idx:
            e = hom.images[i][i]
            order = lat.generators[i].order()
            if gcd(n * e + 1, order) != 1:
                return ClassCheck(
                    False,
                    f"f has exponent {n * e + 1} on a torsion generator of order {order}",
                    on_lattice=True,
                )
        if free_idx:
            block = [
                [n * hom.images[j][i] + (1 if i == j else 0) for j in free_idx]
                for i in free_idx
            ]
            if _int_det(block) == 0:
                return ClassCheck(False, "f exponent matrix is singular on the free part", on_lattice=True)
        return ClassCheck(
            True,
            "f injective on the lattice",
            on_lattice=True,
            extension_assumed=not tors_idx,
        )
    if isinstance(g, (PowerConjFunc, LatticeFunc, TableFunc)):
        raise AmbientMismatch("Mu lives on the circle")
    raise BadParameters(f"unsupported MulFunc for Mu: {type(g).__name__}")


def _int_det(m: list[list[int]]) -> int:
    size = len(m)
    if size == 0:
        return 1
    rows = [[Fraction(x) for x in r] for r in m]
    from .exactlinalg import rref

    total = Fraction(1)
    mm = [r[:] for r in rows]
    sign = 1
    for c in range(size):
        piv = next((i for i in range(c, size) if mm[i][c] != 0), None)
        if piv is None:
            return 0
        if piv != c:
            mm[c], mm[piv] = mm[piv], mm[c]
            sign = -sign
        total *= mm[c][c]
        for i in range(c + 1, size):
            f = mm[i][c] / mm[c][c]
            mm[i] = [a - f * b for a, b in zip(mm[i], mm[c])]
    return int(total * sign)


def pair_ok_mu(
    d1: complex,
    c1: complex,
    d2: complex,
    c2: complex,
    n: int,
    lattice: CircleLattice | None = None,
    tol: float = 1e-8,
) -> tuple[bool, str]:
    """Evidence-grade circle pair check for g in Mu through two det/value pairs.

    Certifiable necessary conditions only: unit moduli, h-transport along
    integer dependence relations the declared lattice exposes, and torsion
    order preservation for rational-angle determinants.
    """
    for z, c in ((d1, c1), (d2, c2)):
        if abs(abs(z) - 1) > tol or abs(abs(c) - 1) > tol:
            return False, "circle data must stay on the circle"
    h1 = c1**n * d1
    h2 = c2**n * d2
    if abs(d1 - 1) <= tol and abs(h1 - 1) > tol:
        return False, "f(1) must be 1"
    if abs(d2 - 1) <= tol and abs(h2 - 1) > tol:
        return False, "f(1) must be 1"
    if lattice is None:
        return True, "no lattice declared; nothing further is certifiable"
    e1 = lattice.match(d1, tol=tol)
    e2 = lattice.match(d2, tol=tol)
    if e1 is None or e2 is None:
        return True, "determinants outside the declared lattice; nothing further is certifiable"
    rel = _integer_relation(e1, e2)
    if rel is not None:
        k1, k2 = rel
        if abs(h1**k1 - h2**k2) > 10 * tol:
            return False, f"transport fails along {k1} * exps(d1) = {k2} * exps(d2)"
    ang1 = lattice.angle_exact(e1)
    if ang1 is not None and ang1 != 0:
        order = ang1.denominator
        if abs(h1**order - 1) > 10 * tol:
            return False, "torsion order is not preserved"
    ang2 = lattice.angle_exact(e2)
    if ang2 is not None and ang2 != 0:
        order = ang2.denominator
        if abs(h2**order - 1) > 10 * tol:
            return False, "torsion order is not preserved"
    return True, ""


def _integer_relation(e1, e2) -> tuple[int, int] | None:
    """Smallest (k1, k2) with k1 * e1 = k2 * e2, if a relation exists."""
    if all(v == 0 for v in e1) and all(v == 0 for v in e2):
        return (1, 1)
    if all(v == 0 for v in e1) or all(v == 0 for v in e2):
        return None
    num = den = None
    for a, b in zip(e1, e2):
        if a == 0 and b == 0:
            continue
        if a == 0 or b == 0:
            return None
        r = Fraction(a, b)
        if num is None:
            num, den = r.numerator, r.denominator
        elif Fraction(num, den) != r:
            return None
    # e1 / e2 = num / den componentwise: den * e1 = num * e2
    return (den, num)
