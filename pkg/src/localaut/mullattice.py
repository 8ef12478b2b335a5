"""Finitely generated multiplicative lattices in R* and the circle group.

Hidden scalar characters live on all of R* or S^1; everything computable here
happens on finitely generated subgroups ("lattices") where membership,
dependence and homomorphism evaluation reduce to exact integer linear algebra
on prime exponent vectors (R*) or on generator exponents (circle).
"""
from __future__ import annotations

import cmath
from dataclasses import dataclass
from fractions import Fraction

from .errors import (
    BadParameters,
    DomainNotFactorable,
    TooFewGenerators,
    ZeroInput,
)
from .exactlinalg import rank, solve

_FACTOR_LIMIT = 10**40


def factor(q: Fraction) -> "SignedFactored":
    """Factor a nonzero rational into sign and prime exponents."""
    q = Fraction(q)
    if q == 0:
        raise ZeroInput("0 is not in R*")
    if abs(q.numerator) > _FACTOR_LIMIT or q.denominator > _FACTOR_LIMIT:
        raise DomainNotFactorable(f"refusing to factor rationals beyond {_FACTOR_LIMIT}")
    from sympy import factorint

    exps: dict[int, int] = {}
    for p, e in factorint(abs(q.numerator)).items():
        exps[int(p)] = exps.get(int(p), 0) + int(e)
    for p, e in factorint(q.denominator).items():
        exps[int(p)] = exps.get(int(p), 0) - int(e)
    sign = 1 if q > 0 else -1
    return SignedFactored(sign, tuple(sorted((p, e) for p, e in exps.items() if e != 0)))


@dataclass(frozen=True)
class SignedFactored:
    """sign * prod p**e, the exact exponent-vector form of a nonzero rational."""

    sign: int
    factors: tuple[tuple[int, int], ...]

    def __post_init__(self):
        if self.sign not in (+1, -1):
            raise BadParameters("sign must be +1 or -1")
        primes = [p for p, _ in self.factors]
        if primes != sorted(set(primes)):
            raise BadParameters("factors must be sorted with distinct primes")
        if any(e == 0 for _, e in self.factors):
            raise BadParameters("zero exponents must be dropped")

    def value(self) -> Fraction:
        v = Fraction(self.sign)
        for p, e in self.factors:
            v *= Fraction(p) ** e
        return v

    def exponents(self) -> dict[int, int]:
        return dict(self.factors)

    def is_positive(self) -> bool:
        return self.sign == 1

    def is_one_in_magnitude(self) -> bool:
        return not self.factors


def dep_exponent(a: Fraction, b: Fraction) -> Fraction | None:
    """q with a = b**q for positive rationals, or None when independent.

    The relation "a ~ b iff a = b**q for some rational q != 0" partitions the
    positive rationals into classes; this computes the witness exponent.
    """
    if a <= 0 or b <= 0:
        raise BadParameters("dep_exponent is defined on positive rationals")
    ea = factor(a).exponents()
    eb = factor(b).exponents()
    if not ea and not eb:
        return Fraction(1)  # both are 1
    if not ea or not eb:
        return None  # exactly one is 1: no q in Q* relates them
    if set(ea) != set(eb):
        return None
    items = sorted(ea)
    q = Fraction(ea[items[0]], eb[items[0]])
    for p in items[1:]:
        if Fraction(ea[p], eb[p]) != q:
            return None
    return q


@dataclass(frozen=True)
class LatticeVector:
    """Exponents of x over a lattice's generators, with the sign split off."""

    sign: int
    exps: tuple[Fraction, ...]

    def is_integral(self) -> bool:
        return all(e.denominator == 1 for e in self.exps)


@dataclass(frozen=True)
class MulLattice:
    """Finitely generated subgroup of R*: {+-1} x <g_1, ..., g_m>, g_i > 0.

    Generators must have Q-linearly independent prime exponent vectors, which
    is certified exactly at construction time.
    """

    generators: tuple[SignedFactored, ...]

    def __post_init__(self):
        if not self.generators:
            raise TooFewGenerators("a lattice needs at least one generator")
        if any(not g.is_positive() for g in self.generators):
            raise BadParameters("lattice generators must be positive; the sign -1 is implicit")
        if any(g.is_one_in_magnitude() for g in self.generators):
            raise BadParameters("1 generates nothing")
        cols = _exponent_columns(self.generators)
        if rank(_transpose(cols)) != len(self.generators):
            raise BadParameters("generator exponent vectors are Q-linearly dependent")

    @property
    def rank(self) -> int:
        return len(self.generators)

    def generator_values(self) -> list[Fraction]:
        return [g.value() for g in self.generators]


def make_lattice(*gens) -> MulLattice:
    """Lattice from positive rationals (Fractions or ints)."""
    return MulLattice(tuple(factor(Fraction(g)) for g in gens))


def _exponent_columns(gens) -> list[list[Fraction]]:
    primes = sorted({p for g in gens for p, _ in g.factors})
    cols = []
    for g in gens:
        e = g.exponents()
        cols.append([Fraction(e.get(p, 0)) for p in primes])
    return cols


def _transpose(cols: list[list[Fraction]]) -> list[list[Fraction]]:
    if not cols:
        return []
    return [[col[i] for col in cols] for i in range(len(cols[0]))]


def lattice_decompose(x: SignedFactored | Fraction, lat: MulLattice) -> LatticeVector | None:
    """Solve x = sign * prod gen_i**v_i with rational v_i, or None (NotInLattice).

    Rational exponents cover the divisible hull, which is what class transport
    (lambda = mu**q) needs; integral vectors mean genuine subgroup membership.
    """
    sf = x if isinstance(x, SignedFactored) else factor(Fraction(x))
    primes = sorted(
        {p for g in lat.generators for p, _ in g.factors} | {p for p, _ in sf.factors}
    )
    a = [
        [Fraction(g.exponents().get(p, 0)) for g in lat.generators]
        for p in primes
    ]
    b = [Fraction(sf.exponents().get(p, 0)) for p in primes]
    v = solve(a, b)
    if v is None:
        return None
    return LatticeVector(sf.sign, tuple(v))


def in_subgroup(x: Fraction, lat: MulLattice) -> bool:
    vec = lattice_decompose(x, lat)
    return vec is not None and vec.is_integral()


@dataclass(frozen=True)
class LatticeHom:
    """Multiplicative map on a MulLattice: gen_i -> image_i, -1 -> sign_image."""

    lattice: MulLattice
    images: tuple[Fraction, ...]
    sign_image: int = 1

    def __post_init__(self):
        if len(self.images) != len(self.lattice.generators):
            raise BadParameters("one image per generator required")
        if any(v == 0 for v in self.images):
            raise ZeroInput("images must be nonzero")
        if self.sign_image not in (+1, -1):
            raise BadParameters("sign image must be +1 or -1")

    def evaluate(self, x: Fraction) -> Fraction | None:
        """Exact value at a lattice element; None when x is outside the subgroup."""
        vec = lattice_decompose(x, self.lattice)
        if vec is None or not vec.is_integral():
            return None
        out = Fraction(1) if vec.sign == 1 else Fraction(self.sign_image)
        for img, e in zip(self.images, vec.exps):
            out *= img ** int(e)
        return out

    def table_on(self, points) -> dict[Fraction, Fraction]:
        out = {}
        for x in points:
            v = self.evaluate(Fraction(x))
            if v is not None:
                out[Fraction(x)] = v
        return out


def hom_on_lattice(lat: MulLattice, images, sign_image: int = 1) -> LatticeHom:
    return LatticeHom(lat, tuple(Fraction(v) for v in images), sign_image)


# ---------------------------------------------------------------------------
# circle lattices


@dataclass(frozen=True)
class AngleGen:
    """Unit-circle generator: exact rational angle (turns) or a symbolic one.

    `angle` is the fraction of a full turn for torsion generators and None for
    symbolic irrational angles; `witness` is the numeric value used in the
    ApproxC regime.
    """

    label: str
    angle: Fraction | None
    witness: complex

    def __post_init__(self):
        if abs(abs(self.witness) - 1.0) > 1e-9:
            raise BadParameters(f"witness for {self.label!r} is off the unit circle")
        if self.angle is not None:
            expected = cmath.exp(2j * cmath.pi * float(self.angle))
            if abs(expected - self.witness) > 1e-9:
                raise BadParameters(f"witness for {self.label!r} disagrees with its angle")

    def order(self) -> int | None:
        """Torsion order, or None for symbolic (declared torsion-free) generators."""
        if self.angle is None:
            return None
        return self.angle.denominator


def angle_gen(label: str, angle: Fraction | None = None, witness: complex | None = None) -> AngleGen:
    if angle is not None:
        angle = Fraction(angle) % 1
        witness = cmath.exp(2j * cmath.pi * float(angle))
    elif witness is None:
        raise BadParameters("symbolic generators need a numeric witness")
    return AngleGen(label, angle, witness)


@dataclass(frozen=True)
class CircleLattice:
    """Finitely generated subgroup of S^1 with declared independent generators."""

    generators: tuple[AngleGen, ...]

    def __post_init__(self):
        if not self.generators:
            raise TooFewGenerators("a circle lattice needs at least one generator")
        labels = [g.label for g in self.generators]
        if len(set(labels)) != len(labels):
            raise BadParameters("generator labels must be distinct")

    @property
    def rank(self) -> int:
        return len(self.generators)

    def value(self, exps) -> complex:
        out = complex(1.0)
        for g, e in zip(self.generators, exps):
            out *= g.witness ** int(e)
        return out

    def angle_exact(self, exps) -> Fraction | None:
        """Total angle in turns when every generator is rational-angle."""
        total = Fraction(0)
        for g, e in zip(self.generators, exps):
            if g.angle is None:
                return None
            total += g.angle * int(e)
        return total % 1

    def match(self, z: complex, bound: int = 6, tol: float = 1e-9) -> tuple[int, ...] | None:
        """Bounded search for exponents with value ~ z, used to read dets back."""
        m = len(self.generators)
        if bound ** m > 200000:
            bound = max(1, int(200000 ** (1.0 / m)) // 2)
        exps = [0] * m

        def rec(i: int):
            if i == m:
                if abs(self.value(exps) - z) <= tol:
                    return tuple(exps)
                return None
            for e in range(-bound, bound + 1):
                exps[i] = e
                hit = rec(i + 1)
                if hit is not None:
                    return hit
            exps[i] = 0
            return None

        return rec(0)


@dataclass(frozen=True)
class CircleHom:
    """Endomorphism data on a circle lattice: gen_j -> prod gen_i**M[j][i]."""

    lattice: CircleLattice
    images: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        m = self.lattice.rank
        if len(self.images) != m or any(len(row) != m for row in self.images):
            raise BadParameters("images must be an m x m integer exponent matrix")
        for j, g in enumerate(self.lattice.generators):
            if g.order() is not None:
                row = self.images[j]
                onto_self = all(row[i] == 0 for i in range(m) if i != j)
                if not (onto_self and abs(row[j]) == 1):
                    raise BadParameters(
                        f"torsion generator {g.label!r} must map to itself with exponent +-1"
                    )

    def apply_exponents(self, exps) -> tuple[int, ...]:
        m = self.lattice.rank
        out = [0] * m
        for j, e in enumerate(exps):
            for i in range(m):
                out[i] += int(e) * self.images[j][i]
        return tuple(out)

    def evaluate(self, exps) -> complex:
        return self.lattice.value(self.apply_exponents(exps))

    def exponent_matrix(self) -> list[list[int]]:
        return [list(r) for r in self.images]
