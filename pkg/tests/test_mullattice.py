"""Multiplicative lattices: factorization, decomposition and hom evaluation."""
from fractions import Fraction

import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

from localaut.errors import BadParameters, TooFewGenerators
from localaut.mullattice import (
    dep_exponent,
    factor,
    hom_on_lattice,
    in_subgroup,
    lattice_decompose,
    make_lattice,
)

nonzero = st.fractions(min_value=-60, max_value=60, max_denominator=12).filter(lambda q: q != 0)


@settings(max_examples=50, deadline=None)
@given(nonzero)
def test_factor_reconstructs(q):
    sf = factor(q)
    assert sf.value() == q
    # exponents agree with sympy's factorization of |q|
    want = dict(sympy.factorint(abs(q).numerator))
    for p, e in sympy.factorint(abs(q).denominator).items():
        want[p] = want.get(p, 0) - e
    assert sf.exponents() == {p: e for p, e in want.items() if e}


def test_dep_exponent_cases():
    assert dep_exponent(Fraction(8), Fraction(2)) == 3
    assert dep_exponent(Fraction(4), Fraction(8)) == Fraction(2, 3)
    assert dep_exponent(Fraction(1, 9), Fraction(3)) == -2
    assert dep_exponent(Fraction(6), Fraction(2)) is None
    assert dep_exponent(Fraction(12), Fraction(18)) is None


def test_lattice_rejects_dependent_generators():
    with pytest.raises(BadParameters):
        make_lattice(2, 4)
    with pytest.raises(BadParameters):
        make_lattice(2, 3, 6)
    with pytest.raises(BadParameters):
        make_lattice(1)
    with pytest.raises(TooFewGenerators):
        make_lattice()


def test_decompose_and_membership():
    lat = make_lattice(2, 3)
    v = lattice_decompose(Fraction(12), lat)
    assert v is not None and v.is_integral()
    assert in_subgroup(Fraction(-8, 27), lat)
    assert not in_subgroup(Fraction(5), lat)
    assert lattice_decompose(Fraction(10), lat) is None
    # 6 = 2 * 3 lies in <2, 3> even though it is neither generator
    assert in_subgroup(Fraction(6), lat)


def test_hom_evaluation_is_multiplicative():
    lat = make_lattice(2, 3)
    hom = hom_on_lattice(lat, (Fraction(5), Fraction(7)), sign_image=-1)
    assert hom.evaluate(Fraction(2)) == 5
    assert hom.evaluate(Fraction(3)) == 7
    assert hom.evaluate(Fraction(12)) == 5 * 5 * 7
    assert hom.evaluate(Fraction(-2, 3)) == Fraction(-5, 7)
    assert hom.evaluate(Fraction(5)) is None
    for x, y in ((Fraction(2), Fraction(3)), (Fraction(4), Fraction(-9, 2))):
        assert hom.evaluate(x * y) == hom.evaluate(x) * hom.evaluate(y)


def test_hom_validation():
    lat = make_lattice(2, 3)
    with pytest.raises(BadParameters):
        hom_on_lattice(lat, (Fraction(5),))
    with pytest.raises(BadParameters):
        hom_on_lattice(lat, (Fraction(5), Fraction(7)), sign_image=2)
