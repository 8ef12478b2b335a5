"""Scalar map classes: membership screens, the power-class property and the
pairwise domain checks."""
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from localaut.errors import BadParameters
from localaut.mullattice import hom_on_lattice, make_lattice
from localaut.scalarmaps import (
    CIRCLE,
    ClassMap,
    LatticeFunc,
    PowerConjFunc,
    PowerFunc,
    TableFunc,
    check_LAR,
    check_LM1r_on_domain,
    check_LM2r_on_domain,
    check_M1r,
    check_M2r,
    check_Mu,
    check_P,
    evaluate,
)
from localaut.scalars import GaussRational

F = Fraction


def test_power_class_membership_by_parity():
    assert check_M1r(PowerFunc(F(2)), 3).ok
    assert check_M2r(PowerFunc(F(1)), 3).ok
    assert not check_M1r(PowerFunc(F(1), "flip"), 3).ok
    assert check_M1r(PowerFunc(F(1), "flip"), 4).ok


def test_circle_powers():
    assert check_Mu(PowerFunc(F(0), "same", CIRCLE), 3).ok
    for k in (-3, -1, 1, 2, 5):
        assert not check_Mu(PowerFunc(F(k), "same", CIRCLE), 3).ok
    with pytest.raises(BadParameters):
        PowerFunc(F(1, 2), "same", CIRCLE)


def test_power_func_evaluation_exact():
    g = PowerFunc(F(2, 3))
    assert evaluate(g, F(8)) == 4
    assert evaluate(g, F(-8)) == 4
    assert evaluate(PowerFunc(F(2, 3), "flip"), F(-8)) == -4
    assert evaluate(g, F(2)) is None  # no rational cube root of 4... of 2^2


@settings(max_examples=50, deadline=None)
@given(
    st.fractions(min_value=-9, max_value=9, max_denominator=4).filter(lambda q: q != 0),
    st.fractions(min_value=-9, max_value=9, max_denominator=4).filter(lambda q: q != 0),
    st.integers(0, 3),
)
def test_integer_powers_are_multiplicative(a, b, c):
    g = PowerFunc(F(c))
    assert evaluate(g, a * b) == evaluate(g, a) * evaluate(g, b)


def test_powerconj_on_gauss_rationals():
    z = GaussRational(F(1), F(1))
    g = PowerConjFunc(2, 1)
    assert evaluate(g, z) == (z * z) * z.conjugate()
    diag = PowerConjFunc(F(3, 2), F(3, 2))
    # |1+i|^2 = 2 and 2^(3/2) is irrational, so the exact evaluator declines
    assert evaluate(diag, z) is None
    # |2|^2 = 4 and 4^(3/2) = 8 is rational, so this one goes through
    assert evaluate(diag, GaussRational(F(2))) == 8


def test_property_P_transport_and_independence():
    good = ClassMap(((F(2), F(4)), (F(4), F(16)), (F(3), F(9))))
    assert check_P(good).ok
    bad_transport = ClassMap(((F(2), F(4)), (F(4), F(8))))
    assert not check_P(bad_transport).ok
    bad_collapse = ClassMap(((F(2), F(4)), (F(3), F(2))))
    assert not check_P(bad_collapse).ok


def test_odd_extension_table_checks():
    assert check_LAR({F(2): F(3), F(-2): F(-3), F(1): F(1)}).ok
    assert not check_LAR({F(2): F(3), F(-2): F(3)}).ok
    assert not check_LAR({F(1): F(2)}).ok
    assert not check_LAR({F(2): F(-3)}).ok


def test_odd_extension_power_forms():
    assert check_LAR(PowerFunc(F(2), "flip")).ok
    assert not check_LAR(PowerFunc(F(2))).ok
    assert not check_LAR(PowerFunc(F(0), "flip")).ok


def test_odd_extension_on_lattices():
    lat = make_lattice(2, 3)
    good = check_LAR(LatticeFunc(hom_on_lattice(lat, (F(5), F(7)), -1)))
    assert good.ok and good.extension_assumed
    assert not check_LAR(LatticeFunc(hom_on_lattice(lat, (F(2), F(4)), -1))).ok
    assert not check_LAR(LatticeFunc(hom_on_lattice(lat, (F(5), F(7)), 1))).ok
    assert not check_LAR(LatticeFunc(hom_on_lattice(lat, (F(-5), F(7)), -1))).ok


def test_domain_check_accepts_class_members():
    dom = [F(2), F(3), F(6), F(-2), F(1, 2)]
    table = {d: evaluate(PowerFunc(F(1)), d) for d in dom}
    assert check_LM1r_on_domain(table, 3, dom).ok


def test_domain_check_rejects_induced_collisions():
    # g(2) = 2 and g(16) = 1 force f(2) = f(16) = 16, killing injectivity
    dom = {F(2): F(2), F(16): F(1)}
    rep = check_LM1r_on_domain(dom, 3, list(dom))
    assert not rep.ok and rep.failures
    dom2 = {F(2): F(2), F(1, 16): F(1)}
    assert not check_LM2r_on_domain(dom2, 3, list(dom2)).ok


def test_domain_check_parity():
    assert not check_LM1r_on_domain({F(2): F(-2)}, 3, [F(2)]).ok
    flip = {F(2): F(2), F(-2): F(-2)}
    assert check_LM1r_on_domain(flip, 4, list(flip)).ok
    assert not check_LM1r_on_domain(flip, 3, list(flip)).ok
    assert not check_LM1r_on_domain({F(2): F(2), F(-2): F(-3)}, 4, [F(2), F(-2)]).ok


def test_table_func_lookup():
    t = TableFunc(((F(2), F(4)), (F(3), F(9))))
    assert evaluate(t, F(3)) == 9
    assert evaluate(t, F(5)) is None
