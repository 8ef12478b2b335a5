"""Building, validating, composing and inverting the canonical forms."""
import random
from fractions import Fraction

import pytest

from localaut.autos import (
    CONTRAGREDIENT,
    SIGMA_CONJ,
    SIGMA_ID,
    STANDARD,
    agree_on,
    apply,
    compose,
    invert,
    make_automorphism,
)
from localaut.errors import (
    BadParameters,
    IllegalScalarClass,
    IllegalSigma,
    NonUnitaryT,
    NotInGroup,
    SingularT,
)
from localaut.matrices import (
    GroupTag,
    QC,
    QR,
    det,
    equal,
    identity,
    mat,
    mul,
    random_gl,
    random_sl,
    random_su,
    random_unitary,
    smul,
)
from localaut.scalarmaps import PowerConjFunc, PowerFunc

F = Fraction
SL3 = GroupTag("SL", "R", 3)
GL3 = GroupTag("GL", "R", 3)


def test_standard_form_is_conjugation():
    rng = random.Random(1)
    t = random_gl(3, QR, rng)
    auto = make_automorphism(SL3, STANDARD, SIGMA_ID, t)
    a = random_sl(3, QR, rng)
    got = apply(auto, a)
    from localaut.matrices import inv

    assert equal(got, mul(mul(t, a), inv(t)))


def test_contragredient_form_inverts_transposes():
    rng = random.Random(2)
    auto = make_automorphism(SL3, CONTRAGREDIENT, SIGMA_ID, identity(3, QR))
    a = random_sl(3, QR, rng)
    from localaut.matrices import inv, transpose

    assert equal(apply(auto, a), inv(transpose(a)))


def test_gl_scalar_character_scales_by_determinant():
    rng = random.Random(3)
    auto = make_automorphism(GL3, STANDARD, SIGMA_ID, identity(3, QR), PowerFunc(F(1)))
    a = random_gl(3, QR, rng)
    assert equal(apply(auto, a), smul(abs(det(a)), a))


def test_homomorphism_property_random():
    rng = random.Random(4)
    for kind in (STANDARD, CONTRAGREDIENT):
        auto = make_automorphism(
            GL3, kind, SIGMA_ID, random_gl(3, QR, rng), PowerFunc(F(2))
        )
        for _ in range(10):
            a, b = random_gl(3, QR, rng), random_gl(3, QR, rng)
            assert equal(apply(auto, mul(a, b)), mul(apply(auto, a), apply(auto, b)))


def test_validation_rejects_bad_ingredients():
    with pytest.raises(IllegalSigma):
        make_automorphism(SL3, STANDARD, SIGMA_CONJ, identity(3, QR))
    with pytest.raises(SingularT):
        make_automorphism(SL3, STANDARD, SIGMA_ID, smul(F(0), identity(3, QR)))
    with pytest.raises(IllegalScalarClass):
        make_automorphism(SL3, STANDARD, SIGMA_ID, identity(3, QR), PowerFunc(F(1)))
    with pytest.raises(IllegalScalarClass):
        # the sign flip needs even n
        make_automorphism(GL3, STANDARD, SIGMA_ID, identity(3, QR), PowerFunc(F(1), "flip"))
    with pytest.raises(NonUnitaryT):
        make_automorphism(
            GroupTag("Un", "C", 3), STANDARD, SIGMA_ID, smul(2.0, identity(3, "C64"))
        )
    with pytest.raises(BadParameters):
        make_automorphism(
            GroupTag("SUn", "C", 3), CONTRAGREDIENT, SIGMA_ID, random_unitary(3, 0)
        )


def test_apply_enforces_membership():
    auto = make_automorphism(SL3, STANDARD, SIGMA_ID, identity(3, QR))
    with pytest.raises(NotInGroup):
        apply(auto, smul(F(2), identity(3, QR)))


def test_flip_character_on_even_size():
    gl4 = GroupTag("GL", "R", 4)
    auto = make_automorphism(
        gl4, STANDARD, SIGMA_ID, identity(4, QR), PowerFunc(F(0), "flip")
    )
    rng = random.Random(5)
    neg = mul(random_sl(4, QR, rng), mat(
        [[-1 if i == j == 0 else (1 if i == j else 0) for j in range(4)] for i in range(4)], QR
    ))
    assert det(neg) == -1
    assert equal(apply(auto, neg), smul(F(-1), neg))


def test_compose_and_invert_exact():
    rng = random.Random(6)
    glc = GroupTag("GL", "C", 3)
    a1 = make_automorphism(
        glc, CONTRAGREDIENT, SIGMA_CONJ, random_gl(3, QC, rng), PowerConjFunc(1, 1)
    )
    a2 = make_automorphism(glc, STANDARD, SIGMA_ID, random_gl(3, QC, rng), PowerConjFunc(0, 0))
    comp = compose(a1, a2)
    samples = [random_gl(3, QC, rng) for _ in range(6)]
    for s in samples:
        assert equal(apply(comp, s), apply(a1, apply(a2, s)))
    inv1 = invert(a1)
    for s in samples:
        assert equal(apply(inv1, apply(a1, s)), s)


def test_agree_on():
    rng = random.Random(7)
    t = random_gl(3, QR, rng)
    a1 = make_automorphism(SL3, STANDARD, SIGMA_ID, t)
    a2 = make_automorphism(SL3, STANDARD, SIGMA_ID, smul(F(5), t))
    samples = [random_sl(3, QR, rng) for _ in range(5)]
    assert agree_on(a1, a2, samples)
    a3 = make_automorphism(SL3, CONTRAGREDIENT, SIGMA_ID, t)
    assert not agree_on(a1, a3, samples)
