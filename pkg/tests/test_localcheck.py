"""Pairwise interpolation: verdicts for sample pairs and whole sample maps."""
import random
from fractions import Fraction

import pytest

from localaut.autos import (
    CONTRAGREDIENT,
    SIGMA_ID,
    STANDARD,
    apply,
    make_automorphism,
)
from localaut.errors import BadParameters
from localaut.localcheck import SampleMap, check_map, check_pair, samples_from_automorphism
from localaut.matrices import (
    GroupTag,
    QR,
    identity,
    mul,
    random_gl,
    random_sl,
    smul,
)

F = Fraction
SL3 = GroupTag("SL", "R", 3)


def _auto(kind, seed):
    return make_automorphism(SL3, kind, SIGMA_ID, random_gl(3, QR, random.Random(seed)))


def test_pair_from_genuine_automorphism_is_interpolable():
    auto = _auto(CONTRAGREDIENT, 0)
    rng = random.Random(1)
    a, b = random_sl(3, QR, rng), random_sl(3, QR, rng)
    v = check_pair(SL3, (a, apply(auto, a)), (b, apply(auto, b)), seed=0)
    assert v.status == "Interpolable"
    # two samples rarely pin down the kind, so only the matching contract
    # is asserted: the witness reproduces both samples exactly
    assert v.witness is not None
    from localaut.matrices import equal

    assert equal(apply(v.witness, a), apply(auto, a))
    assert equal(apply(v.witness, b), apply(auto, b))


def test_pair_with_wrong_spectrum_is_obstructed():
    rng = random.Random(2)
    a, b = random_sl(3, QR, rng), random_sl(3, QR, rng)
    v = check_pair(SL3, (a, a), (b, mul(b, b)), seed=0)
    assert v.status == "Obstructed"
    assert v.refusal_reasons()


def test_map_from_automorphism_is_locally_consistent():
    auto = _auto(STANDARD, 3)
    rng = random.Random(4)
    mats = [random_sl(3, QR, rng) for _ in range(3)]
    sm = samples_from_automorphism(auto, mats)
    rep = check_map(sm, seed=0)
    assert rep.status == "LocallyConsistent"
    assert rep.counts()["Interpolable"] == 3
    assert rep.first_obstruction is None


def test_pasted_map_is_obstructed():
    rng = random.Random(1)
    a, b = random_sl(3, QR, rng), random_sl(3, QR, rng)
    glue = SampleMap(
        SL3,
        (
            (a, apply(_auto(CONTRAGREDIENT, 0), a)),
            (b, apply(make_automorphism(SL3, STANDARD, SIGMA_ID, identity(3, QR)), b)),
        ),
    )
    rep = check_map(glue, seed=0)
    assert rep.status == "Obstructed"
    assert rep.first_obstruction == (0, 1)


def test_single_sample_is_checked_against_itself():
    auto = _auto(STANDARD, 5)
    a = random_sl(3, QR, random.Random(6))
    sm = samples_from_automorphism(auto, [a])
    rep = check_map(sm, seed=0)
    assert rep.status == "LocallyConsistent"
    assert len(rep.pair_verdicts) == 1


def test_empty_map_rejected():
    with pytest.raises(BadParameters):
        check_map(SampleMap(SL3, ()))


def test_sample_map_validates_shapes():
    a = random_sl(3, QR, random.Random(7))
    with pytest.raises(BadParameters):
        SampleMap(GroupTag("SL", "R", 4), ((a, a),))
