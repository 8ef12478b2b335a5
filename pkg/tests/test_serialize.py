"""JSON round trips and the canonical digest."""
import random
from fractions import Fraction

import pytest

from localaut.autos import CONTRAGREDIENT, SIGMA_CONJ, SIGMA_ID, STANDARD, apply, make_automorphism
from localaut.errors import FileFormatError
from localaut.localcheck import samples_from_automorphism
from localaut.matrices import GroupTag, QC, QR, close, equal, random_gl, random_sl, random_unitary
from localaut.scalarmaps import PowerConjFunc, PowerFunc
from localaut.serialize import (
    auto_from_json,
    auto_to_json,
    canonical_json,
    mat_from_json,
    mat_to_json,
    samples_from_json,
    samples_to_json,
    sha256_digest,
)

F = Fraction


def test_matrix_round_trip_exact():
    rng = random.Random(1)
    for regime in (QR, QC):
        a = random_gl(3, regime, rng)
        assert equal(mat_from_json(mat_to_json(a)), a)


def test_matrix_round_trip_floats():
    a = random_unitary(3, seed=2)
    b = mat_from_json(mat_to_json(a))
    assert close(a, b, 1e-15)


def test_automorphism_round_trip_with_characters():
    rng = random.Random(3)
    cases = [
        make_automorphism(
            GroupTag("GL", "R", 3), STANDARD, SIGMA_ID, random_gl(3, QR, rng), PowerFunc(F(2))
        ),
        make_automorphism(
            GroupTag("GL", "C", 3),
            CONTRAGREDIENT,
            SIGMA_CONJ,
            random_gl(3, QC, rng),
            PowerConjFunc(1, 1),
        ),
        make_automorphism(GroupTag("SL", "R", 3), CONTRAGREDIENT, SIGMA_ID, random_gl(3, QR, rng)),
    ]
    for auto in cases:
        back = auto_from_json(auto_to_json(auto))
        assert back.group == auto.group and back.kind == auto.kind and back.sigma == auto.sigma
        sample = random_sl(3, QR if auto.group.field == "R" else QC, rng)
        assert equal(apply(back, sample), apply(auto, sample))


def test_sample_map_round_trip():
    rng = random.Random(4)
    auto = make_automorphism(GroupTag("SL", "R", 3), STANDARD, SIGMA_ID, random_gl(3, QR, rng))
    sm = samples_from_automorphism(auto, [random_sl(3, QR, rng) for _ in range(3)])
    back = samples_from_json(samples_to_json(sm))
    assert back.group == sm.group
    for (a1, b1), (a2, b2) in zip(back.samples, sm.samples):
        assert equal(a1, a2) and equal(b1, b2)


def test_canonical_json_is_order_insensitive():
    assert canonical_json({"b": 1, "a": [2, 3]}) == canonical_json({"a": [2, 3], "b": 1})
    assert sha256_digest({"x": "1/2"}) == sha256_digest({"x": "1/2"})


def test_malformed_objects_raise_file_format_error():
    with pytest.raises(FileFormatError):
        mat_from_json({"regime": "QR"})
    with pytest.raises(FileFormatError):
        auto_from_json({"kind": "standard"})
    with pytest.raises(FileFormatError):
        samples_from_json({"samples": "nope"})
