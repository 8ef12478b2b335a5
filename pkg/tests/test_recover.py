"""Recovery engines and the small detection tools they are built from."""
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
    make_automorphism,
)
from localaut.errors import BadParameters, BudgetExceeded, OracleIncomplete
from localaut.matrices import (
    GroupTag,
    QC,
    QR,
    equal,
    identity,
    inv,
    mul,
    random_gl,
    random_sl,
    random_unitary,
    smul,
)
from localaut.recover import (
    AutomorphismOracle,
    SampleOracle,
    det_relation_refutations,
    functional_ratio,
    lindep_detector,
    recover_glnr,
    recover_slnr_short,
    recover_sln_common,
    recover_sun,
    recover_un,
)
from localaut.scalarmaps import PowerFunc, evaluate

F = Fraction


def _scalar_ratio_ok(t_rec, t_true):
    r = mul(t_rec, inv(t_true))
    lam = r[0, 0]
    return lam != 0 and equal(r, smul(lam, identity(r.n, r.regime)))


def test_sl_real_round_trip_both_kinds():
    for i, kind in enumerate((STANDARD, CONTRAGREDIENT)):
        rng = random.Random(40 + i)
        t = random_gl(3, QR, rng)
        auto = make_automorphism(GroupTag("SL", "R", 3), kind, SIGMA_ID, t)
        rep = recover_slnr_short(AutomorphismOracle(auto), seed=i, verify_probes=25)
        assert rep.status == "Recovered"
        assert rep.auto.kind == kind
        assert _scalar_ratio_ok(rep.auto.t, t)
        assert rep.residual == 0.0


def test_sl_complex_round_trip_with_conjugation():
    rng = random.Random(8)
    t = random_gl(3, QC, rng)
    auto = make_automorphism(GroupTag("SL", "C", 3), CONTRAGREDIENT, SIGMA_CONJ, t)
    rep = recover_sln_common(AutomorphismOracle(auto), seed=0, verify_probes=20)
    assert rep.status == "Recovered"
    assert rep.auto.kind == CONTRAGREDIENT and rep.auto.sigma == SIGMA_CONJ
    samples = [random_sl(3, QC, random.Random(100 + k)) for k in range(5)]
    assert agree_on(rep.auto, auto, samples)


def test_gl_real_splits_character():
    rng = random.Random(9)
    g = PowerFunc(F(2))
    auto = make_automorphism(
        GroupTag("GL", "R", 3), STANDARD, SIGMA_ID, random_gl(3, QR, rng), g
    )
    dets = [F(2), F(3), F(-2), F(1, 2), F(6)]
    rep = recover_glnr(AutomorphismOracle(auto), dets=dets, seed=0, verify_probes=10)
    assert rep.status == "Recovered"
    table = dict(rep.f_table)
    for d in dets:
        assert table[d] == evaluate(g, d) ** 3 * d
    gtable = dict(rep.auto.g.points)
    assert gtable[F(2)] == 4 and gtable[F(-2)] == 4


def test_su_round_trip_detects_conjugation():
    t = random_unitary(3, seed=21)
    auto = make_automorphism(GroupTag("SUn", "C", 3), STANDARD, SIGMA_CONJ, t)
    rep = recover_sun(AutomorphismOracle(auto), seed=0, verify_probes=30)
    assert rep.status == "Recovered"
    assert rep.auto.sigma == SIGMA_CONJ
    assert rep.residual < 1e-8


def test_un_round_trip():
    t = random_unitary(3, seed=22)
    auto = make_automorphism(GroupTag("Un", "C", 3), STANDARD, SIGMA_ID, t)
    rep = recover_un(AutomorphismOracle(auto), seed=0, verify_probes=20)
    assert rep.status == "Recovered"
    assert rep.residual < 1e-8


def test_budget_is_enforced():
    auto = make_automorphism(GroupTag("SL", "R", 3), STANDARD, SIGMA_ID, identity(3, QR))
    with pytest.raises(BudgetExceeded):
        recover_slnr_short(AutomorphismOracle(auto, budget=3), seed=0)


def test_sample_oracle_reports_missing_probe():
    auto = make_automorphism(GroupTag("SL", "R", 3), STANDARD, SIGMA_ID, identity(3, QR))
    a = random_sl(3, QR, random.Random(1))
    oracle = SampleOracle(auto.group, ((a, apply(auto, a)),))
    with pytest.raises(OracleIncomplete) as exc:
        recover_slnr_short(oracle, seed=0)
    assert hasattr(exc.value, "missing_probe")


def test_det_relation_refutations_frozen():
    table = {F(2): F(16), F(3): F(2187), F(6): F(1296)}
    refs = det_relation_refutations(table)
    assert refs == [{"relation": {"2": -1, "3": -1, "6": 1}, "image_product": "1/27"}]
    consistent = {d: evaluate(PowerFunc(F(1)), d) ** 3 * d for d in (F(2), F(3), F(6))}
    assert det_relation_refutations(consistent) == []


def test_lindep_detector_both_verdicts():
    rng = random.Random(3)
    a = random_sl(3, QR, rng)
    dep = lindep_detector(a, smul(F(3, 5), a), seed=0)
    assert dep.status == "GloballyDependent"
    assert equal(a, smul(dep.ratio, smul(F(3, 5), a)))
    b = random_sl(3, QR, rng)
    ind = lindep_detector(a, b, seed=0)
    assert ind.status == "Independent"
    assert ind.witness is not None


def test_functional_ratio():
    phi1 = (F(2), F(0), F(-1))
    phi2 = (F(3), F(0), F(-3, 2))
    assert functional_ratio(phi1, phi2) == F(3, 2)
    with pytest.raises(BadParameters):
        functional_ratio((F(1), F(0)), (F(0), F(1)))
