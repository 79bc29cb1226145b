import itertools

import numpy as np
import pytest

from model import ObjectiveWeights, Schedule
from services.datagen import gen_uniform
from services.metrics import (
    evaluate,
    gains_batch,
    ideal_gains,
    is_eps_fair_participants,
    is_eps_fair_speakers,
    joint_objective,
)
from utils.errors import StructuralError


def test_table1_middle_slot(table1):
    report = evaluate(table1, Schedule((1,)))
    assert report.tep == pytest.approx(0.98, abs=1e-9)
    np.testing.assert_allclose(report.ncg, [0.49, 0.49], atol=1e-9)
    assert report.psi_p == pytest.approx(0.0, abs=1e-9)


def test_table3_speaker_fair_schedule(table3):
    report = evaluate(table3, Schedule((1, 2)))
    np.testing.assert_allclose(report.nec, [0.5, 0.5], atol=1e-9)
    assert report.psi_s == pytest.approx(0.0, abs=1e-9)
    np.testing.assert_allclose(report.ncg, [1 / 1.7, 0.7 / 1.7], atol=1e-9)
    assert report.psi_p == pytest.approx(0.3 / 1.7, abs=1e-9)


def test_identity_report(identity):
    report = evaluate(identity, Schedule((0,)))
    assert report.tep == 1.0
    assert report.ncg.tolist() == [1.0]
    assert report.nec.tolist() == [1.0]
    assert report.psi_p == report.psi_s == 0.0


def test_ideal_gains_examples(table2, table3, identity):
    icg, _ = ideal_gains(table2)
    np.testing.assert_allclose(icg, [1.4], atol=1e-9)
    icg, iec = ideal_gains(table3)
    np.testing.assert_allclose(icg, [1.7, 1.7], atol=1e-9)
    np.testing.assert_allclose(iec, [2.0, 1.4], atol=1e-9)
    icg, iec = ideal_gains(identity)
    assert icg.tolist() == [1.0] and iec.tolist() == [1.0]


def test_table2_second_talk_ideal_crowd(table2):
    _, iec = ideal_gains(table2)
    assert iec[1] == pytest.approx(0.5, abs=1e-12)


def test_participant_eps_fairness(table3):
    report = evaluate(table3, Schedule((1, 2)))
    assert is_eps_fair_participants(report, 0.2)
    assert not is_eps_fair_participants(report, 0.1)
    assert is_eps_fair_participants(report, 1.0)


def test_speaker_eps_fairness(table3):
    report = evaluate(table3, Schedule((0, 3)))
    assert report.psi_s == pytest.approx(0.8, abs=1e-9)
    assert not is_eps_fair_speakers(report, 0.5)
    assert is_eps_fair_speakers(report, 0.8 + 1e-12)
    assert is_eps_fair_speakers(report, 1.0)


def test_negative_eps_rejected(table1):
    report = evaluate(table1, Schedule((1,)))
    with pytest.raises(ValueError):
        is_eps_fair_participants(report, -0.1)
    with pytest.raises(ValueError):
        is_eps_fair_speakers(report, -1e-9)


def test_joint_objective_examples(table1, table3):
    report = evaluate(table1, Schedule((1,)))
    assert joint_objective(report, ObjectiveWeights(1, 1, 0), 2, 1) == pytest.approx(0.49, abs=1e-9)
    assert joint_objective(report, ObjectiveWeights.swm(), 2, 1) == pytest.approx(report.tep / 2, abs=1e-12)

    report = evaluate(table3, Schedule((0, 3)))
    assert joint_objective(report, ObjectiveWeights(1, 0.5, 0.5), 2, 2) == pytest.approx(0.17, abs=1e-9)


def test_invalid_schedule_is_structural(table2):
    with pytest.raises(StructuralError):
        evaluate(table2, Schedule((1, 1)))
    with pytest.raises(StructuralError):
        evaluate(table2, Schedule((0,)))


def test_report_arrays_are_read_only(table2):
    report = evaluate(table2, Schedule((0, 2)))
    with pytest.raises(ValueError):
        report.ncg[0] = 0.0


@pytest.mark.parametrize("seed", range(100))
def test_structural_invariants(seed):
    rng = np.random.default_rng(1000 + seed)
    m, n = int(rng.integers(1, 6)), int(rng.integers(1, 7))
    l = int(rng.integers(n, 9))
    instance = gen_uniform(m, n, l, seed)
    schedule = Schedule(tuple(rng.permutation(l)[:n]))
    report = evaluate(instance, schedule)

    assert np.all((report.ncg >= 0) & (report.ncg <= 1))
    assert np.all((report.nec >= 0) & (report.nec <= 1))
    assert report.tep == pytest.approx(report.cg.sum(), abs=1e-9)
    assert report.tep == pytest.approx(report.ec.sum(), abs=1e-9)

    for psi, is_fair in ((report.psi_p, is_eps_fair_participants), (report.psi_s, is_eps_fair_speakers)):
        assert is_fair(report, psi)
        if psi > 1e-6:
            assert not is_fair(report, psi - 1e-6)
        verdicts = [is_fair(report, eps) for eps in np.linspace(0, 1, 21)]
        assert verdicts == sorted(verdicts)


@pytest.mark.parametrize("seed", range(20))
def test_ideal_gains_match_enumeration(seed):
    rng = np.random.default_rng(2000 + seed)
    m, n = int(rng.integers(1, 5)), int(rng.integers(1, 7))
    l = int(rng.integers(n, 8))
    instance = gen_uniform(m, n, l, seed)
    assignments = np.array(list(itertools.permutations(range(l), n)))
    cg, ec = gains_batch(instance, assignments)

    icg, iec = ideal_gains(instance)
    np.testing.assert_allclose(icg, cg.max(axis=0), atol=1e-9)
    np.testing.assert_allclose(iec, ec.max(axis=0), atol=1e-9)


def test_gains_batch_matches_evaluate(table3):
    assignments = np.array([[0, 3], [1, 2], [3, 0]])
    cg, ec = gains_batch(table3, assignments)
    for row, assignment in enumerate(assignments):
        report = evaluate(table3, Schedule(tuple(assignment)))
        np.testing.assert_allclose(cg[row], report.cg)
        np.testing.assert_allclose(ec[row], report.ec)


def test_report_dict_keys(table2):
    data = evaluate(table2, Schedule((0, 2))).to_dict()
    assert {"ncg", "nec", "tep", "psi_p", "psi_s", "ncg_mean", "nec_mean"} <= set(data)
    assert data["nec"] == pytest.approx([1.0, 0.8])
