import pytest

from handlers.claims import ClaimCheck, verify_claims


def test_all_claims_pass():
    checks = verify_claims()
    assert [check.name for check in checks] == ["C1", "C2", "C3", "C4"]
    assert all(check.passed for check in checks), [check.failures for check in checks]


def test_claim_intermediate_values():
    checks = {check.name: check for check in verify_claims()}
    assert checks["C2"].values["sfair.tep"] == pytest.approx(1.175, abs=1e-9)
    assert checks["C3"].values["pfair.psi_s"] == pytest.approx(0.8, abs=1e-9)
    assert checks["C1"].values["pfair.tep"] == pytest.approx(0.98, abs=1e-9)


def test_mismatch_is_reported_by_name():
    check = ClaimCheck("X", "example")
    check.expect_close("value", 1.0, 1.1)
    check.expect_less("order", 2.0, 1.0)
    assert not check.passed
    assert len(check.failures) == 2
    assert check.to_dict()["failures"][0].startswith("value")
