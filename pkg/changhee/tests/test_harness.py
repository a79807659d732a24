import json

import pytest

from changhee.errors import UnknownIdentityError
from changhee.harness import REPORT_CSV_HEADER, VerificationSuite, reports_to_csv, reports_to_json
from changhee.identities import identity_registry
from changhee.identities.registry import IdentityCheck
from changhee.identities.report import Grid
from changhee.ring import Polynomial
from changhee.sequences import Family, PerturbedProvider

GRID = Grid(n_max=5, k_max=2)


class CrashingCheck(IdentityCheck):
    @property
    def category(self) -> str:
        return "first_kind"

    def sides(self, n, k, provider, order):
        raise RuntimeError("boom")


def test_resolve_ids():
    assert VerificationSuite.resolve_ids("all") == identity_registry.get_available_identities()
    assert VerificationSuite.resolve_ids(["eq40", "thm1", "thm1"]) == ["thm1", "eq40"]
    assert VerificationSuite.resolve_ids(["thm2,thm3"]) == ["thm2", "thm3"]
    with pytest.raises(UnknownIdentityError):
        VerificationSuite.resolve_ids(["thm1", "nosuch"])


def test_run_all_passes():
    reports = VerificationSuite().run("all", GRID)
    assert [r.identity_id for r in reports] == identity_registry.get_available_identities()
    assert all(r.passed for r in reports)


def test_parallel_run_keeps_order():
    serial = VerificationSuite().run("all", GRID, jobs=1)
    parallel = VerificationSuite().run("all", GRID, jobs=4)
    assert reports_to_json(parallel) == reports_to_json(serial)


def test_crash_becomes_fail_report(monkeypatch, caplog):
    monkeypatch.setitem(identity_registry.identities, "boom", CrashingCheck())
    [report] = VerificationSuite().run(["boom"], GRID)
    assert not report.passed
    assert report.witness.route == "error"
    assert "boom" in caplog.text


def test_polynomial_witness_in_suite_run():
    [report] = VerificationSuite(PerturbedProvider(Family.EULER_POLY, 2, 1)).run(["cor4"], Grid(n_max=3, k_max=1))
    assert not report.passed
    assert (report.witness.n, report.witness.k) == (2, 1)
    assert isinstance(report.witness.lhs, Polynomial)
    [row] = json.loads(reports_to_json([report]))
    assert isinstance(row["witness"]["lhs"], list)


def test_log_lines(caplog):
    caplog.set_level("INFO", logger="changhee.harness")
    VerificationSuite(PerturbedProvider(Family.CHANGHEE1_NUMBER, 1, 1)).run(["thm1", "eq11"], GRID)
    assert "🔧 checking thm1" in caplog.text
    assert "❌ thm1 failed at n=1, k=1" in caplog.text


def test_report_encodings():
    reports = VerificationSuite(PerturbedProvider(Family.CHANGHEE1_NUMBER, 1, 1)).run(["thm1", "eq40"], GRID)
    decoded = json.loads(reports_to_json(reports))
    assert [r["verdict"] for r in decoded] == ["fail", "pass"]
    assert decoded[1]["witness"] is None
    lines = reports_to_csv(reports).splitlines()
    assert lines[0] == ",".join(REPORT_CSV_HEADER)
    assert lines[1] == "thm1,fail,5,2,1,1,stirling,1/2,-1/2"
    assert lines[2] == "eq40,pass,5,2,,,,,"
