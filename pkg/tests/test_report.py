import json

from report import EXACT_LABEL, Report, Section, Status, check_section, error_section, verdict_section
from spectral import SzaboVerdict, Verdict


def test_check_section_compares_with_expectation():
    ok = check_section("einstein", "einstein", True, True, ["detail"], {"scalar": "6"})
    assert ok.status is Status.PASS
    assert ok.lines == ["einstein: holds (expected: holds)", "detail"]
    assert ok.evidence == EXACT_LABEL
    assert ok.values == {"scalar": "6", "property": "einstein", "holds": True, "expected": True}

    refuted = check_section("jordan", "jordan-osserman", False, False, [], {})
    assert refuted.status is Status.PASS
    assert refuted.lines[0] == "jordan-osserman: fails (expected: fails)"

    surprise = check_section("jordan", "jordan-osserman", True, False, [], {})
    assert surprise.status is Status.FAIL
    assert not surprise.passed


def test_verdict_section_carries_sampling_evidence():
    verdict = Verdict("osserman", False, 64, details=["two polys"], witnesses=["v1", "v2"])
    section = verdict_section("osserman", verdict, True)
    assert section.status is Status.FAIL
    assert section.evidence == "sampling evidence"
    assert "witness: v1" in section.lines
    assert section.values["samples"] == 64


def test_verdict_section_checks_can_turn_pass_into_fail():
    verdict = SzaboVerdict("szabo", True, 32, details=["one class"], nilpotent=True, nonzero_count=5, jordan_profiles=2)
    agreed = verdict_section("szabo", verdict, True, [("jordan", "varies", "varies")])
    assert agreed.status is Status.PASS
    assert agreed.lines[:2] == ["szabo: holds (expected: holds)", "jordan: varies (expected: varies)"]
    assert agreed.values["nonzero_count"] == 5
    assert agreed.values["checks"] == {"jordan": {"observed": "varies", "expected": "varies"}}

    refuted = verdict_section("szabo", verdict, True, [("nilpotent", "fails", "holds")])
    assert refuted.status is Status.FAIL
    assert "nilpotent: fails (expected: holds)" in refuted.lines


def test_report_text_and_exit_code():
    report = Report("demo.wlk", seed=3, notes=["Phi[2,1] completed"])
    report.add(Section("metric", Status.INFO, "Walker metric", ["det g = 1"]))
    report.add(check_section("einstein", "einstein", True, True, [], {}))
    assert report.passed and report.exit_code() == 0
    text = report.render("text")
    assert text.startswith("scenario: demo.wlk\nseed: 3\nnote: Phi[2,1] completed\n")
    assert "ℹ️ [INFO] metric - Walker metric" in text
    assert "  (exact symbolic computation)" in text
    assert text.endswith("2/2 sections passed\n")

    report.add(error_section("szabo", ValueError("boom")))
    assert report.exit_code() == 1
    assert report.render_text().endswith("2/3 sections passed\n")


def test_report_json():
    report = Report("demo.wlk")
    report.add(check_section("einstein", "einstein", False, True, ["x"], {"criterion": None}))
    data = json.loads(report.render("json"))
    assert data["passed"] is False
    assert data["seed"] is None
    (section,) = data["sections"]
    assert section["status"] == "FAIL"
    assert section["values"]["criterion"] is None
    assert section["evidence"] == EXACT_LABEL
