import asyncio
import json

import pytest

from commands.command_handler import get_command, register_commands
from curvature_service import CurvatureService
from report import Status
from scenario import parse_scenario
from walker_ext import main, run_scenario

SPACE_FORM = """\
dim = 2
construction = modified_c
c = 1
command metric
command einstein
command pk { samples = 8 }
"""


@pytest.fixture(autouse=True)
def registry():
    register_commands(quiet=True)


def run(text: str, service=None):
    return asyncio.run(run_scenario(parse_scenario(text), "test.wlk", None, service or CurvatureService()))


def test_aliases_resolve():
    assert get_command("jordan-osserman") is get_command("jordan")
    assert get_command("PK").name == "parakaehler"
    assert get_command("skew").name == "ip"
    assert get_command("warp") is None


def test_run_scenario_sections():
    report = run(SPACE_FORM)
    assert [s.command for s in report.sections] == ["metric", "einstein", "parakaehler"]
    metric = report.sections[0]
    assert metric.status is Status.INFO
    assert metric.values["B"] == {"1,1": "x1p^2", "1,2": "x1p*x2p", "2,2": "x2p^2"}
    assert metric.values["det"] == "1"
    assert report.sections[1].values["scalar"] == "6"
    assert report.passed


def test_unknown_command_becomes_an_error_section():
    report = run("dim = 2\nconstruction = extension\ncommand warp\ncommand metric\n")
    assert [s.status for s in report.sections] == [Status.ERROR, Status.INFO]
    assert report.exit_code() == 1


def test_failing_command_does_not_stop_the_run(capsys):
    report = run("dim = 2\nconstruction = extension\ncommand metric { colour = red }\ncommand help\n")
    assert report.sections[0].status is Status.ERROR
    assert "ScenarioError" in report.sections[0].lines[0]
    assert report.sections[1].status is Status.INFO
    assert "Error executing command metric" in capsys.readouterr().err


def test_computations_are_cached():
    service = CurvatureService(max_entries=1)
    first = parse_scenario(SPACE_FORM)
    other = parse_scenario("dim = 2\nconstruction = extension\n")
    cached = service.computation(first)
    assert service.computation(parse_scenario(SPACE_FORM)) is cached
    service.computation(other)
    assert service.computation(first) is not cached


def test_main_run_json(tmp_path, capsys):
    path = tmp_path / "space_form.wlk"
    path.write_text(SPACE_FORM, encoding="utf-8")
    assert main(["run", str(path), "--format", "json", "--seed", "5"]) == 0
    data = json.loads(capsys.readouterr().out)
    assert data["passed"] is True
    assert data["seed"] == 5
    assert [s["status"] for s in data["sections"]] == ["INFO", "PASS", "PASS"]


def test_main_reports_unmet_expectations(tmp_path, capsys):
    path = tmp_path / "wrong.wlk"
    path.write_text("dim = 2\nconstruction = modified_c\nc = 1\ncommand einstein { expect = fails }\n", encoding="utf-8")
    assert main(["run", str(path)]) == 1
    assert "0/1 sections passed" in capsys.readouterr().out


def test_main_rejects_invalid_files(tmp_path, capsys):
    path = tmp_path / "broken.wlk"
    path.write_text("dim = 2\nconstruction extension\n", encoding="utf-8")
    assert main(["run", str(path)]) == 2
    assert "line 2, column 14" in capsys.readouterr().err
    assert main(["run", str(tmp_path / "missing.wlk")]) == 2


def test_main_lists_fixtures(capsys):
    assert main(["fixtures"]) == 0
    out = capsys.readouterr().out
    for name in ("sec6", "thm11-n2", "thm11-n3", "eq7c", "thm71", "thm73-demo"):
        assert name in out
    assert "(alias: osserman-6d)" in out
    assert main(["fixtures", "eq7c"]) == 0
    text = capsys.readouterr().out
    assert "construction = modified_c" in text
    assert main(["fixtures", "type-ii"]) == 0
    assert capsys.readouterr().out == text
    assert main(["fixtures", "nope"]) == 2


def test_szabo_expectations_on_a_symmetric_space():
    report = run(
        "dim = 2\nconstruction = modified_c\nc = 1\n"
        "command szabo { samples = 8, nilpotent = fails, jordan = constant }\n"
        "command szabo { samples = 8, nilpotent = holds }\n"
    )
    matching, wrong = report.sections
    assert matching.status is Status.PASS
    assert matching.values["nonzero_count"] == 0
    assert matching.values["jordan_profiles"] == 1
    assert wrong.status is Status.FAIL
    assert wrong.values["holds"] is True
    assert wrong.values["checks"] == {"nilpotent": {"observed": "fails", "expected": "holds"}}
    assert wrong.lines[1] == "nilpotent: fails (expected: holds)"


def test_szabo_rejects_unknown_expectation():
    report = run("dim = 2\nconstruction = extension\ncommand szabo { jordan = sometimes }\n")
    assert report.sections[0].status is Status.ERROR
    assert "jordan must be one of constant, varies" in report.sections[0].lines[0]
