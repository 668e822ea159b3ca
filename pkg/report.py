"""Run reports: one section per scenario command, rendered as text or JSON."""

import json
from dataclasses import dataclass, field
from enum import Enum
from typing import Any, Dict, List, Optional, Sequence, Tuple

from spectral import Verdict


class Status(Enum):
    PASS = "PASS"
    FAIL = "FAIL"
    INFO = "INFO"
    ERROR = "ERROR"


STATUS_ICONS = {
    Status.PASS: "✅",
    Status.FAIL: "❌",
    Status.INFO: "ℹ️",
    Status.ERROR: "💥",
}


@dataclass
class Section:
    """
    Output of one command.

    values holds the machine-readable content: strings (rationals as "p/q",
    polynomials in canonical form), ints, bools, lists and dicts of those.
    """

    command: str
    status: Status
    title: str
    lines: List[str] = field(default_factory=list)
    values: Dict[str, Any] = field(default_factory=dict)
    evidence: Optional[str] = None

    @property
    def passed(self) -> bool:
        return self.status in (Status.PASS, Status.INFO)

    def to_dict(self) -> Dict[str, Any]:
        data = {
            "command": self.command,
            "status": self.status.value,
            "title": self.title,
            "lines": list(self.lines),
            "values": self.values,
        }
        if self.evidence:
            data["evidence"] = self.evidence
        return data


EXACT_LABEL = "exact symbolic computation"


def _outcome(holds: bool) -> str:
    return "holds" if holds else "fails"


def check_section(
    command: str,
    title: str,
    holds: bool,
    expect: bool,
    lines: List[str],
    values: Dict[str, Any],
    evidence: str = EXACT_LABEL,
) -> Section:
    """A PASS section iff the observed outcome equals the expectation."""
    status = Status.PASS if holds == expect else Status.FAIL
    head = f"{title}: {_outcome(holds)} (expected: {_outcome(expect)})"
    values = dict(values, property=title, holds=holds, expected=expect)
    return Section(command, status, title, [head] + list(lines), values, evidence)


def verdict_section(
    command: str, verdict: Verdict, expect: bool, checks: Sequence[Tuple[str, Any, Any]] = ()
) -> Section:
    """
    Section for a sampled verdict.

    checks are extra (label, observed, expected) triples; any mismatch turns a PASS into a FAIL.
    """
    lines = [f"samples: {verdict.samples}"]
    lines += verdict.details
    lines += [f"witness: {w}" for w in verdict.witnesses]
    values = {
        "samples": verdict.samples,
        "details": list(verdict.details),
        "witnesses": list(verdict.witnesses),
        **verdict.structured(),
    }
    section = check_section(command, verdict.name, verdict.holds, expect, lines, values, verdict.evidence)
    for position, (label, observed, wanted) in enumerate(checks, start=1):
        section.lines.insert(position, f"{label}: {observed} (expected: {wanted})")
        section.values.setdefault("checks", {})[label] = {"observed": observed, "expected": wanted}
        if observed != wanted and section.status is Status.PASS:
            section.status = Status.FAIL
    return section


def error_section(command: str, error: Exception) -> Section:
    message = f"{type(error).__name__}: {error}"
    return Section(command, Status.ERROR, command, [message], {"error": message})


@dataclass
class Report:
    scenario: str
    seed: Optional[int] = None
    notes: List[str] = field(default_factory=list)
    sections: List[Section] = field(default_factory=list)

    def add(self, section: Section) -> None:
        self.sections.append(section)

    @property
    def passed(self) -> bool:
        return all(section.passed for section in self.sections)

    def exit_code(self) -> int:
        return 0 if self.passed else 1

    def render_text(self) -> str:
        out = [f"scenario: {self.scenario}"]
        if self.seed is not None:
            out.append(f"seed: {self.seed}")
        for note in self.notes:
            out.append(f"note: {note}")
        for section in self.sections:
            out.append("")
            header = f"{STATUS_ICONS[section.status]} [{section.status.value}] {section.command}"
            if section.title != section.command:
                header += f" - {section.title}"
            out.append(header)
            if section.evidence:
                out.append(f"  ({section.evidence})")
            out.extend(f"  {line}" for line in section.lines)
        out.append("")
        total = len(self.sections)
        passed = sum(1 for s in self.sections if s.passed)
        out.append(f"{passed}/{total} sections passed")
        return "\n".join(out) + "\n"

    def render_json(self) -> str:
        data = {
            "scenario": self.scenario,
            "seed": self.seed,
            "notes": list(self.notes),
            "sections": [section.to_dict() for section in self.sections],
            "passed": self.passed,
        }
        return json.dumps(data, indent=2, sort_keys=True, ensure_ascii=False) + "\n"

    def render(self, fmt: str) -> str:
        if fmt == "json":
            return self.render_json()
        return self.render_text()
