"""Base command interface for scenario commands."""

import re
from abc import ABC, abstractmethod
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, List, Optional, Tuple

from curvature_service import CurvatureService, ScenarioComputation
from errors import ParseError, ScenarioError
from expr import parse_rat
from report import Section
from sampling import SampleScheme
from scenario import Scenario

_TUPLE = re.compile(r"^\(\s*(.*?)\s*\)$")


@dataclass
class RunContext:
    """Everything a command needs: the scenario, its cached computation and run-wide overrides."""

    scenario: Scenario
    computation: ScenarioComputation
    service: CurvatureService
    seed: Optional[int] = None


class Command(ABC):
    """Abstract base class for scenario commands."""

    # parameter names accepted inside `command <name> { ... }`
    params: Tuple[str, ...] = ()

    def __init__(self, name: str, description: str):
        self.name = name
        self.description = description

    @abstractmethod
    async def execute(self, context: RunContext, params: Dict[str, str]) -> Section:
        """
        Execute the command.

        Args:
            context: The run the command belongs to
            params: Parameters written in the scenario, values unparsed

        Returns:
            The report section for this command
        """
        pass

    def check_params(self, params: Dict[str, str]) -> None:
        unknown = sorted(set(params) - set(self.params))
        if unknown:
            allowed = ", ".join(self.params) or "none"
            raise ScenarioError(f"command {self.name} does not take {', '.join(unknown)} (allowed: {allowed})")


class VerdictCommand(Command):
    """A command whose section passes iff the observed outcome matches `expect`."""

    params = ("expect", "samples", "seed")

    def expect(self, params: Dict[str, str]) -> bool:
        value = params.get("expect", "holds").strip().lower()
        if value not in ("holds", "fails"):
            raise ScenarioError(f"expect must be 'holds' or 'fails', got {value!r}")
        return value == "holds"

    def scheme(self, context: RunContext, params: Dict[str, str]) -> SampleScheme:
        seed = context.seed if context.seed is not None else param_int(params, "seed")
        return SampleScheme.from_env(seed=seed, count=param_int(params, "samples"))


def param_int(params: Dict[str, str], key: str) -> Optional[int]:
    if key not in params:
        return None
    raw = params[key].strip()
    try:
        value = int(raw)
    except ValueError:
        raise ScenarioError(f"{key} must be an integer, got {raw!r}")
    if key == "samples" and value < 1:
        raise ScenarioError("samples must be positive")
    return value


def param_vector(params: Dict[str, str], key: str, size: Optional[int] = None) -> List[Fraction]:
    """Parse "(1, -1/2, 0)" into rationals."""
    if key not in params:
        raise ScenarioError(f"missing parameter {key}")
    match = _TUPLE.match(params[key].strip())
    if not match:
        raise ScenarioError(f"{key} must look like (a, b, ...), got {params[key]!r}")
    try:
        values = [parse_rat(part) for part in match.group(1).split(",")] if match.group(1) else []
    except ParseError as e:
        raise ScenarioError(f"{key}: {e.message}")
    if size is not None and len(values) != size:
        raise ScenarioError(f"{key} needs {size} entries, got {len(values)}")
    return values
