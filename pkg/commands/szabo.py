"""Szabo command - spectra of (nabla_X R)(., X) X on sampled unit vectors."""

from typing import Dict, List, Tuple

from commands.base_command import RunContext, VerdictCommand
from errors import ScenarioError
from report import Section, verdict_section
from spectral import SzaboVerdict, szabo_verdict

CHOICES = {"nilpotent": ("holds", "fails"), "jordan": ("constant", "varies")}


def szabo_expectations(params: Dict[str, str]) -> Dict[str, str]:
    wanted = {}
    for key, choices in CHOICES.items():
        if key in params:
            value = params[key].strip().lower()
            if value not in choices:
                raise ScenarioError(f"{key} must be one of {', '.join(choices)}, got {value!r}")
            wanted[key] = value
    return wanted


def szabo_checks(verdict: SzaboVerdict, wanted: Dict[str, str]) -> List[Tuple[str, str, str]]:
    """
    Extra expectations on the sampled Szabo operators.

    `nilpotent` holds when every operator is nilpotent and at least one is nonzero;
    `jordan` is "varies" when the samples show more than one Jordan profile.
    """
    observed = {
        "nilpotent": "holds" if verdict.nilpotent and verdict.nonzero_count else "fails",
        "jordan": "varies" if verdict.jordan_varies else "constant",
    }
    return [(key, observed[key], value) for key, value in wanted.items()]


class SzaboCommand(VerdictCommand):
    params = VerdictCommand.params + tuple(CHOICES)

    def __init__(self):
        super().__init__("szabo", "Samples Szabo operators and compares their characteristic polynomials")

    async def execute(self, context: RunContext, params: Dict[str, str]) -> Section:
        self.check_params(params)
        expect, scheme = self.expect(params), self.scheme(context, params)
        wanted = szabo_expectations(params)
        comp = context.computation
        verdict = await context.service.run(lambda: szabo_verdict(comp.metric, comp.nabla_riemann, scheme))
        return verdict_section(self.name, verdict, expect, szabo_checks(verdict, wanted))
