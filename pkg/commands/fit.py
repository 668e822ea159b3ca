"""Fit command - reads the canonical-form letters off a four-dimensional Walker metric."""

from typing import Dict

from commands.base_command import RunContext, VerdictCommand
from errors import PatternViolation
from expr import format_poly
from fourdim import selfdual_fit
from report import Section, check_section


class FitCommand(VerdictCommand):
    params = ("expect",)

    def __init__(self):
        super().__init__("fit", "Prints the coefficient functions of the self-dual canonical form")

    async def execute(self, context: RunContext, params: Dict[str, str]) -> Section:
        self.check_params(params)
        return await context.service.run(self._fit, context, self.expect(params))

    def _fit(self, context: RunContext, expect: bool) -> Section:
        m = context.computation.metric
        try:
            fit = selfdual_fit(m)
        except PatternViolation as e:
            lines = [str(e)]
            values = {"entry": e.entry, "monomial": e.monomial}
            return check_section(self.name, "canonical form", False, expect, lines, values)
        letters = {name: format_poly(value) for name, value in fit.letters().items()}
        lines = [f"{name} = {text}" for name, text in letters.items() if text != "0"]
        return check_section(self.name, "canonical form", True, expect, lines, {"letters": letters})
