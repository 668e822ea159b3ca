"""Ivanov-Petrova command - skew-symmetric curvature operators of sampled 2-planes."""

from typing import Dict

from commands.base_command import RunContext, VerdictCommand
from report import Section, verdict_section
from spectral import skew_curvature_verdict


class IvanovPetrovaCommand(VerdictCommand):
    def __init__(self):
        super().__init__("ip", "Samples normalized skew curvature operators of non-degenerate planes")

    async def execute(self, context: RunContext, params: Dict[str, str]) -> Section:
        self.check_params(params)
        expect, scheme = self.expect(params), self.scheme(context, params)
        comp = context.computation
        verdict = await context.service.run(lambda: skew_curvature_verdict(comp.metric, comp.riemann, scheme))
        return verdict_section(self.name, verdict, expect)
