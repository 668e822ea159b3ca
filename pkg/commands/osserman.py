"""Osserman command - constant reduced Jacobi spectrum on sampled unit vectors."""

from typing import Dict

from commands.base_command import RunContext, VerdictCommand
from report import Section, verdict_section
from spectral import osserman_verdict


class OssermanCommand(VerdictCommand):
    def __init__(self):
        super().__init__("osserman", "Samples reduced Jacobi operators and compares their characteristic polynomials")

    async def execute(self, context: RunContext, params: Dict[str, str]) -> Section:
        self.check_params(params)
        expect, scheme = self.expect(params), self.scheme(context, params)
        comp = context.computation
        verdict = await context.service.run(lambda: osserman_verdict(comp.metric, comp.riemann, scheme))
        return verdict_section(self.name, verdict, expect)
