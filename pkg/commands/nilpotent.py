"""Nilpotent command - Jacobi operators of sampled null vectors."""

from typing import Dict

from commands.base_command import RunContext, VerdictCommand
from report import Section, verdict_section
from spectral import null_nilpotency_verdict


class NilpotentCommand(VerdictCommand):
    def __init__(self):
        super().__init__("nilpotent", "Checks that Jacobi operators of null vectors are nilpotent and reports their indices")

    async def execute(self, context: RunContext, params: Dict[str, str]) -> Section:
        self.check_params(params)
        expect, scheme = self.expect(params), self.scheme(context, params)
        comp = context.computation
        verdict = await context.service.run(lambda: null_nilpotency_verdict(comp.metric, comp.riemann, scheme))
        return verdict_section(self.name, verdict, expect)
