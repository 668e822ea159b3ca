"""Jordan command - constant Jordan normal form of reduced Jacobi operators per causal class."""

from typing import Dict

from commands.base_command import RunContext, VerdictCommand
from report import Section, verdict_section
from spectral import jordan_osserman_verdict


class JordanCommand(VerdictCommand):
    def __init__(self):
        super().__init__("jordan", "Compares Jordan profiles of sampled reduced Jacobi operators")

    async def execute(self, context: RunContext, params: Dict[str, str]) -> Section:
        self.check_params(params)
        expect, scheme = self.expect(params), self.scheme(context, params)
        comp = context.computation
        verdict = await context.service.run(lambda: jordan_osserman_verdict(comp.metric, comp.riemann, scheme))
        return verdict_section(self.name, verdict, expect)
