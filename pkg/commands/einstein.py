"""Einstein command - rho_0 = 0, with the closed-form criterion when (nabla, Phi, c) are known."""

from typing import Dict

import polymatrix
from commands.base_command import RunContext, VerdictCommand
from curvature import einstein_check
from expr import format_poly
from report import Section, check_section


class EinsteinCommand(VerdictCommand):
    """Decides whether the metric is Einstein."""

    params = ("expect",)

    def __init__(self):
        super().__init__("einstein", "Checks the Einstein condition")

    async def execute(self, context: RunContext, params: Dict[str, str]) -> Section:
        self.check_params(params)
        return await context.service.run(self._check, context, self.expect(params))

    def _check(self, context: RunContext, expect: bool) -> Section:
        comp = context.computation
        data = context.scenario.einstein_data()
        values = {"scalar": format_poly(comp.summary.scalar)}
        lines = [f"scalar curvature = {values['scalar']}"]
        if data is None:
            holds = polymatrix.is_zero(comp.summary.traceless)
            lines.append("direct test: traceless Ricci tensor " + ("vanishes" if holds else "does not vanish"))
            values["criterion"] = None
        else:
            report = einstein_check(*data)
            holds = report.holds
            lines.append("direct test: traceless Ricci tensor " + ("vanishes" if holds else "does not vanish"))
            if report.criterion is not None:
                lines.append(f"closed-form criterion Phi = 4/(c(n-1)) rho^s: {'yes' if report.criterion else 'no'}")
            lines.extend(report.notes)
            values["criterion"] = report.criterion
        return check_section(self.name, "einstein", holds, expect, lines, values)
