"""Metric command - prints the Walker block B and det g."""

from typing import Dict

import polymatrix
from commands.base_command import Command, RunContext
from expr import format_poly
from geometry import metric_full
from report import Section, Status


class MetricCommand(Command):
    """Command that displays the metric of the scenario."""

    def __init__(self):
        super().__init__("metric", "Shows the Walker block B and the determinant of g")

    async def execute(self, context: RunContext, params: Dict[str, str]) -> Section:
        self.check_params(params)
        return await context.service.run(self._describe, context)

    def _describe(self, context: RunContext) -> Section:
        m = context.computation.metric
        lines = []
        entries = {}
        for i in range(m.n):
            for j in range(i, m.n):
                text = format_poly(m.B[i][j])
                entries[f"{i + 1},{j + 1}"] = text
                lines.append(f"B[{i + 1},{j + 1}] = {text}")
        det = format_poly(polymatrix.determinant(metric_full(m)))
        lines.append(f"det g = {det}")
        title = f"Walker metric on T*R^{m.n} ({context.scenario.construction})"
        return Section(self.name, Status.INFO, title, lines, {"B": entries, "det": det})
