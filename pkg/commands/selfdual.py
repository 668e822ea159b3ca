"""Selfdual command - anti-self-dual Weyl curvature of a four-dimensional Walker metric."""

import sys
from typing import Dict

from commands.base_command import RunContext, VerdictCommand
from errors import PatternViolation
from expr import format_poly
from fourdim import TWO_FORM_BASIS, selfdual_fit, weyl
from report import Section, check_section


class SelfDualCommand(VerdictCommand):
    params = ("expect",)

    def __init__(self):
        super().__init__("selfdual", "Checks W_- = 0 and the self-dual canonical form")

    async def execute(self, context: RunContext, params: Dict[str, str]) -> Section:
        self.check_params(params)
        return await context.service.run(self._check, context, self.expect(params))

    def _check(self, context: RunContext, expect: bool) -> Section:
        comp = context.computation
        m = comp.metric
        decomposition = weyl(m, comp.summary, comp.riemann)
        holds = decomposition.is_self_dual()
        lines = []
        nonzero = {}
        labels = ["".join(m.chart.index_label(a) for a in pair) for pair in TWO_FORM_BASIS]
        for r, row in enumerate(decomposition.Wminus):
            for s, value in enumerate(row):
                if value:
                    nonzero[f"{labels[r]},{labels[s]}"] = format_poly(value)
        if nonzero:
            lines.append(f"nonzero entries of W_-: {len(nonzero)}")
            lines.extend(f"  W_-[{k}] = {v}" for k, v in list(nonzero.items())[:6])
        else:
            lines.append("W_- = 0")
        try:
            selfdual_fit(m)
            fits = True
            lines.append("canonical self-dual form: fits")
        except PatternViolation as e:
            fits = False
            lines.append(f"canonical self-dual form: {e}")
        if fits != holds:
            message = f"canonical form {'fits' if fits else 'does not fit'} but W_- {'vanishes' if holds else 'does not vanish'}"
            print(f"Warning: {message}", file=sys.stderr)
            lines.append(message)
        values = {"wminus": nonzero, "fits": fits}
        return check_section(self.name, "self-dual", holds, expect, lines, values)
