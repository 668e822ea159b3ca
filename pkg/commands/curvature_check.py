"""Curvature command - Levi-Civita data, oracle agreement and curvature identities."""

from typing import Dict, List

from commands.base_command import RunContext, VerdictCommand
from curvature import (
    christoffel_general,
    first_bianchi_violations,
    riemann_general,
    riemann_symmetry_violations,
    second_bianchi_violations,
    walker_vanishing_violations,
)
from errors import ScenarioError
from expr import format_poly
from fixtures import REFERENCE_TABLES, compare_reference, fixture_name
from report import Section, check_section


def _label(chart, key) -> str:
    return ",".join(chart.index_label(a) for a in key)


class CurvatureCommand(VerdictCommand):
    """Checks the Walker curvature formulas against the general Levi-Civita computation."""

    params = ("expect", "compare")

    def __init__(self):
        super().__init__("curvature", "Compares Walker and general curvature, checks symmetries and Bianchi identities")

    async def execute(self, context: RunContext, params: Dict[str, str]) -> Section:
        self.check_params(params)
        table = params.get("compare")
        if table is not None:
            table = fixture_name(table)
            if table not in REFERENCE_TABLES:
                raise ScenarioError(f"no reference table {table!r} (available: {', '.join(REFERENCE_TABLES)})")
        expect = self.expect(params)
        return await context.service.run(self._check, context, table, expect)

    def _check(self, context: RunContext, table, expect: bool) -> Section:
        comp = context.computation
        m, gamma, R = comp.metric, comp.gamma, comp.riemann
        chart = m.chart
        lines: List[str] = []
        problems = 0

        christoffel_diff = gamma.differences(christoffel_general(m))
        riemann_diff = R.differences(riemann_general(m, christoffel_general(m)))
        checks = [
            ("Christoffel symbols differing from the general formula", christoffel_diff),
            ("curvature components differing from the general formula", riemann_diff),
            ("Christoffel symbols that must vanish on a Walker metric", walker_vanishing_violations(gamma)),
            ("curvature symmetry violations", riemann_symmetry_violations(R)),
            ("first Bianchi violations", first_bianchi_violations(R)),
            ("second Bianchi violations", second_bianchi_violations(chart, comp.nabla_riemann)),
        ]
        counts = {}
        for label, found in checks:
            counts[label] = len(found)
            problems += len(found)
            lines.append(f"{label}: {len(found)}")
            for key in found[:3]:
                lines.append(f"  at ({_label(chart, key)})")

        mismatches: List[str] = []
        if table is not None:
            mismatches = compare_reference(R, REFERENCE_TABLES[table])
            lines.append(f"reference {table} components disagreeing: {len(mismatches)}")
            lines.extend(f"  {message}" for message in mismatches)

        summary = comp.summary
        scalar = format_poly(summary.scalar)
        lines.append(f"flat: {'yes' if R.is_flat() else 'no'}")
        lines.append(f"scalar curvature = {scalar}")
        ricci = {}
        for a in range(m.dim):
            for b in range(a, m.dim):
                if summary.ricci[a][b]:
                    text = format_poly(summary.ricci[a][b])
                    ricci[_label(chart, (a, b))] = text
                    lines.append(f"Ricci[{_label(chart, (a, b))}] = {text}")
        if not ricci:
            lines.append("Ricci flat")
        values = {"counts": counts, "mismatches": mismatches, "scalar": scalar, "ricci": ricci}
        return check_section(self.name, "curvature", problems == 0, expect, lines, values)
