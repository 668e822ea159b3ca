"""Para-Kaehler command - the structure J of g_{nabla,c} and its para-holomorphic sectional curvature."""

from typing import Dict

import polymatrix
from commands.base_command import RunContext, VerdictCommand
from expr import format_rat
from parakaehler import (
    build_para_structure,
    check_closed,
    check_parallel,
    compatibility_residual,
    eigen_split_ranks,
    is_involution,
    nijenhuis,
    para_sectional_check,
    para_sectional_residual,
)
from report import Section, check_section


class ParaKaehlerCommand(VerdictCommand):
    """Runs the five structure checks, the exact sectional identity and a sampled recovery of c."""

    def __init__(self):
        super().__init__("parakaehler", "Checks the para-Kaehler structure and constant para-holomorphic sectional curvature")

    async def execute(self, context: RunContext, params: Dict[str, str]) -> Section:
        self.check_params(params)
        expect, scheme = self.expect(params), self.scheme(context, params)
        return await context.service.run(self._check, context, scheme, expect)

    def _check(self, context: RunContext, scheme, expect: bool) -> Section:
        comp = context.computation
        m, R = comp.metric, comp.riemann
        structure = build_para_structure(m)
        J = structure.J
        checks = {
            "J^2 = id": is_involution(J),
            "g(JX, Y) + g(X, JY) = 0": polymatrix.is_zero(compatibility_residual(m, J)),
            "Nijenhuis tensor vanishes": not nijenhuis(J),
            "d Omega = 0": check_closed(structure.omega),
            "nabla J = 0": check_parallel(m, comp.gamma, J),
            "R(JX, X) X = c g(X, X) JX": not para_sectional_residual(m, R, J, structure.c),
        }
        lines = [f"c read from the metric = {format_rat(structure.c)}"]
        lines += [f"{label}: {'yes' if ok else 'no'}" for label, ok in checks.items()]
        points = scheme.points(m)
        plus, minus = eigen_split_ranks(J, points[0])
        lines.append(f"rank(J - id) = {plus}, rank(J + id) = {minus} at the first sampled point")
        verdict, recovered = para_sectional_check(m, R, J, scheme, structure.c)
        lines.append(f"sampled check on {verdict.samples} unit vectors: {'holds' if verdict.holds else 'fails'}")
        lines.extend(verdict.details)
        lines.extend(f"witness: {w}" for w in verdict.witnesses)
        holds = all(checks.values()) and verdict.holds
        values = {
            "c": format_rat(structure.c),
            "recovered_c": format_rat(recovered) if recovered is not None else None,
            "checks": checks,
            "details": list(verdict.details),
        }
        return check_section(self.name, "para-kaehler", holds, expect, lines, values)
