"""Jacobi command - the Jacobi operator at an explicit point and vector."""

from typing import Dict

from commands.base_command import RunContext, VerdictCommand, param_vector
from expr import format_rat
from geometry import PointAssignment
from report import Section, Status, check_section
from spectral import char_poly, eigen_product, is_zero_matrix, jacobi_at, jordan_analyze, scale_matrix


def _row(values) -> str:
    return "[" + ", ".join(format_rat(v) for v in values) + "]"


class JacobiCommand(VerdictCommand):
    """
    Prints J(v) = R(., v) v at `point` for `vector`.

    With `roots = (...)` the section becomes a check that the product of
    (J~ - lambda) over the roots vanishes, J~ being the reduced operator for
    non-null v and J itself for null v.
    """

    params = ("point", "vector", "roots", "expect")

    def __init__(self):
        super().__init__("jacobi", "Shows the Jacobi operator, its characteristic polynomial and Jordan profile")

    async def execute(self, context: RunContext, params: Dict[str, str]) -> Section:
        self.check_params(params)
        m = context.computation.metric
        point = param_vector(params, "point", m.chart.nvars)
        vector = param_vector(params, "vector", m.dim)
        roots = param_vector(params, "roots") if "roots" in params else None
        expect = self.expect(params)
        return await context.service.run(self._describe, context, point, vector, roots, expect)

    def _describe(self, context: RunContext, point, vector, roots, expect: bool) -> Section:
        comp = context.computation
        m = comp.metric
        pt = PointAssignment(m.chart, point)
        v, J = jacobi_at(m, comp.riemann, pt, vector)
        lines = [f"g(v, v) = {format_rat(v.eps)}", "J(v) ="]
        lines.extend(f"  {_row(row)}" for row in J)
        values = {"eps": format_rat(v.eps), "matrix": [[format_rat(x) for x in row] for row in J]}
        cp = char_poly(J)
        lines.append(f"char poly: {cp}")
        values["char_poly"] = str(cp)
        operator = J
        if v.eps:
            operator = scale_matrix(J, 1 / v.eps)
            reduced = char_poly(operator)
            lines.append(f"reduced char poly: {reduced}")
            values["reduced_char_poly"] = str(reduced)
        profile = jordan_analyze(operator)
        lines.append(f"Jordan profile: {profile.describe()}")
        values["jordan"] = profile.describe()
        title = f"Jacobi operator at ({', '.join(format_rat(x) for x in point)})"
        if roots is None:
            return Section(self.name, Status.INFO, title, lines, values)
        product = eigen_product(operator, roots)
        vanishes = is_zero_matrix(product)
        lines.append(f"product over roots ({', '.join(format_rat(r) for r in roots)}): {'zero' if vanishes else 'nonzero'}")
        if not vanishes:
            size = len(product)
            first = next((r, c) for r in range(size) for c in range(size) if product[r][c])
            label = ",".join(m.chart.index_label(a) for a in first)
            lines.append(f"  first nonzero entry [{label}] = {format_rat(product[first[0]][first[1]])}")
        return check_section(self.name, "root product", vanishes, expect, lines, values)
