"""Four-dimensional Walker metrics: Hodge star, Weyl splitting and self-duality.

Two-forms are 6-vectors of components on the basis dx^a ^ dx^b, a < b, in the
index order x1, x2, x1', x2'. The orientation is dx^1 ^ dx^2 ^ dx^1' ^ dx^2'
and, since |det g| = 1, the metric volume form is the coordinate one.
"""

from dataclasses import dataclass, fields
from fractions import Fraction
from itertools import combinations, permutations
from typing import Dict, List, Tuple

import polymatrix
from curvature import (
    CurvatureSummary,
    RiemannTensor,
    affine_curvature,
    christoffel_walker,
    curvature_summary,
    riemann_walker,
)
from errors import PatternViolation, PreconditionError
from expr import Poly, fiber_monomial_name, grlex_key, split_fiber
from extension import modified_extension_c
from geometry import AffineConnection, Chart, SymTensor2Base, WalkerMetric, metric_full, metric_inverse
from polymatrix import PolyMatrix

TWO_FORM_BASIS: List[Tuple[int, int]] = list(combinations(range(4), 2))

HALF = Fraction(1, 2)


def _levi_civita() -> Dict[Tuple[int, int, int, int], int]:
    signs = {}
    for perm in permutations(range(4)):
        inversions = sum(1 for x, y in combinations(perm, 2) if x > y)
        signs[perm] = -1 if inversions % 2 else 1
    return signs


EPSILON = _levi_civita()


@dataclass(frozen=True)
class WeylDecomposition:
    """The Weyl tensor as a Lambda^2 endomorphism, its self-dual and anti-self-dual parts."""

    components: Dict[Tuple[int, int, int, int], Poly]
    W: PolyMatrix
    Wplus: PolyMatrix
    Wminus: PolyMatrix
    star: PolyMatrix

    def is_self_dual(self) -> bool:
        return polymatrix.is_zero(self.Wminus)


@dataclass(frozen=True)
class SelfDualFit:
    """
    Coefficient functions of the self-dual canonical form.

    a = x1'^3 A + x1'^2 B + x1'^2 x2' C + x1' x2' D + x1' P + x2' Q + xi
    b = x2'^3 C + x2'^2 E + x1' x2'^2 A + x1' x2' F + x1' S + x2' T + eta
    c = 1/2 x1'^2 F + 1/2 x2'^2 D + x1'^2 x2' A + x1' x2'^2 C
        + 1/2 x1' x2' (B + E) + x1' U + x2' V + gamma

    where a = B11, b = B22, c = B12 and every letter depends on (x1, x2) only.
    """

    chart: Chart
    A: Poly
    B: Poly
    C: Poly
    D: Poly
    E: Poly
    F: Poly
    P: Poly
    Q: Poly
    S: Poly
    T: Poly
    U: Poly
    V: Poly
    xi: Poly
    eta: Poly
    gamma: Poly

    def letters(self) -> Dict[str, Poly]:
        return {f.name: getattr(self, f.name) for f in fields(self) if f.name != "chart"}

    def rebuild(self) -> Tuple[Poly, Poly, Poly]:
        p1, p2 = self.chart.fiber(0), self.chart.fiber(1)
        a = (
            p1 ** 3 * self.A + p1 ** 2 * self.B + p1 ** 2 * p2 * self.C + p1 * p2 * self.D
            + p1 * self.P + p2 * self.Q + self.xi
        )
        b = (
            p2 ** 3 * self.C + p2 ** 2 * self.E + p1 * p2 ** 2 * self.A + p1 * p2 * self.F
            + p1 * self.S + p2 * self.T + self.eta
        )
        c = (
            p1 ** 2 * self.F * HALF + p2 ** 2 * self.D * HALF + p1 ** 2 * p2 * self.A
            + p1 * p2 ** 2 * self.C + p1 * p2 * (self.B + self.E) * HALF
            + p1 * self.U + p2 * self.V + self.gamma
        )
        return a, b, c

    def to_metric(self) -> WalkerMetric:
        a, b, c = self.rebuild()
        return WalkerMetric.from_rows(self.chart, [[a, c], [c, b]])


def _four(m: WalkerMetric, what: str) -> Chart:
    m.chart.require(2, what)
    return m.chart


def hodge_star(m: WalkerMetric) -> PolyMatrix:
    """
    Matrix of the Hodge star on two-forms.

    Entry [(c, d)][(p, q)] is sum_{a,b} g^{ap} g^{bq} eps_{abcd}, so the matrix
    maps the component vector of beta to that of *beta.
    """
    chart = _four(m, "hodge_star")
    ginv = metric_inverse(m)
    rows = []
    for c, d in TWO_FORM_BASIS:
        row = []
        for p, q in TWO_FORM_BASIS:
            total = chart.zero()
            for (a, b, cc, dd), sign in EPSILON.items():
                if (cc, dd) != (c, d):
                    continue
                if ginv[a][p] and ginv[b][q]:
                    total = total + ginv[a][p] * ginv[b][q] * sign
            row.append(total)
        rows.append(tuple(row))
    return tuple(rows)


def _kulkarni_nomizu(h: PolyMatrix, k: PolyMatrix, a: int, b: int, c: int, d: int) -> Poly:
    return h[a][c] * k[b][d] + h[b][d] * k[a][c] - h[a][d] * k[b][c] - h[b][c] * k[a][d]


def weyl(m: WalkerMetric, summary: CurvatureSummary, R: RiemannTensor) -> WeylDecomposition:
    """
    Weyl tensor by Kulkarni-Nomizu subtraction, then W_+- = 1/2 (W +- *W).

    The (0,4) curvature in the subtraction is g(R(d_a, d_b) d_d, d_c), so that
    constant curvature gives tau/24 (g o g) and W = 0.
    """
    chart = _four(m, "weyl")
    g, ginv = metric_full(m), metric_inverse(m)
    rho0 = summary.traceless
    scalar_part = summary.scalar * Fraction(1, 24)
    components: Dict[Tuple[int, int, int, int], Poly] = {}
    for a in range(4):
        for b in range(4):
            for c in range(4):
                for d in range(4):
                    value = (
                        R.lowered_at(a, b, d, c)
                        - _kulkarni_nomizu(rho0, g, a, b, c, d) * HALF
                        - scalar_part * _kulkarni_nomizu(g, g, a, b, c, d)
                    )
                    if value:
                        components[(a, b, c, d)] = value
    zero = chart.zero()
    rows = []
    for a, b in TWO_FORM_BASIS:
        row = []
        for p, q in TWO_FORM_BASIS:
            total = zero
            for c in range(4):
                if not ginv[c][p]:
                    continue
                for d in range(4):
                    value = components.get((a, b, c, d))
                    if value and ginv[d][q]:
                        total = total + value * ginv[c][p] * ginv[d][q]
            row.append(total)
        rows.append(tuple(row))
    W = tuple(rows)
    star = hodge_star(m)
    star_w = polymatrix.matmul(star, W)
    Wplus = polymatrix.scale(polymatrix.add(W, star_w), HALF)
    Wminus = polymatrix.scale(polymatrix.sub(W, star_w), HALF)
    return WeylDecomposition(components, W, Wplus, Wminus, star)


def weyl_trace(m: WalkerMetric, decomposition: WeylDecomposition) -> PolyMatrix:
    """g^{ac} W_{abcd}; the zero matrix for a genuine Weyl tensor."""
    chart = _four(m, "weyl_trace")
    ginv = metric_inverse(m)
    rows = polymatrix.zeros(chart.nvars, 4)
    for (a, b, c, d), value in decomposition.components.items():
        if ginv[a][c]:
            rows[b][d] = rows[b][d] + ginv[a][c] * value
    return polymatrix.freeze(rows)


def selfdual_check(m: WalkerMetric) -> Tuple[bool, PolyMatrix]:
    """True iff the anti-self-dual Weyl part vanishes; also returns W_-."""
    _four(m, "selfdual_check")
    R = riemann_walker(m, christoffel_walker(m))
    decomposition = weyl(m, curvature_summary(m, R), R)
    return decomposition.is_self_dual(), decomposition.Wminus


_A_SLOTS = {(3, 0): "A", (2, 0): "B", (2, 1): "C", (1, 1): "D", (1, 0): "P", (0, 1): "Q", (0, 0): "xi"}
_B_SLOTS = {(0, 2): "E", (1, 1): "F", (1, 0): "S", (0, 1): "T", (0, 0): "eta"}
_C_SLOTS = {(1, 0): "U", (0, 1): "V", (0, 0): "gamma"}


def _first_residual(residual: Poly, entry: str) -> PatternViolation:
    groups = split_fiber(residual, 2)
    monomial = max(groups, key=grlex_key)
    return PatternViolation(entry, fiber_monomial_name(monomial))


def selfdual_fit(m: WalkerMetric) -> SelfDualFit:
    """
    Read the canonical-form letters off the fiber-monomial coefficients of B.

    Raises:
        PatternViolation: a fiber monomial outside the canonical form occurs;
            carries the entry (a, b or c) and the monomial, e.g. "x2p^3"
    """
    chart = _four(m, "selfdual_fit")
    zero = chart.zero()
    letters: Dict[str, Poly] = {}
    for block, slots in ((m.B[0][0], _A_SLOTS), (m.B[1][1], _B_SLOTS), (m.B[0][1], _C_SLOTS)):
        groups = split_fiber(block, 2)
        for exponent, name in slots.items():
            letters[name] = groups.get(exponent, zero)
    fit = SelfDualFit(chart, **letters)
    for entry, actual, rebuilt in zip("abc", (m.B[0][0], m.B[1][1], m.B[0][1]), fit.rebuild()):
        residual = actual - rebuilt
        if residual:
            raise _first_residual(residual, entry)
    return fit


def ricci_flat_connection(chart: Chart, phi: Poly) -> AffineConnection:
    """Surface connection with Gamma_11^1 = -d_1 phi, Gamma_22^2 = d_2 phi; its Ricci tensor is skew."""
    chart.require(2, "ricci_flat_connection")
    chart.check_poly(phi, "phi", base_only=True)
    return AffineConnection.from_entries(chart, {(0, 0, 0): -phi.diff(0), (1, 1, 1): phi.diff(1)})


def build_ricci_flat_selfdual(phi: Poly, Phi: SymTensor2Base) -> WalkerMetric:
    """Riemannian extension g_nabla + pi^* Phi of ricci_flat_connection(phi): Ricci flat and self-dual."""
    nabla = ricci_flat_connection(Phi.chart, phi)
    return modified_extension_c(nabla, Phi, 0)


def build_type_ii(nabla: AffineConnection, tau) -> WalkerMetric:
    """
    Einstein self-dual metric tau/6 iota id o iota id + g_nabla + 24/tau pi^* rho^{nabla,s}.

    Args:
        nabla: Non-flat surface connection
        tau: Nonzero scalar curvature of the result

    Returns:
        The Walker metric, whose Jacobi operators have a repeated nonzero eigenvalue
    """
    nabla.chart.require(2, "build_type_ii")
    tau = Fraction(tau)
    if tau == 0:
        raise PreconditionError("build_type_ii needs tau != 0")
    curvature = affine_curvature(nabla)
    if curvature.is_flat():
        raise PreconditionError("build_type_ii needs a non-flat connection (flat gives the degenerate Type Ia case)")
    Phi = SymTensor2Base(nabla.chart, curvature.ricci_sym).scaled(Fraction(24) / tau)
    return modified_extension_c(nabla, Phi, tau / 6)
