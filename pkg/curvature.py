"""Exact curvature of Walker metrics.

Two paths are implemented: closed-form Christoffel and curvature families for
Walker metrics, and the general Levi-Civita formulas, which serve as an oracle
for the former. Also covers the affine curvature of base connections,
covariant derivatives and the Einstein criterion for g_{nabla,Phi,c}.

Conventions (0-based total indices, base first):
    Gamma(a, b; c)       nabla_{d_a} d_b = Gamma(a, b; c) d_c
    R_{abc}^d            R(d_a, d_b) d_c = R_{abc}^d d_d
    R_{abcd}             g(R(d_a, d_b) d_c, d_d)
    rho(b, c)            sum_a R_{abc}^a
"""

import sys
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from typing import Dict, List, Optional, Tuple

import polymatrix
from expr import Poly
from extension import modified_extension_c
from geometry import (
    AffineConnection,
    Chart,
    SymTensor2Base,
    WalkerMetric,
    metric_full,
    metric_inverse,
)
from polymatrix import PolyMatrix

Index3 = Tuple[int, int, int]
Index4 = Tuple[int, int, int, int]
Index5 = Tuple[int, int, int, int, int]

HALF = Fraction(1, 2)
QUARTER = Fraction(1, 4)


def _put(store: dict, key, value: Poly) -> None:
    if value:
        store[key] = value


@dataclass(frozen=True)
class ChristoffelBundle:
    chart: Chart
    entries: Dict[Index3, Poly]

    def get(self, a: int, b: int, c: int) -> Poly:
        return self.entries.get((a, b, c), self.chart.zero())

    def __eq__(self, other) -> bool:
        if not isinstance(other, ChristoffelBundle):
            return NotImplemented
        return self.chart == other.chart and self.entries == other.entries

    def differences(self, other: "ChristoffelBundle") -> List[Index3]:
        keys = set(self.entries) | set(other.entries)
        return sorted(k for k in keys if self.get(*k) != other.get(*k))


@dataclass(frozen=True)
class RiemannTensor:
    """Mixed components R_{abc}^d and lowered components R_{abcd}; zeros are not stored."""

    chart: Chart
    mixed: Dict[Index4, Poly]
    lowered: Dict[Index4, Poly]

    def mixed_at(self, a: int, b: int, c: int, d: int) -> Poly:
        return self.mixed.get((a, b, c, d), self.chart.zero())

    def lowered_at(self, a: int, b: int, c: int, d: int) -> Poly:
        return self.lowered.get((a, b, c, d), self.chart.zero())

    def is_flat(self) -> bool:
        return not self.mixed

    def differences(self, other: "RiemannTensor") -> List[Index4]:
        keys = set(self.mixed) | set(other.mixed)
        return sorted(k for k in keys if self.mixed_at(*k) != other.mixed_at(*k))


@dataclass(frozen=True)
class CurvatureSummary:
    ricci: PolyMatrix
    scalar: Poly
    traceless: PolyMatrix


@dataclass(frozen=True)
class AffineCurvature:
    """R_{ijk}^l of a base connection, its Ricci tensor and the symmetric / skew parts."""

    chart: Chart
    R: Dict[Index4, Poly]
    ricci: PolyMatrix
    ricci_sym: PolyMatrix
    ricci_skew: PolyMatrix

    def is_flat(self) -> bool:
        return not self.R

    def is_ricci_flat(self) -> bool:
        return polymatrix.is_zero(self.ricci)


@dataclass(frozen=True)
class EinsteinReport:
    holds: bool
    residual: PolyMatrix
    criterion: Optional[bool]
    notes: List[str] = field(default_factory=list)


def christoffel_walker(m: WalkerMetric) -> ChristoffelBundle:
    """Christoffel symbols of a Walker metric from the three nonzero families."""
    chart, n, B = m.chart, m.n, m.B
    entries: Dict[Index3, Poly] = {}
    for i in range(n):
        for j in range(n):
            for k in range(n):
                _put(entries, (i, j, k), B[i][j].diff(n + k) * -HALF)

                mixed = B[j][k].diff(n + i) * HALF
                _put(entries, (n + i, j, n + k), mixed)
                _put(entries, (j, n + i, n + k), mixed)

                total = -B[i][j].diff(k) + B[i][k].diff(j) + B[j][k].diff(i)
                for s in range(n):
                    if B[k][s]:
                        total = total + B[k][s] * B[i][j].diff(n + s)
                _put(entries, (i, j, n + k), total * HALF)
    return ChristoffelBundle(chart, entries)


def christoffel_general(m: WalkerMetric) -> ChristoffelBundle:
    """Gamma(a, b; c) = 1/2 g^{cd} (d_a g_bd + d_b g_ad - d_d g_ab)."""
    chart, size = m.chart, m.dim
    g, ginv = metric_full(m), metric_inverse(m)
    entries: Dict[Index3, Poly] = {}
    for a in range(size):
        for b in range(a, size):
            lowered = []
            for d in range(size):
                lowered.append(g[b][d].diff(a) + g[a][d].diff(b) - g[a][b].diff(d))
            for c in range(size):
                total = chart.zero()
                for d in range(size):
                    if ginv[c][d] and lowered[d]:
                        total = total + ginv[c][d] * lowered[d]
                total = total * HALF
                _put(entries, (a, b, c), total)
                if a != b:
                    _put(entries, (b, a, c), total)
    return ChristoffelBundle(chart, entries)


def _lower(m: WalkerMetric, mixed: Dict[Index4, Poly]) -> Dict[Index4, Poly]:
    # R_{abcd} = sum_e R_{abc}^e g_ed
    g = metric_full(m)
    size = m.dim
    grouped: Dict[Index3, Dict[int, Poly]] = {}
    for (a, b, c, e), value in mixed.items():
        grouped.setdefault((a, b, c), {})[e] = value
    lowered: Dict[Index4, Poly] = {}
    for (a, b, c), row in grouped.items():
        for d in range(size):
            total = m.chart.zero()
            for e, value in row.items():
                if g[e][d]:
                    total = total + value * g[e][d]
            _put(lowered, (a, b, c, d), total)
    return lowered


def _mixed_component(gamma: ChristoffelBundle, a: int, b: int, c: int, d: int) -> Poly:
    size = gamma.chart.dim
    total = gamma.get(b, c, d).diff(a) - gamma.get(a, c, d).diff(b)
    for e in range(size):
        left = gamma.get(a, e, d)
        if left:
            total = total + left * gamma.get(b, c, e)
        right = gamma.get(b, e, d)
        if right:
            total = total - right * gamma.get(a, c, e)
    return total


def _fiber_family(B: PolyMatrix, contract, i: int, j: int, k: int, h: int) -> Poly:
    """R_{ijk}^{h'} of a Walker metric, all four indices on the base."""
    n = len(B)
    value = (
        B[i][h].diff(j).diff(k) - B[i][k].diff(j).diff(h) + B[j][k].diff(i).diff(h) - B[j][h].diff(i).diff(k)
    ) * -HALF
    bracket = Poly.zero(value.nvars)
    for s in range(n):
        bracket = bracket + B[i][k].diff(n + s) * (
            B[j][s].diff(h) - B[j][h].diff(s) - B[s][h].diff(j) - contract(h, j, s)
        )
        bracket = bracket - B[j][k].diff(n + s) * (
            B[i][s].diff(h) - B[i][h].diff(s) - B[s][h].diff(i) - contract(h, i, s)
        )
        bracket = bracket - B[j][h].diff(n + s) * (
            B[i][k].diff(s) - B[i][s].diff(k) - B[k][s].diff(i) - contract(s, i, k)
        )
        bracket = bracket + B[i][h].diff(n + s) * (
            B[j][k].diff(s) - B[j][s].diff(k) - B[k][s].diff(j) - contract(s, j, k)
        )
        bracket = bracket + (B[h][s] * B[i][k].diff(n + s)).diff(j) * 2
        bracket = bracket - (B[h][s] * B[j][k].diff(n + s)).diff(i) * 2
    return value - bracket * QUARTER


def riemann_general(m: WalkerMetric, gamma: ChristoffelBundle) -> RiemannTensor:
    """R_{abc}^d = d_a Gamma(b,c;d) - d_b Gamma(a,c;d) + Gamma(a,e;d) Gamma(b,c;e) - Gamma(b,e;d) Gamma(a,c;e)."""
    size = m.dim
    mixed: Dict[Index4, Poly] = {}
    for a, b in combinations(range(size), 2):
        for c in range(size):
            for d in range(size):
                value = _mixed_component(gamma, a, b, c, d)
                if value:
                    mixed[(a, b, c, d)] = value
                    mixed[(b, a, c, d)] = -value
    return RiemannTensor(m.chart, mixed, _lower(m, mixed))


def riemann_walker(m: WalkerMetric, gamma: ChristoffelBundle) -> RiemannTensor:
    """
    Curvature of a Walker metric from its six nonzero component families.

    With i, j, k, h base indices and primes marking fiber indices, the families
    are R_{ijk}^h, R_{ijk}^{h'}, R_{i'jk}^h, R_{i'jk}^{h'}, R_{ijk'}^{h'} and
    R_{i'jk'}^{h'}; everything else follows from antisymmetry in the first pair.

    Args:
        m: The Walker metric
        gamma: Its Christoffel symbols; the closed-form R_{ijk}^{h'} family is
            checked against the Levi-Civita value and disagreements are printed

    Returns:
        The full curvature tensor
    """
    n, B = m.n, m.B
    zero = m.chart.zero()
    mixed: Dict[Index4, Poly] = {}
    contracted: Dict[Index3, Poly] = {}

    def contract(h: int, a: int, b: int) -> Poly:
        # sum_t B_ht d_t' B_ab
        key = (h, a, b)
        if key not in contracted:
            total = zero
            for t in range(n):
                if B[h][t]:
                    total = total + B[h][t] * B[a][b].diff(n + t)
            contracted[key] = total
        return contracted[key]

    def put(a: int, b: int, c: int, d: int, value: Poly) -> None:
        if value:
            mixed[(a, b, c, d)] = value
            mixed[(b, a, c, d)] = -value

    for i in range(n):
        for j in range(n):
            for k in range(n):
                for h in range(n):
                    if i < j:
                        value = (B[j][k].diff(i) - B[i][k].diff(j)).diff(n + h) * -HALF
                        quad = zero
                        for s in range(n):
                            quad = quad + B[j][k].diff(n + s) * B[i][s].diff(n + h)
                            quad = quad - B[i][k].diff(n + s) * B[j][s].diff(n + h)
                        put(i, j, k, h, value + quad * QUARTER)

                        value = _fiber_family(B, contract, i, j, k, h)
                        expected = _mixed_component(gamma, i, j, k, n + h)
                        if value != expected:
                            print(
                                f"Warning: closed form R_{{{i + 1}{j + 1}{k + 1}}}^{{{h + 1}'}} = {value} "
                                f"disagrees with the Levi-Civita value {expected}",
                                file=sys.stderr,
                            )
                        put(i, j, k, n + h, value)

                        value = (B[j][h].diff(i) - B[i][h].diff(j)).diff(n + k) * HALF
                        quad = zero
                        for s in range(n):
                            quad = quad + B[j][s].diff(n + k) * B[i][h].diff(n + s)
                            quad = quad - B[i][s].diff(n + k) * B[j][h].diff(n + s)
                        put(i, j, n + k, n + h, value + quad * QUARTER)

                    put(n + i, j, k, h, B[j][k].diff(n + i).diff(n + h) * -HALF)

                    value = (B[j][h].diff(k) - B[j][k].diff(h)).diff(n + i) * HALF
                    weighted = zero
                    quad = zero
                    for s in range(n):
                        weighted = weighted + B[h][s] * B[j][k].diff(n + s)
                        quad = quad + B[j][k].diff(n + s) * B[s][h].diff(n + i)
                        quad = quad + B[k][s].diff(n + i) * B[j][h].diff(n + s)
                    put(n + i, j, k, n + h, value + weighted.diff(n + i) * HALF - quad * QUARTER)

                    put(n + i, j, n + k, n + h, B[j][h].diff(n + i).diff(n + k) * HALF)
    return RiemannTensor(m.chart, mixed, _lower(m, mixed))


def affine_curvature(nabla: AffineConnection) -> AffineCurvature:
    """
    Curvature of a base connection.

    R_{ijk}^l = d_i Gamma_jk^l - d_j Gamma_ik^l + Gamma_im^l Gamma_jk^m - Gamma_jm^l Gamma_ik^m,
    and rho(j, k) = sum_i R_{ijk}^i, the trace of Z -> R(Z, X) Y.
    """
    chart, n = nabla.chart, nabla.chart.n
    G = nabla.gamma
    R: Dict[Index4, Poly] = {}
    for i, j in combinations(range(n), 2):
        for k in range(n):
            for l in range(n):
                total = G(j, k, l).diff(i) - G(i, k, l).diff(j)
                for s in range(n):
                    total = total + G(i, s, l) * G(j, k, s) - G(j, s, l) * G(i, k, s)
                if total:
                    R[(i, j, k, l)] = total
                    R[(j, i, k, l)] = -total
    ricci = polymatrix.zeros(chart.nvars, n)
    for (i, j, k, l), value in R.items():
        if i == l:
            ricci[j][k] = ricci[j][k] + value
    ricci = polymatrix.freeze(ricci)
    transposed = polymatrix.transpose(ricci)
    sym = polymatrix.scale(polymatrix.add(ricci, transposed), HALF)
    skew = polymatrix.scale(polymatrix.sub(ricci, transposed), HALF)
    return AffineCurvature(chart, R, ricci, sym, skew)


def curvature_summary(m: WalkerMetric, R: RiemannTensor) -> CurvatureSummary:
    """Ricci tensor, scalar curvature and trace-free Ricci tensor rho - tau/(2n) g."""
    chart, size = m.chart, m.dim
    ricci = polymatrix.zeros(chart.nvars, size)
    for (a, b, c, d), value in R.mixed.items():
        if a == d:
            ricci[b][c] = ricci[b][c] + value
    ricci = polymatrix.freeze(ricci)
    ginv = metric_inverse(m)
    scalar = chart.zero()
    for b in range(size):
        for c in range(size):
            if ginv[b][c] and ricci[b][c]:
                scalar = scalar + ginv[b][c] * ricci[b][c]
    traceless = polymatrix.sub(ricci, _scale_by_poly(metric_full(m), scalar * Fraction(1, size)))
    return CurvatureSummary(ricci, scalar, traceless)


def _scale_by_poly(mat: PolyMatrix, factor: Poly) -> PolyMatrix:
    return tuple(tuple(entry * factor if entry else entry for entry in row) for row in mat)


def lift_base_block(chart: Chart, block: PolyMatrix) -> PolyMatrix:
    """Embed an n x n base tensor as the upper-left block of a 2n x 2n matrix (pullback by pi)."""
    n = chart.n
    rows = polymatrix.zeros(chart.nvars, chart.dim)
    for i in range(n):
        for j in range(n):
            rows[i][j] = block[i][j]
    return polymatrix.freeze(rows)


def trace_free_identity_residual(nabla: AffineConnection, Phi: SymTensor2Base, c) -> PolyMatrix:
    """rho_0 - (2 pi^* rho^{nabla,s} - 1/2 c (n - 1) pi^* Phi) for g_{nabla,Phi,c}; zero when the identity holds."""
    c = Fraction(c)
    chart = nabla.chart
    m = modified_extension_c(nabla, Phi, c)
    summary = curvature_summary(m, riemann_walker(m, christoffel_walker(m)))
    sym = affine_curvature(nabla).ricci_sym
    expected = polymatrix.sub(
        polymatrix.scale(sym, 2), polymatrix.scale(Phi.phi, c * (chart.n - 1) * HALF)
    )
    return polymatrix.sub(summary.traceless, lift_base_block(chart, expected))


def einstein_check(nabla: AffineConnection, Phi: SymTensor2Base, c) -> EinsteinReport:
    """
    Decide whether g_{nabla,Phi,c} is Einstein.

    The direct test is rho_0 == 0. When c != 0 and n >= 2 the closed-form
    criterion Phi == 4/(c(n-1)) rho^{nabla,s} is evaluated as well and any
    disagreement between the two is reported.

    Returns:
        EinsteinReport with the direct verdict, the rho_0 residual and the criterion outcome
    """
    c = Fraction(c)
    chart = nabla.chart
    m = modified_extension_c(nabla, Phi, c)
    summary = curvature_summary(m, riemann_walker(m, christoffel_walker(m)))
    holds = polymatrix.is_zero(summary.traceless)
    notes: List[str] = []
    criterion: Optional[bool] = None
    if c == 0 or chart.n < 2:
        notes.append("criterion inapplicable (needs c != 0 and n >= 2); direct rho_0 test used")
    else:
        target = polymatrix.scale(affine_curvature(nabla).ricci_sym, Fraction(4) / (c * (chart.n - 1)))
        criterion = Phi.phi == target
        if criterion != holds:
            message = f"closed-form criterion says {criterion}, direct rho_0 test says {holds}"
            notes.append(message)
            print(f"Warning: {message}", file=sys.stderr)
    return EinsteinReport(holds, summary.traceless, criterion, notes)


def covariant_derivative_riemann(
    m: WalkerMetric, gamma: ChristoffelBundle, R: RiemannTensor
) -> Dict[Index5, Poly]:
    """(nabla_e R)_{abcd}, keyed (e, a, b, c, d); zeros are not stored."""
    size = m.dim
    L = R.lowered_at
    G = gamma.get
    result: Dict[Index5, Poly] = {}
    for e in range(size):
        for a, b in combinations(range(size), 2):
            for c, d in combinations(range(size), 2):
                total = L(a, b, c, d).diff(e)
                for f in range(size):
                    for symbol, value in (
                        (G(e, a, f), L(f, b, c, d)),
                        (G(e, b, f), L(a, f, c, d)),
                        (G(e, c, f), L(a, b, f, d)),
                        (G(e, d, f), L(a, b, c, f)),
                    ):
                        if symbol and value:
                            total = total - symbol * value
                if total:
                    result[(e, a, b, c, d)] = total
                    result[(e, b, a, c, d)] = -total
                    result[(e, a, b, d, c)] = -total
                    result[(e, b, a, d, c)] = total
    return result


def covariant_derivative_endo(
    m: WalkerMetric, gamma: ChristoffelBundle, J: PolyMatrix
) -> Dict[Index3, Poly]:
    """(nabla_a J)^b_c keyed (a, b, c), where J[b][c] is the d_b component of J(d_c)."""
    size = m.dim
    G = gamma.get
    result: Dict[Index3, Poly] = {}
    for a in range(size):
        for b in range(size):
            for c in range(size):
                total = J[b][c].diff(a)
                for d in range(size):
                    if J[d][c]:
                        total = total + G(a, d, b) * J[d][c]
                    if J[b][d]:
                        total = total - G(a, c, d) * J[b][d]
                _put(result, (a, b, c), total)
    return result


def riemann_symmetry_violations(R: RiemannTensor) -> List[Index4]:
    """Index tuples where R_{abcd} = -R_{bacd} = -R_{abdc} = R_{cdab} fails."""
    size = R.chart.dim
    L = R.lowered_at
    bad = []
    for a in range(size):
        for b in range(size):
            for c in range(size):
                for d in range(size):
                    value = L(a, b, c, d)
                    if value != -L(b, a, c, d) or value != -L(a, b, d, c) or value != L(c, d, a, b):
                        bad.append((a, b, c, d))
    return bad


def first_bianchi_violations(R: RiemannTensor) -> List[Index4]:
    size = R.chart.dim
    L = R.lowered_at
    bad = []
    for a, b, c in combinations(range(size), 3):
        for d in range(size):
            if L(a, b, c, d) + L(b, c, a, d) + L(c, a, b, d):
                bad.append((a, b, c, d))
    return bad


def second_bianchi_violations(chart: Chart, nablaR: Dict[Index5, Poly]) -> List[Index5]:
    """Index tuples (a, b, c, d, e) where nabla_a R_{bcde} + nabla_b R_{cade} + nabla_c R_{abde} != 0."""
    zero = chart.zero()
    size = chart.dim

    def D(*key):
        return nablaR.get(key, zero)

    bad = []
    for a, b, c in combinations(range(size), 3):
        for d, e in combinations(range(size), 2):
            if D(a, b, c, d, e) + D(b, c, a, d, e) + D(c, a, b, d, e):
                bad.append((a, b, c, d, e))
    return bad


def walker_vanishing_violations(gamma: ChristoffelBundle) -> List[Index3]:
    """Nonzero Christoffel symbols that a Walker metric must not have."""
    n = gamma.chart.n
    bad = []
    for (a, b, c), value in gamma.entries.items():
        fiber_lower = (a >= n) + (b >= n)
        if fiber_lower == 2 or (fiber_lower == 1 and c < n):
            bad.append((a, b, c))
    return sorted(bad)
