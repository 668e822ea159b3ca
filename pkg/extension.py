"""Metrics on the cotangent bundle built from affine data on the base.

Includes the iota lifts of vector fields and endomorphisms, complete lifts,
the Riemannian extension g_nabla and its modifications.
"""

from dataclasses import dataclass
from fractions import Fraction
from typing import Tuple

import polymatrix
from errors import DimensionError
from expr import Poly
from geometry import (
    AffineConnection,
    Chart,
    EndoBase,
    SymTensor2Base,
    VectorFieldBase,
    WalkerMetric,
    metric_full,
    same_chart,
)


@dataclass(frozen=True)
class CotangentLift:
    """The 1-form iota(T): components (iota T)_i, each linear in the fiber coordinates."""

    chart: Chart
    components: Tuple[Poly, ...]

    def __getitem__(self, i: int) -> Poly:
        return self.components[i]

    def __iter__(self):
        return iter(self.components)

    def __len__(self) -> int:
        return len(self.components)


@dataclass(frozen=True)
class VectorFieldTotal:
    """A vector field on T*M, components in index order (1..n, 1'..n')."""

    chart: Chart
    comps: Tuple[Poly, ...]

    def __post_init__(self):
        if len(self.comps) != self.chart.dim:
            raise DimensionError(f"vector field on T*M needs {self.chart.dim} components")


def iota_vector(X: VectorFieldBase) -> Poly:
    """iota X = sum_i x_i' X^i."""
    chart = X.chart
    total = chart.zero()
    for i, component in enumerate(X.comps):
        if component:
            total = total + chart.fiber(i) * component
    return total


def iota_endo(T: EndoBase) -> CotangentLift:
    """(iota T)_i = sum_r x_r' T_i^r."""
    chart = T.chart
    components = []
    for i in range(chart.n):
        total = chart.zero()
        for r in range(chart.n):
            if T.t[i][r]:
                total = total + chart.fiber(r) * T.t[i][r]
        components.append(total)
    return CotangentLift(chart, tuple(components))


def base_bracket(X: VectorFieldBase, Z: VectorFieldBase) -> VectorFieldBase:
    """[X, Z]^h = X^i d_i Z^h - Z^i d_i X^h."""
    chart = same_chart(X.chart, Z.chart)
    comps = []
    for h in range(chart.n):
        total = chart.zero()
        for i in range(chart.n):
            total = total + X.comps[i] * Z.comps[h].diff(i) - Z.comps[i] * X.comps[h].diff(i)
        comps.append(total)
    return VectorFieldBase(chart, tuple(comps))


def covariant_derivative_base(nabla: AffineConnection, X: VectorFieldBase, Y: VectorFieldBase) -> VectorFieldBase:
    """(nabla_X Y)^h = X^i d_i Y^h + Gamma_ij^h X^i Y^j."""
    chart = same_chart(nabla.chart, X.chart, Y.chart)
    n = chart.n
    comps = []
    for h in range(n):
        total = chart.zero()
        for i in range(n):
            if not X.comps[i]:
                continue
            total = total + X.comps[i] * Y.comps[h].diff(i)
            for j in range(n):
                symbol = nabla.gamma(i, j, h)
                if symbol and Y.comps[j]:
                    total = total + symbol * X.comps[i] * Y.comps[j]
        comps.append(total)
    return VectorFieldBase(chart, tuple(comps))


def complete_lift(X: VectorFieldBase) -> VectorFieldTotal:
    """
    The complete lift X^C = X^i d_i - x_h' (d_j X^h) d_j'.

    It is the unique lift with X^C(iota Z) = iota [X, Z] for every Z.
    """
    chart = X.chart
    n = chart.n
    fiber_part = []
    for j in range(n):
        total = chart.zero()
        for h in range(n):
            derivative = X.comps[h].diff(j)
            if derivative:
                total = total - chart.fiber(h) * derivative
        fiber_part.append(total)
    return VectorFieldTotal(chart, tuple(X.comps) + tuple(fiber_part))


def apply_vector_field(U: VectorFieldTotal, f: Poly) -> Poly:
    """U(f) = sum_a U^a d_a f."""
    total = U.chart.zero()
    for a, component in enumerate(U.comps):
        if component:
            total = total + component * f.diff(a)
    return total


def metric_on_fields(m: WalkerMetric, U: VectorFieldTotal, V: VectorFieldTotal) -> Poly:
    same_chart(m.chart, U.chart, V.chart)
    g = metric_full(m)
    total = m.chart.zero()
    for a in range(m.dim):
        if not U.comps[a]:
            continue
        for b in range(m.dim):
            if g[a][b] and V.comps[b]:
                total = total + g[a][b] * U.comps[a] * V.comps[b]
    return total


def _connection_block(nabla: AffineConnection) -> list:
    # -2 x_k' Gamma_ij^k
    chart = nabla.chart
    n = chart.n
    rows = polymatrix.zeros(chart.nvars, n)
    for (i, j, k), symbol in nabla.entries.items():
        rows[i][j] = rows[i][j] - chart.fiber(k) * symbol * 2
    return rows


def riemannian_extension(nabla: AffineConnection) -> WalkerMetric:
    """g_nabla: B_ij = -2 x_k' Gamma_ij^k."""
    return WalkerMetric.from_rows(nabla.chart, _connection_block(nabla))


def modified_extension(
    nabla: AffineConnection, Phi: SymTensor2Base, T: EndoBase, S: EndoBase
) -> WalkerMetric:
    """
    Modified Riemannian extension g_nabla + iota T o iota S + pi^* Phi.

    Args:
        nabla: Torsion-free base connection
        Phi: Symmetric base (0,2)-tensor
        T: First (1,1)-tensor
        S: Second (1,1)-tensor

    Returns:
        Walker metric with B_ij = 1/2 x_r' x_s' (T_i^r S_j^s + T_j^r S_i^s) + Phi_ij - 2 x_k' Gamma_ij^k
    """
    chart = same_chart(nabla.chart, Phi.chart, T.chart, S.chart)
    iota_t, iota_s = iota_endo(T), iota_endo(S)
    rows = _connection_block(nabla)
    half = Fraction(1, 2)
    for i in range(chart.n):
        for j in range(chart.n):
            quadratic = (iota_t[i] * iota_s[j] + iota_t[j] * iota_s[i]) * half
            rows[i][j] = rows[i][j] + quadratic + Phi.phi[i][j]
    return WalkerMetric.from_rows(chart, rows)


def modified_extension_c(nabla: AffineConnection, Phi: SymTensor2Base, c) -> WalkerMetric:
    """g_{nabla,Phi,c}: B_ij = c x_i' x_j' + Phi_ij - 2 x_k' Gamma_ij^k."""
    chart = same_chart(nabla.chart, Phi.chart)
    c = Fraction(c)
    rows = _connection_block(nabla)
    for i in range(chart.n):
        for j in range(chart.n):
            rows[i][j] = rows[i][j] + chart.fiber(i) * chart.fiber(j) * c + Phi.phi[i][j]
    return WalkerMetric.from_rows(chart, rows)


def selfdual_walker_build(
    X: VectorFieldBase, T: EndoBase, nabla: AffineConnection, Phi: SymTensor2Base
) -> WalkerMetric:
    """
    The general self-dual Walker 4-metric
    iota X (iota id o iota id) + iota id o iota T + g_nabla + pi^* Phi.
    """
    chart = same_chart(X.chart, T.chart, nabla.chart, Phi.chart)
    chart.require(2, "selfdual_walker_build")
    iota_x = iota_vector(X)
    iota_t = iota_endo(T)
    rows = _connection_block(nabla)
    half = Fraction(1, 2)
    for i in range(2):
        for j in range(2):
            xi, xj = chart.fiber(i), chart.fiber(j)
            rows[i][j] = (
                rows[i][j]
                + iota_x * xi * xj
                + (iota_t[i] * xj + iota_t[j] * xi) * half
                + Phi.phi[i][j]
            )
    return WalkerMetric.from_rows(chart, rows)
