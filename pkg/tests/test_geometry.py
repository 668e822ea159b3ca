from fractions import Fraction

import pytest

import polymatrix
from errors import DimensionError, PreconditionError
from geometry import (
    AffineConnection,
    Chart,
    PointAssignment,
    SymTensor2Base,
    WalkerMetric,
    coordinate_vector,
    metric_full,
    metric_inverse,
    tangent_vec,
)

from conftest import parse


@pytest.mark.parametrize("n", [1, 2, 3])
def test_inverse_and_determinant(n):
    chart = Chart(n)
    rows = [[parse(f"x{i + 1}*x{j + 1}p + x{i + 1}p*x{j + 1}p", chart) + parse(f"x{j + 1}*x{i + 1}p + 1", chart)
             for j in range(n)] for i in range(n)]
    m = WalkerMetric.from_rows(chart, rows)
    g, ginv = metric_full(m), metric_inverse(m)
    assert polymatrix.matmul(g, ginv) == polymatrix.identity(chart.nvars, m.dim)
    assert polymatrix.determinant(g) == (-1) ** n


def test_walker_metric_requires_symmetric_block(chart2):
    with pytest.raises(PreconditionError):
        WalkerMetric.from_rows(chart2, [[chart2.zero(), chart2.base(0)], [chart2.zero(), chart2.zero()]])


def test_connection_rejects_torsion_and_fiber_dependence(chart2):
    with pytest.raises(PreconditionError):
        AffineConnection(chart2, {(0, 1, 0): chart2.base(0)})
    with pytest.raises(DimensionError):
        AffineConnection.from_entries(chart2, {(0, 0, 0): chart2.fiber(0)})


def test_connection_completion(chart2):
    nabla = AffineConnection.from_entries(chart2, {(0, 1, 1): chart2.base(1)})
    assert nabla.gamma(1, 0, 1) == chart2.base(1)
    assert nabla.gamma(0, 0, 0) == 0


def test_phi_is_completed_symmetrically(chart2):
    Phi = SymTensor2Base.from_entries(chart2, {(0, 1): chart2.base(0)})
    assert Phi.phi[1][0] == chart2.base(0)


def test_tangent_vectors_carry_their_norm(osserman6_metric):
    chart = osserman6_metric.chart
    pt = PointAssignment(chart, [1, 2, 0, 1, 0, 1])
    # B11 = x1p^2 - 2*x2*x3p = 1 - 4
    assert coordinate_vector(osserman6_metric, pt, 0).eps == -3
    v = tangent_vec(osserman6_metric, pt, [1, 0, 0, 2, 0, 0])
    assert v.eps == -3 + 2 * 2
    assert v.scaled(Fraction(1, 2)).eps == v.eps / 4


def test_point_dimension_is_checked(chart2):
    with pytest.raises(DimensionError):
        PointAssignment(chart2, [0, 0, 0])
