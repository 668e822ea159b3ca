from fractions import Fraction

import pytest

import polymatrix
from curvature import christoffel_walker, riemann_walker
from errors import PreconditionError
from extension import modified_extension_c
from geometry import AffineConnection, Chart, PointAssignment, SymTensor2Base
from parakaehler import (
    build_para_structure,
    check_closed,
    check_parallel,
    compatibility_residual,
    eigen_split_ranks,
    is_involution,
    nijenhuis,
    para_parameter,
    para_sectional_check,
    para_sectional_residual,
    para_table_check,
)
from sampling import SampleScheme


def _space_form(n: int, c):
    chart = Chart(n)
    return modified_extension_c(AffineConnection.flat(chart), SymTensor2Base.zero(chart), c)


@pytest.mark.parametrize("n", [2, 3])
@pytest.mark.parametrize("c", [Fraction(1), Fraction(-1), Fraction(2, 5)])
def test_para_kaehler_structure(n, c):
    m = _space_form(n, c)
    structure = build_para_structure(m)
    J = structure.J
    assert structure.c == c
    assert is_involution(J)
    assert polymatrix.is_zero(compatibility_residual(m, J))
    assert not nijenhuis(J)
    assert check_closed(structure.omega)
    gamma = christoffel_walker(m)
    assert check_parallel(m, gamma, J)
    R = riemann_walker(m, gamma)
    assert not para_sectional_residual(m, R, J, c)
    assert para_sectional_residual(m, R, J, c + 1)


def test_curvature_table_rows_for_n3():
    c = Fraction(2, 5)
    m = _space_form(3, c)
    R = riemann_walker(m, christoffel_walker(m))
    rows = para_table_check(R, c)
    assert len(rows) == 16
    for row in rows:
        assert row.holds, (row.label, row.failures)


def test_sampled_check_recovers_c():
    m = _space_form(2, -1)
    R = riemann_walker(m, christoffel_walker(m))
    J = build_para_structure(m).J
    verdict, recovered = para_sectional_check(m, R, J, SampleScheme(seed=7, count=16), -1)
    assert verdict.holds
    assert recovered == -1


def test_eigenspaces_are_half_dimensional():
    m = _space_form(3, 1)
    J = build_para_structure(m).J
    assert eigen_split_ranks(J, PointAssignment(m.chart, [1, 2, 3, -1, 1, 2])) == (3, 3)


def test_structure_is_only_built_for_space_forms(osserman6_metric):
    with pytest.raises(PreconditionError):
        para_parameter(osserman6_metric)
