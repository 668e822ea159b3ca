import random
from fractions import Fraction

import pytest

import polymatrix
from curvature import affine_curvature, christoffel_walker, curvature_summary, riemann_walker
from errors import DimensionError, PatternViolation, PreconditionError
from expr import Poly
from extension import modified_extension_c, selfdual_walker_build
from fixtures import type_ii_example
from fourdim import (
    build_ricci_flat_selfdual,
    build_type_ii,
    hodge_star,
    ricci_flat_connection,
    selfdual_check,
    selfdual_fit,
    weyl,
    weyl_trace,
)
from geometry import AffineConnection, EndoBase, SymTensor2Base, VectorFieldBase, WalkerMetric

from conftest import parse, random_base_poly, random_connection


def _random_phi(rng, chart) -> SymTensor2Base:
    return SymTensor2Base.from_entries(
        chart, {(i, j): random_base_poly(rng, chart, degree=2) for i in range(2) for j in range(i, 2)}
    )


def test_hodge_star_is_an_involution(type_ii_parts):
    nabla, Phi = type_ii_parts
    m = modified_extension_c(nabla, Phi, 4)
    star = hodge_star(m)
    assert polymatrix.matmul(star, star) == polymatrix.identity(m.chart.nvars, 6)


def test_weyl_tensor_is_trace_free(type_ii_parts):
    nabla, _ = type_ii_parts
    m = modified_extension_c(nabla, SymTensor2Base.zero(nabla.chart), 1)
    R = riemann_walker(m, christoffel_walker(m))
    decomposition = weyl(m, curvature_summary(m, R), R)
    assert polymatrix.is_zero(weyl_trace(m, decomposition))
    assert polymatrix.is_zero(polymatrix.sub(decomposition.W, polymatrix.add(decomposition.Wplus, decomposition.Wminus)))


def test_riemannian_extensions_with_phi_are_self_dual(chart2):
    rng = random.Random(7)
    for _ in range(10):
        m = modified_extension_c(random_connection(rng, chart2, degree=1), _random_phi(rng, chart2), 0)
        holds, wminus = selfdual_check(m)
        assert holds and polymatrix.is_zero(wminus)
        assert selfdual_fit(m).to_metric() == m


def test_selfdual_build_outputs_are_self_dual(chart2):
    rng = random.Random(17)
    for _ in range(10):
        X = VectorFieldBase(chart2, tuple(random_base_poly(rng, chart2, degree=1) for _ in range(2)))
        T = EndoBase.from_entries(
            chart2, {(i, r): random_base_poly(rng, chart2, degree=1, terms=1) for i in range(2) for r in range(2)}
        )
        m = selfdual_walker_build(X, T, random_connection(rng, chart2, degree=1), _random_phi(rng, chart2))
        assert selfdual_check(m)[0]
        assert selfdual_fit(m).to_metric() == m


def test_fit_reports_the_offending_monomial(chart2):
    a = parse("x2p^3", chart2)
    zero = chart2.zero()
    m = WalkerMetric.from_rows(chart2, [[a, zero], [zero, zero]])
    with pytest.raises(PatternViolation) as info:
        selfdual_fit(m)
    assert info.value.entry == "a"
    assert info.value.monomial == "x2p^3"
    assert not selfdual_check(m)[0]


def test_fit_letters_of_the_type_ii_metric(chart2):
    fit = selfdual_fit(type_ii_example(1, chart2.base(1)))
    assert fit.B == 4 and fit.E == 4
    assert fit.V == chart2.base(1)
    assert fit.gamma == Fraction(-1, 4)
    assert fit.xi == parse("-1/4*x2^2", chart2)


@pytest.mark.parametrize("phi", ["x1*x2", "x1^2 - x2"])
def test_ricci_flat_self_dual_family(chart2, phi):
    potential = parse(phi, chart2)
    nabla = ricci_flat_connection(chart2, potential)
    base = affine_curvature(nabla)
    assert polymatrix.is_zero(base.ricci_sym)
    Phi = SymTensor2Base.from_entries(chart2, {(0, 0): chart2.base(1), (0, 1): chart2.base(0)})
    m = build_ricci_flat_selfdual(potential, Phi)
    summary = curvature_summary(m, riemann_walker(m, christoffel_walker(m)))
    assert polymatrix.is_zero(summary.ricci)
    assert selfdual_check(m)[0]


def test_type_ii_reproduces_the_reference_metric(type_ii_parts, chart2):
    nabla, _ = type_ii_parts
    m = build_type_ii(nabla, 24)
    assert m == type_ii_example(1, chart2.base(1))
    R = riemann_walker(m, christoffel_walker(m))
    summary = curvature_summary(m, R)
    assert summary.scalar == 24
    assert polymatrix.is_zero(summary.traceless)
    assert selfdual_check(m)[0]


def test_reference_metric_for_other_parameters(chart2):
    k = Fraction(1, 2)
    f = parse("x2^2 + 1", chart2)
    nabla = AffineConnection.from_entries(chart2, {(0, 1, 1): f * Fraction(-1, 2)})
    ricci_sym = affine_curvature(nabla).ricci_sym
    m = modified_extension_c(nabla, SymTensor2Base(chart2, ricci_sym).scaled(1 / k), 4 * k)
    assert m == type_ii_example(k, f)


def test_type_ii_preconditions(chart2, chart3):
    with pytest.raises(PreconditionError):
        build_type_ii(AffineConnection.flat(chart2), 6)
    with pytest.raises(PreconditionError):
        build_type_ii(AffineConnection.from_entries(chart2, {(0, 1, 1): chart2.base(1)}), 0)
    with pytest.raises(DimensionError):
        build_type_ii(AffineConnection.flat(chart3), 6)


def test_four_dimensional_operations_reject_other_dimensions(osserman6_metric):
    with pytest.raises(DimensionError):
        selfdual_check(osserman6_metric)
    with pytest.raises(DimensionError):
        hodge_star(osserman6_metric)
