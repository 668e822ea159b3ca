import random
from fractions import Fraction

import pytest

import polymatrix
from curvature import (
    affine_curvature,
    christoffel_general,
    christoffel_walker,
    covariant_derivative_riemann,
    curvature_summary,
    einstein_check,
    first_bianchi_violations,
    riemann_general,
    riemann_symmetry_violations,
    riemann_walker,
    second_bianchi_violations,
    trace_free_identity_residual,
    walker_vanishing_violations,
)
from expr import Poly
from extension import modified_extension_c
from geometry import AffineConnection, Chart, SymTensor2Base, WalkerMetric
from fixtures import compare_reference, parse_label

from conftest import parse, random_base_poly, random_connection


def _random_fiber_quadratic(rng: random.Random, chart: Chart) -> Poly:
    total = random_base_poly(rng, chart, degree=1, terms=1)
    for _ in range(2):
        exponent = [0] * chart.nvars
        for _ in range(rng.randint(1, 2)):
            exponent[chart.n + rng.randrange(chart.n)] += 1
        if rng.random() < 0.5:
            exponent[rng.randrange(chart.n)] += 1
        total = total + Poly(chart.nvars, {tuple(exponent): rng.randint(-2, 2)})
    return total


def _random_walker(rng: random.Random, n: int) -> WalkerMetric:
    chart = Chart(n)
    rows = [[chart.zero()] * n for _ in range(n)]
    for i in range(n):
        for j in range(i, n):
            rows[i][j] = rows[j][i] = _random_fiber_quadratic(rng, chart)
    return WalkerMetric.from_rows(chart, rows)


@pytest.mark.parametrize("n", [2, 3])
def test_walker_formulas_agree_with_general_formulas(n):
    rng = random.Random(7 * n)
    for _ in range(10):
        m = _random_walker(rng, n)
        gamma = christoffel_walker(m)
        assert gamma == christoffel_general(m)
        assert not walker_vanishing_violations(gamma)
        R = riemann_walker(m, gamma)
        general = riemann_general(m, christoffel_general(m))
        assert R.mixed == general.mixed
        assert not R.differences(general)


def test_fiber_valued_family_uses_its_closed_form(capsys):
    rng = random.Random(11)
    seen = 0
    for n in (2, 3):
        for _ in range(4):
            m = _random_walker(rng, n)
            R = riemann_walker(m, christoffel_walker(m))
            general = riemann_general(m, christoffel_general(m))
            family = [key for key in general.mixed if max(key[:3]) < n <= key[3]]
            seen += len(family)
            assert all(R.mixed_at(*key) == general.mixed_at(*key) for key in family)
    assert seen
    assert "Warning" not in capsys.readouterr().err


def test_closed_form_disagreement_is_logged_not_patched(capsys, chart2):
    x1, x2, y1, y2 = chart2.base(0), chart2.base(1), chart2.fiber(0), chart2.fiber(1)
    m = WalkerMetric.from_rows(chart2, [[x2 * y1 * y1, x1 * y2], [x1 * y2, y1 * y2]])
    other = WalkerMetric.from_rows(chart2, [[y1 * y1, chart2.zero()], [chart2.zero(), y2 * y2]])
    expected = riemann_walker(m, christoffel_walker(m))
    assert "Warning" not in capsys.readouterr().err
    R = riemann_walker(m, christoffel_walker(other))
    assert R.mixed == expected.mixed
    assert "disagrees with the Levi-Civita value" in capsys.readouterr().err


def test_osserman6_identities(osserman6_metric):
    gamma = christoffel_walker(osserman6_metric)
    R = riemann_walker(osserman6_metric, gamma)
    assert not R.is_flat()
    assert not riemann_symmetry_violations(R)
    assert not first_bianchi_violations(R)
    nablaR = covariant_derivative_riemann(osserman6_metric, gamma, R)
    assert nablaR
    assert not second_bianchi_violations(osserman6_metric.chart, nablaR)


def test_osserman6_reference_components(osserman6_metric):
    chart = osserman6_metric.chart
    R = riemann_walker(osserman6_metric, christoffel_walker(osserman6_metric))
    assert R.lowered_at(0, 1, 0, 1) == parse("1/2*x2p*x3p*(x2*x2p - 4)", chart)
    assert R.lowered_at(0, 2, 0, 2) == parse("1/2*x2*x3p^3", chart)
    assert R.lowered_at(*parse_label("11'11'", 3)) == 1
    assert R.lowered_at(*parse_label("11'22'", 3)) == Fraction(1, 2)
    mismatches = compare_reference(R)
    assert not any(m.startswith("R_1212:") or m.startswith("R_1313:") for m in mismatches)


def test_parse_label():
    assert parse_label("12'21'", 3) == (0, 4, 1, 3)
    assert parse_label("1313", 3) == (0, 2, 0, 2)


def test_osserman6_is_ricci_flat_base_and_einstein(osserman6_metric, chart3):
    nabla = AffineConnection.from_entries(chart3, {(0, 0, 2): chart3.base(1)})
    base = affine_curvature(nabla)
    assert not base.is_flat()
    assert base.is_ricci_flat()
    summary = curvature_summary(osserman6_metric, riemann_walker(osserman6_metric, christoffel_walker(osserman6_metric)))
    assert summary.scalar == 12
    assert polymatrix.is_zero(summary.traceless)


def test_affine_ricci_of_surface_connection(type_ii_parts, chart2):
    nabla, _ = type_ii_parts
    curvature = affine_curvature(nabla)
    assert curvature.ricci[0][0] == parse("-1/4*x2^2", chart2)
    assert curvature.ricci[0][1] == Fraction(-1, 2)
    assert curvature.ricci[1][0] == 0
    assert curvature.ricci_sym[0][1] == Fraction(-1, 4)
    assert curvature.ricci_skew[0][1] == Fraction(-1, 4)


@pytest.mark.parametrize("n", [1, 2, 3])
def test_scalar_curvature_is_constant(n):
    chart = Chart(n)
    rng = random.Random(n)
    nabla = random_connection(rng, chart, degree=1)
    Phi = SymTensor2Base.from_entries(chart, {(0, 0): random_base_poly(rng, chart, degree=1)})
    c = Fraction(2, 3)
    m = modified_extension_c(nabla, Phi, c)
    summary = curvature_summary(m, riemann_walker(m, christoffel_walker(m)))
    assert summary.scalar == n * (n + 1) * c


@pytest.mark.parametrize("c", [Fraction(1), Fraction(-2), Fraction(1, 3)])
@pytest.mark.parametrize("n", [2, 3])
def test_einstein_criterion(n, c):
    chart = Chart(n)
    rng = random.Random(100 + n)
    trials = 0
    while trials < 10:
        nabla = random_connection(rng, chart, degree=1)
        sym = affine_curvature(nabla).ricci_sym
        if polymatrix.is_zero(sym):
            continue
        trials += 1
        Phi = SymTensor2Base(chart, polymatrix.scale(sym, Fraction(4) / (c * (n - 1))))
        report = einstein_check(nabla, Phi, c)
        assert report.holds and report.criterion
        assert polymatrix.is_zero(trace_free_identity_residual(nabla, Phi, c))
        report = einstein_check(nabla, SymTensor2Base.zero(chart), c)
        assert not report.holds and report.criterion is False
        assert polymatrix.is_zero(trace_free_identity_residual(nabla, SymTensor2Base.zero(chart), c))


def test_flat_space_form_is_einstein(chart3):
    report = einstein_check(AffineConnection.flat(chart3), SymTensor2Base.zero(chart3), -1)
    assert report.holds


def test_einstein_criterion_needs_nonzero_c(type_ii_parts):
    nabla, Phi = type_ii_parts
    report = einstein_check(nabla, Phi, 0)
    assert report.criterion is None
    assert report.notes
