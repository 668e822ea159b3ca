import random
from fractions import Fraction

import pytest

from expr import Poly
from extension import (
    apply_vector_field,
    base_bracket,
    complete_lift,
    covariant_derivative_base,
    iota_endo,
    iota_vector,
    metric_on_fields,
    modified_extension,
    modified_extension_c,
    riemannian_extension,
    selfdual_walker_build,
)
from geometry import Chart, EndoBase, SymTensor2Base, VectorFieldBase

from conftest import parse, random_base_poly, random_connection


def _random_field(rng: random.Random, chart: Chart) -> VectorFieldBase:
    return VectorFieldBase(chart, tuple(random_base_poly(rng, chart) for _ in range(chart.n)))


def test_riemannian_extension_block(chart3):
    nabla = random_connection(random.Random(3), chart3)
    m = riemannian_extension(nabla)
    for i in range(3):
        for j in range(3):
            expected = chart3.zero()
            for k in range(3):
                expected = expected - chart3.fiber(k) * nabla.gamma(i, j, k) * 2
            assert m.B[i][j] == expected


def test_osserman6_block(osserman6_metric):
    chart = osserman6_metric.chart
    assert osserman6_metric.B[0][0] == parse("x1p^2 - 2*x2*x3p", chart)
    assert osserman6_metric.B[0][1] == parse("x1p*x2p", chart)
    assert osserman6_metric.B[2][2] == parse("x3p^2", chart)


def test_modified_extension_with_identity_matches_c_form(chart2):
    nabla = random_connection(random.Random(5), chart2)
    Phi = SymTensor2Base.from_entries(chart2, {(0, 1): chart2.base(0)})
    c = Fraction(-2, 3)
    identity = EndoBase.identity(chart2)
    assert modified_extension(nabla, Phi, identity.scaled(c), identity) == modified_extension_c(nabla, Phi, c)


def test_iota_lifts(chart2):
    X = VectorFieldBase(chart2, (chart2.base(1), chart2.constant(2)))
    assert iota_vector(X) == chart2.fiber(0) * chart2.base(1) + chart2.fiber(1) * 2
    T = EndoBase.from_entries(chart2, {(0, 1): chart2.base(0)})
    lift = iota_endo(T)
    assert lift[0] == chart2.fiber(1) * chart2.base(0)
    assert lift[1] == 0


@pytest.mark.parametrize("n", [2, 3])
def test_complete_lift_identity(n):
    chart = Chart(n)
    rng = random.Random(7 + n)
    for _ in range(20):
        nabla = random_connection(rng, chart)
        m = riemannian_extension(nabla)
        X, Y = _random_field(rng, chart), _random_field(rng, chart)
        lhs = metric_on_fields(m, complete_lift(X), complete_lift(Y))
        both = covariant_derivative_base(nabla, X, Y).comps
        swapped = covariant_derivative_base(nabla, Y, X).comps
        symmetric = VectorFieldBase(chart, tuple(a + b for a, b in zip(both, swapped)))
        assert lhs == -iota_vector(symmetric)


def test_complete_lift_acts_on_iota_as_bracket(chart2):
    rng = random.Random(11)
    for _ in range(10):
        X, Z = _random_field(rng, chart2), _random_field(rng, chart2)
        assert apply_vector_field(complete_lift(X), iota_vector(Z)) == iota_vector(base_bracket(X, Z))


def test_selfdual_build_reduces_to_modified_extension(chart2):
    nabla = random_connection(random.Random(2), chart2)
    Phi = SymTensor2Base.from_entries(chart2, {(0, 0): chart2.base(1)})
    X = VectorFieldBase.zero(chart2)
    T = EndoBase.identity(chart2).scaled(2)
    # iota id o iota T with T = 2 id is 2 x_i' x_j'
    assert selfdual_walker_build(X, T, nabla, Phi) == modified_extension_c(nabla, Phi, 2)


def test_poly_fields_stay_in_chart(chart2):
    X = VectorFieldBase(chart2, (Poly.one(chart2.nvars), chart2.zero()))
    lift = complete_lift(X)
    assert lift.comps[2] == 0 and lift.comps[3] == 0
