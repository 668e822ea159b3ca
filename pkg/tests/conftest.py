import random
from fractions import Fraction

import pytest

from expr import Poly
from expr_parser import parse_expr
from extension import modified_extension_c
from geometry import AffineConnection, Chart, SymTensor2Base


@pytest.fixture(autouse=True)
def _sampling_env(monkeypatch):
    # keep sampled verdicts independent of a developer's .env
    for name in ("WALKER_EXT_SEED", "WALKER_EXT_SAMPLES", "WALKER_EXT_POINTS", "WALKER_EXT_VERBOSE"):
        monkeypatch.delenv(name, raising=False)


@pytest.fixture
def chart2():
    return Chart(2)


@pytest.fixture
def chart3():
    return Chart(3)


@pytest.fixture
def osserman6_metric(chart3):
    nabla = AffineConnection.from_entries(chart3, {(0, 0, 2): chart3.base(1)})
    return modified_extension_c(nabla, SymTensor2Base.zero(chart3), 1)


@pytest.fixture
def type_ii_parts(chart2):
    x2 = chart2.base(1)
    nabla = AffineConnection.from_entries(chart2, {(0, 1, 1): x2 * Fraction(-1, 2)})
    Phi = SymTensor2Base.from_entries(
        chart2, {(0, 0): x2 * x2 * Fraction(-1, 4), (0, 1): chart2.constant(Fraction(-1, 4))}
    )
    return nabla, Phi


def parse(text: str, chart: Chart) -> Poly:
    return parse_expr(text, chart)


def random_base_poly(rng: random.Random, chart: Chart, degree: int = 2, terms: int = 2) -> Poly:
    """A small polynomial in the base coordinates only."""
    result = chart.zero()
    for _ in range(terms):
        exponent = [0] * chart.nvars
        for _ in range(rng.randint(0, degree)):
            exponent[rng.randrange(chart.n)] += 1
        result = result + Poly(chart.nvars, {tuple(exponent): Fraction(rng.randint(-3, 3), rng.randint(1, 2))})
    return result


def random_connection(rng: random.Random, chart: Chart, degree: int = 2, density: float = 0.4) -> AffineConnection:
    n = chart.n
    entries = {}
    for i in range(n):
        for j in range(i, n):
            for k in range(n):
                if rng.random() < density:
                    entries[(i, j, k)] = random_base_poly(rng, chart, degree)
    return AffineConnection.from_entries(chart, entries)
