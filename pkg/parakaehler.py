"""Para-Kaehler structure of the modified Riemannian extensions g_{nabla,c} with flat nabla.

J is stored as a 2n x 2n Poly matrix with J[b][c] the d_b component of J(d_c).
Two-forms are antisymmetric Poly matrices.
"""

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations_with_replacement, permutations
from typing import Callable, Dict, List, Optional, Tuple

import polymatrix
from curvature import ChristoffelBundle, RiemannTensor, covariant_derivative_endo
from errors import PreconditionError
from expr import Poly, format_rat
from geometry import Chart, PointAssignment, WalkerMetric, metric_full
from polymatrix import PolyMatrix
from sampling import CausalClass, SampleScheme
from spectral import Verdict, describe_vector, evaluate_curvature, rank, shift

Index3 = Tuple[int, int, int]


@dataclass(frozen=True)
class ParaStructure:
    chart: Chart
    J: PolyMatrix
    omega: PolyMatrix
    c: Fraction


def _fiber_square_exponent(chart: Chart, i: int) -> Tuple[int, ...]:
    exponent = [0] * chart.nvars
    exponent[chart.n + i] = 2
    return tuple(exponent)


def para_parameter(m: WalkerMetric) -> Fraction:
    """c for B = c x_i' x_j'; PreconditionError for any other Walker metric."""
    chart = m.chart
    c = m.B[0][0].coefficient(_fiber_square_exponent(chart, 0))
    for i in range(chart.n):
        for j in range(chart.n):
            if m.B[i][j] != chart.fiber(i) * chart.fiber(j) * c:
                raise PreconditionError(
                    "para-Kaehler structure is only known for g_{nabla,c} with flat nabla and Phi = 0 "
                    f"(B[{i + 1},{j + 1}] = {m.B[i][j]})"
                )
    return c


def omega_of(m: WalkerMetric, J: PolyMatrix) -> PolyMatrix:
    """Omega(X, Y) = g(JX, Y), i.e. the matrix J^T g."""
    return polymatrix.matmul(polymatrix.transpose(J), metric_full(m))


def build_para_structure(m: WalkerMetric) -> ParaStructure:
    """
    J d_i = d_i - c x_i' x_j' d_j',  J d_i' = -d_i'.

    Raises:
        PreconditionError: m is not g_{nabla,c} with flat nabla and Phi = 0
    """
    chart = m.chart
    n = chart.n
    c = para_parameter(m)
    rows = polymatrix.zeros(chart.nvars, chart.dim)
    for i in range(n):
        rows[i][i] = chart.constant(1)
        rows[n + i][n + i] = chart.constant(-1)
        for j in range(n):
            rows[n + j][i] = chart.fiber(i) * chart.fiber(j) * -c
    J = polymatrix.freeze(rows)
    return ParaStructure(chart, J, omega_of(m, J), c)


def compatibility_residual(m: WalkerMetric, J: PolyMatrix) -> PolyMatrix:
    """J^T g + g J; zero iff g(JX, Y) + g(X, JY) = 0."""
    g = metric_full(m)
    return polymatrix.add(polymatrix.matmul(polymatrix.transpose(J), g), polymatrix.matmul(g, J))


def is_involution(J: PolyMatrix) -> bool:
    size = len(J)
    return polymatrix.matmul(J, J) == polymatrix.identity(J[0][0].nvars, size)


def _column(J: PolyMatrix, a: int) -> List[Poly]:
    return [J[e][a] for e in range(len(J))]


def _bracket(U: List[Poly], V: List[Poly]) -> List[Poly]:
    size = len(U)
    result = []
    for h in range(size):
        total = Poly.zero(U[0].nvars)
        for e in range(size):
            if U[e]:
                total = total + U[e] * V[h].diff(e)
            if V[e]:
                total = total - V[e] * U[h].diff(e)
        result.append(total)
    return result


def _apply(J: PolyMatrix, W: List[Poly]) -> List[Poly]:
    size = len(W)
    result = []
    for h in range(size):
        total = Poly.zero(W[0].nvars)
        for e in range(size):
            if J[h][e] and W[e]:
                total = total + J[h][e] * W[e]
        result.append(total)
    return result


def nijenhuis(J: PolyMatrix) -> Dict[Index3, Poly]:
    """N_J(d_a, d_b)^h = ([JX,JY] - J[JX,Y] - J[X,JY])^h for coordinate fields; zeros are not stored."""
    size = len(J)
    nvars = J[0][0].nvars
    zero_field = [Poly.zero(nvars)] * size
    result: Dict[Index3, Poly] = {}
    for a in range(size):
        for b in range(a + 1, size):
            Ja, Jb = _column(J, a), _column(J, b)
            ea, eb = list(zero_field), list(zero_field)
            ea[a] = Poly.one(nvars)
            eb[b] = Poly.one(nvars)
            first = _bracket(Ja, Jb)
            second = _apply(J, _bracket(Ja, eb))
            third = _apply(J, _bracket(ea, Jb))
            for h in range(size):
                value = first[h] - second[h] - third[h]
                if value:
                    result[(a, b, h)] = value
                    result[(b, a, h)] = -value
    return result


def check_parallel(m: WalkerMetric, gamma: ChristoffelBundle, J: PolyMatrix) -> bool:
    return not covariant_derivative_endo(m, gamma, J)


def exterior_derivative(omega: PolyMatrix) -> Dict[Index3, Poly]:
    """(d omega)_{abc} = d_a w_bc + d_b w_ca + d_c w_ab for a < b < c; zeros are not stored."""
    size = len(omega)
    result = {}
    for a in range(size):
        for b in range(a + 1, size):
            for c in range(b + 1, size):
                value = omega[b][c].diff(a) + omega[c][a].diff(b) + omega[a][b].diff(c)
                if value:
                    result[(a, b, c)] = value
    return result


def check_closed(omega: PolyMatrix) -> bool:
    return not exterior_derivative(omega)


def para_sectional_residual(
    m: WalkerMetric, R: RiemannTensor, J: PolyMatrix, c
) -> Dict[Tuple[Index3, int], Poly]:
    """
    Coefficients of the cubic form X -> R(JX, X) X - c g(X, X) JX.

    Keys are ((a, b, e), d) with a <= b <= e; the value is the d-component of
    the coefficient of X^a X^b X^e, summed over the orderings of (a, b, e).
    The result is empty iff the identity holds for every X.
    """
    c = Fraction(c)
    size = m.dim
    g = metric_full(m)

    def term(a: int, b: int, e: int, d: int) -> Poly:
        total = g[b][e] * J[d][a] * -c if g[b][e] and J[d][a] else Poly.zero(m.chart.nvars)
        for f in range(size):
            if J[f][a]:
                value = R.mixed_at(f, b, e, d)
                if value:
                    total = total + value * J[f][a]
        return total

    result = {}
    for triple in combinations_with_replacement(range(size), 3):
        orderings = set(permutations(triple))
        for d in range(size):
            total = Poly.zero(m.chart.nvars)
            for a, b, e in orderings:
                total = total + term(a, b, e, d)
            if total:
                result[(triple, d)] = total
    return result


@dataclass(frozen=True)
class TableRow:
    label: str
    checked: int
    failures: Tuple[str, ...]

    @property
    def holds(self) -> bool:
        return self.checked > 0 and not self.failures


Expected = Callable[[Fraction, Callable[[str], Poly]], Poly]

# (label, index pattern of R_{abc}^d, expected value); primes mark fiber indices.
# alpha is read as one more index distinct from every other letter of its row.
_TABLE: List[Tuple[str, Tuple[str, str, str, str], Expected]] = [
    ("R_{i'ii}^i = -c", ("i'", "i", "i", "i"), lambda c, x: x("1") * -c),
    ("R_{i'ik}^k = -c/2", ("i'", "i", "k", "k"), lambda c, x: x("1") * (-c / 2)),
    ("R_{i'ji}^j = -c/2", ("i'", "j", "i", "j"), lambda c, x: x("1") * (-c / 2)),
    ("R_{i'ii'}^{i'} = c", ("i'", "i", "i'", "i'"), lambda c, x: x("1") * c),
    ("R_{i'ik'}^{k'} = c/2", ("i'", "i", "k'", "k'"), lambda c, x: x("1") * (c / 2)),
    ("R_{i'jj'}^{i'} = c/2", ("i'", "j", "j'", "i'"), lambda c, x: x("1") * (c / 2)),
    ("R_{i'ii}^{i'} = c^2 x_i'^2", ("i'", "i", "i", "i'"), lambda c, x: x("i") ** 2 * c ** 2),
    ("R_{i'ik}^{k'} = c^2/2 x_k'^2", ("i'", "i", "k", "k'"), lambda c, x: x("k") ** 2 * (c ** 2 / 2)),
    ("R_{i'ii}^{h'} = 3c^2/4 x_i' x_h'", ("i'", "i", "i", "h'"), lambda c, x: x("i") * x("h") * (3 * c ** 2 / 4)),
    ("R_{i'ik}^{i'} = 3c^2/4 x_i' x_k'", ("i'", "i", "k", "i'"), lambda c, x: x("i") * x("k") * (3 * c ** 2 / 4)),
    ("R_{i'ik}^{h'} = c^2/2 x_k' x_h'", ("i'", "i", "k", "h'"), lambda c, x: x("k") * x("h") * (c ** 2 / 2)),
    ("R_{i'ji}^{i'} = c^2/2 x_i' x_j'", ("i'", "j", "i", "i'"), lambda c, x: x("i") * x("j") * (c ** 2 / 2)),
    ("R_{ija}^i = c^2/4 x_j' x_a'", ("i", "j", "a", "i"), lambda c, x: x("j") * x("a") * (c ** 2 / 4)),
    ("R_{i'ai}^{h'} = c^2/4 x_a' x_h'", ("i'", "a", "i", "h'"), lambda c, x: x("a") * x("h") * (c ** 2 / 4)),
    ("R_{i'ak}^{i'} = c^2/4 x_a' x_k'", ("i'", "a", "k", "i'"), lambda c, x: x("a") * x("k") * (c ** 2 / 4)),
    ("R_{iji'}^{a'} = -c^2/4 x_j' x_a'", ("i", "j", "i'", "a'"), lambda c, x: x("j") * x("a") * (-c ** 2 / 4)),
]


def para_table_check(R: RiemannTensor, c) -> List[TableRow]:
    """
    Check the curvature table of the para-Kaehler space form for every admissible index choice.

    Distinct letters take distinct base indices; "a" stands for the extra index
    alpha. Rows with more letters than base dimensions are reported with
    checked = 0.
    """
    c = Fraction(c)
    chart = R.chart
    n = chart.n
    rows = []
    for label, pattern, expected in _TABLE:
        letters = sorted({slot.rstrip("'") for slot in pattern})
        failures = []
        checked = 0
        for choice in permutations(range(n), len(letters)):
            assign = dict(zip(letters, choice))

            def x(letter: str) -> Poly:
                if letter == "1":
                    return chart.constant(1)
                return chart.fiber(assign[letter])

            key = tuple(
                n + assign[slot[:-1]] if slot.endswith("'") else assign[slot] for slot in pattern
            )
            checked += 1
            actual = R.mixed_at(*key)
            want = expected(c, x)
            if actual != want:
                where = ", ".join(f"{k}={v + 1}" for k, v in assign.items())
                failures.append(f"{where}: got {actual}, expected {want}")
        rows.append(TableRow(label, checked, tuple(failures)))
    return rows


def eigen_split_ranks(J: PolyMatrix, pt: PointAssignment) -> Tuple[int, int]:
    """(rank(J - I), rank(J + I)) at pt; both equal n for a paracomplex structure."""
    values = polymatrix.evaluate(J, pt.values)
    return rank(shift(values, Fraction(1))), rank(shift(values, Fraction(-1)))


def para_sectional_check(
    m: WalkerMetric, R: RiemannTensor, J: PolyMatrix, scheme: SampleScheme, c=None
) -> Tuple[Verdict, Optional[Fraction]]:
    """
    Sampled check of R(JX, X) X = c g(X, X) JX with c recovered from each sample.

    When c is given it is also compared against the recovered value. For n = 3
    the curvature table rows are verified as part of the verdict.

    Returns:
        (verdict, recovered c or None when it is not constant)
    """
    size = m.dim
    samples = scheme.samples(m, (CausalClass.SPACELIKE, CausalClass.TIMELIKE))
    cache: Dict[int, Tuple] = {}
    recovered = set()
    witnesses = []
    for sample in samples:
        if sample.point_index not in cache:
            cache[sample.point_index] = (
                evaluate_curvature(R, sample.point),
                polymatrix.evaluate(J, sample.point.values),
            )
        Rpt, Jpt = cache[sample.point_index]
        X = sample.vector.comps
        JX = [sum((Jpt[d][a] * X[a] for a in range(size)), Fraction(0)) for d in range(size)]
        lhs = [Fraction(0)] * size
        for (f, b, e, d), value in Rpt.items():
            if JX[f] and X[b] and X[e]:
                lhs[d] += value * JX[f] * X[b] * X[e]
        pivot = next(d for d in range(size) if JX[d])
        c_here = lhs[pivot] / (sample.vector.eps * JX[pivot])
        recovered.add(c_here)
        if any(lhs[d] != c_here * sample.vector.eps * JX[d] for d in range(size)):
            witnesses.append(f"{describe_vector(sample)} -> R(JX,X)X is not a multiple of JX")
    constant = len(recovered) == 1
    c_value = next(iter(recovered)) if constant else None
    holds = constant and not witnesses and (c is None or c_value == Fraction(c))
    verdict = Verdict("para-sectional", holds, len(samples), witnesses=witnesses[:2])
    if c_value is not None:
        verdict.details.append(f"recovered c = {format_rat(c_value)}")
    else:
        verdict.details.append(f"recovered values of c: {', '.join(sorted(format_rat(v) for v in recovered))}")
    if m.n == 3 and c_value is not None:
        for row in para_table_check(R, c_value):
            status = "ok" if row.holds else f"{len(row.failures)} mismatch(es)"
            verdict.details.append(f"table {row.label}: {status}")
            if not row.holds:
                verdict.holds = False
    return verdict, c_value

