"""Pointwise curvature operators over exact rationals and sampled verdicts.

Matrices are tuples of rows of Fractions; characteristic polynomials, ranks
and powers go through sympy's DomainMatrix over QQ, rational eigenvalues
through factorisation over QQ. Verdicts are sampling evidence, never proofs.
"""

import random
import sys
from collections import Counter, defaultdict
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple

from sympy import QQ, Poly as SymPoly, Rational, Symbol
from sympy.polys.matrices import DomainMatrix

from curvature import RiemannTensor
from errors import DimensionError, NullVectorError
from expr import Poly, format_rat
from geometry import PointAssignment, TangentVec, WalkerMetric, bilinear, inverse_at, metric_at, tangent_vec
from sampling import CausalClass, Sample, SampleScheme

RatMatrix = Tuple[Tuple[Fraction, ...], ...]
Index4 = Tuple[int, int, int, int]
Index5 = Tuple[int, int, int, int, int]

LAMBDA = Symbol("lambda")

SAMPLING_LABEL = "sampling evidence"


def _to_qq(q: Fraction):
    return QQ(q.numerator, q.denominator)


def _from_qq(x) -> Fraction:
    return Fraction(int(x.numerator), int(x.denominator))


def to_domain(M: RatMatrix) -> DomainMatrix:
    size = len(M)
    rows = [[_to_qq(Fraction(x)) for x in row] for row in M]
    return DomainMatrix(rows, (size, len(M[0]) if size else 0), QQ).to_dense()


def identity_domain(size: int) -> DomainMatrix:
    """Identity in the dense format produced by to_domain."""
    return to_domain(shift(zero_matrix(size), Fraction(-1)))


def from_domain(D: DomainMatrix) -> RatMatrix:
    rows, cols = D.shape
    sym = D.to_Matrix()
    return tuple(
        tuple(Fraction(int(sym[i, j].p), int(sym[i, j].q)) for j in range(cols)) for i in range(rows)
    )


def zero_matrix(size: int) -> RatMatrix:
    return tuple(tuple(Fraction(0) for _ in range(size)) for _ in range(size))


def is_zero_matrix(M: RatMatrix) -> bool:
    return all(not x for row in M for x in row)


def scale_matrix(M: RatMatrix, t) -> RatMatrix:
    t = Fraction(t)
    return tuple(tuple(x * t for x in row) for row in M)


def shift(M: RatMatrix, lam: Fraction) -> RatMatrix:
    """M - lam I."""
    return tuple(tuple(x - lam if i == j else x for j, x in enumerate(row)) for i, row in enumerate(M))


def matmul(A: RatMatrix, B: RatMatrix) -> RatMatrix:
    return from_domain(to_domain(A).matmul(to_domain(B)))


def rank(M: RatMatrix) -> int:
    return to_domain(M).rank()


@dataclass(frozen=True)
class CharPoly:
    """Monic characteristic polynomial, coefficients from the leading one down."""

    coeffs: Tuple[Fraction, ...]

    @classmethod
    def from_roots(cls, roots: Sequence) -> "CharPoly":
        coeffs = [Fraction(1)]
        for root in roots:
            root = Fraction(root)
            shifted = coeffs + [Fraction(0)]
            for i in range(1, len(shifted)):
                shifted[i] -= root * coeffs[i - 1]
            coeffs = shifted
        return cls(tuple(coeffs))

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def to_sympy(self) -> SymPoly:
        return SymPoly([Rational(c.numerator, c.denominator) for c in self.coeffs], LAMBDA, domain=QQ)

    def is_nilpotent(self) -> bool:
        return all(not c for c in self.coeffs[1:])

    def __str__(self) -> str:
        pieces = []
        for i, coeff in enumerate(self.coeffs):
            if not coeff:
                continue
            power = self.degree - i
            mono = "" if power == 0 else ("lambda" if power == 1 else f"lambda^{power}")
            magnitude = abs(coeff)
            if not mono:
                body = format_rat(magnitude)
            elif magnitude == 1:
                body = mono
            else:
                body = f"{format_rat(magnitude)}*{mono}"
            if not pieces:
                pieces.append(f"-{body}" if coeff < 0 else body)
            else:
                pieces.append(f" - {body}" if coeff < 0 else f" + {body}")
        return "".join(pieces)


@dataclass(frozen=True)
class Eigenvalue:
    value: Fraction
    algebraic: int
    geometric: int
    blocks: Tuple[int, ...]


@dataclass(frozen=True)
class JordanReport:
    """
    Jordan structure of a rational matrix.

    When the characteristic polynomial has irreducible factors of degree > 1,
    spectrum_rational is False and those factors are listed with their
    multiplicities in irrational_factors; rational eigenvalues are still analysed.
    """

    eigenvalues: Tuple[Eigenvalue, ...]
    spectrum_rational: bool
    irrational_factors: Tuple[Tuple[str, int], ...] = ()

    @property
    def diagonalizable(self) -> bool:
        return self.spectrum_rational and all(e.algebraic == e.geometric for e in self.eigenvalues)

    def profile(self) -> Tuple:
        """Hashable summary: eigenvalues with block sizes, then any irrational factors."""
        return (
            tuple((e.value, e.blocks) for e in self.eigenvalues),
            self.irrational_factors,
        )

    def describe(self) -> str:
        parts = []
        for e in self.eigenvalues:
            sizes = ",".join(str(b) for b in e.blocks)
            parts.append(f"{format_rat(e.value)}: blocks [{sizes}]")
        for factor, mult in self.irrational_factors:
            parts.append(f"({factor})^{mult}: irrational")
        return "; ".join(parts) if parts else "empty"


def char_poly(M: RatMatrix) -> CharPoly:
    """Exact monic characteristic polynomial det(lambda I - M)."""
    if any(len(row) != len(M) for row in M):
        raise DimensionError("char_poly needs a square matrix")
    if not M:
        return CharPoly((Fraction(1),))
    return CharPoly(tuple(_from_qq(c) for c in to_domain(M).charpoly()))


def rational_roots(cp: CharPoly) -> Tuple[Dict[Fraction, int], List[Tuple[str, int]]]:
    """Split a characteristic polynomial into rational roots and irreducible higher-degree factors."""
    _, factors = cp.to_sympy().factor_list()
    roots: Dict[Fraction, int] = {}
    rest: List[Tuple[str, int]] = []
    for factor, mult in factors:
        if factor.degree() == 1:
            lead, const = factor.all_coeffs()
            root = -Rational(const) / Rational(lead)
            value = Fraction(int(root.p), int(root.q))
            roots[value] = roots.get(value, 0) + mult
        else:
            rest.append((str(factor.as_expr()), mult))
    return roots, rest


def _blocks_from_ranks(ranks: List[int]) -> Tuple[int, ...]:
    # ranks[k] = rank (M - lam I)^k; number of blocks of size >= k is ranks[k-1] - ranks[k]
    at_least = [ranks[k - 1] - ranks[k] for k in range(1, len(ranks))] + [0]
    blocks: List[int] = []
    for k in range(1, len(at_least)):
        exactly = at_least[k - 1] - at_least[k]
        blocks.extend([k] * exactly)
    return tuple(sorted(blocks, reverse=True))


def jordan_analyze(M: RatMatrix) -> JordanReport:
    """
    Jordan structure from ranks of (M - lam I)^k for every rational eigenvalue lam.

    Args:
        M: Square rational matrix

    Returns:
        JordanReport; eigenvalues sorted increasingly
    """
    size = len(M)
    roots, rest = rational_roots(char_poly(M))
    eigenvalues = []
    for value in sorted(roots):
        algebraic = roots[value]
        shifted = to_domain(shift(M, value))
        power = identity_domain(size)
        ranks = [size]
        while ranks[-1] > size - algebraic:
            power = power.matmul(shifted)
            ranks.append(power.rank())
        ranks.append(ranks[-1])
        blocks = _blocks_from_ranks(ranks)
        eigenvalues.append(Eigenvalue(value, algebraic, size - ranks[1], blocks))
    return JordanReport(tuple(eigenvalues), not rest, tuple(rest))


def eigen_product(M: RatMatrix, roots: Sequence) -> RatMatrix:
    """prod (M - lam I) over roots; zero iff M is diagonalizable with spectrum inside roots."""
    size = len(M)
    result = identity_domain(size)
    for lam in roots:
        result = result.matmul(to_domain(shift(M, Fraction(lam))))
    return from_domain(result)


def nilpotency_index(M: RatMatrix) -> Optional[int]:
    """Least k >= 1 with M^k = 0, or None when M is not nilpotent."""
    size = len(M)
    base = to_domain(M)
    power = base
    for k in range(1, size + 1):
        if power.rank() == 0:
            return k
        power = power.matmul(base)
    return None


def evaluate_curvature(R: RiemannTensor, pt: PointAssignment) -> Dict[Index4, Fraction]:
    """Nonzero mixed components R_{abc}^d at pt."""
    values = {}
    for key, poly in R.mixed.items():
        value = poly.evaluate(pt.values)
        if value:
            values[key] = value
    return values


def evaluate_nabla_riemann(nablaR: Dict[Index5, Poly], pt: PointAssignment) -> Dict[Index5, Fraction]:
    values = {}
    for key, poly in nablaR.items():
        value = poly.evaluate(pt.values)
        if value:
            values[key] = value
    return values


def jacobi_from_values(size: int, Rpt: Dict[Index4, Fraction], v: Sequence[Fraction]) -> RatMatrix:
    # column b holds R(d_b, v) v
    rows = [[Fraction(0)] * size for _ in range(size)]
    for (b, c, e, d), value in Rpt.items():
        if v[c] and v[e]:
            rows[d][b] += value * v[c] * v[e]
    return tuple(tuple(row) for row in rows)


def jacobi(m: WalkerMetric, R: RiemannTensor, pt: PointAssignment, v: TangentVec) -> RatMatrix:
    """Matrix of Y -> R(Y, v) v in the coordinate frame at pt."""
    return jacobi_from_values(m.dim, evaluate_curvature(R, pt), v.comps)


def reduced_jacobi(m: WalkerMetric, R: RiemannTensor, pt: PointAssignment, v: TangentVec) -> RatMatrix:
    """g(v, v)^-1 times the Jacobi operator."""
    if not v.eps:
        raise NullVectorError("reduced Jacobi operator is undefined for null vectors")
    return scale_matrix(jacobi(m, R, pt, v), 1 / v.eps)


def szabo_from_values(
    size: int, ginv: RatMatrix, DRpt: Dict[Index5, Fraction], v: Sequence[Fraction]
) -> RatMatrix:
    # lowered[d][b] = (nabla_v R)(d_b, v, v, d_d), then raised with g^{hd}
    lowered = [[Fraction(0)] * size for _ in range(size)]
    for (e, b, c, f, d), value in DRpt.items():
        if v[e] and v[c] and v[f]:
            lowered[d][b] += value * v[e] * v[c] * v[f]
    rows = [[Fraction(0)] * size for _ in range(size)]
    for h in range(size):
        for d in range(size):
            if ginv[h][d]:
                for b in range(size):
                    if lowered[d][b]:
                        rows[h][b] += ginv[h][d] * lowered[d][b]
    return tuple(tuple(row) for row in rows)


def szabo_operator(
    m: WalkerMetric, nablaR: Dict[Index5, Poly], pt: PointAssignment, v: TangentVec
) -> RatMatrix:
    """Matrix of Y -> (nabla_v R)(Y, v) v at pt."""
    return szabo_from_values(m.dim, inverse_at(m, pt), evaluate_nabla_riemann(nablaR, pt), v.comps)


def skew_from_values(size: int, Rpt: Dict[Index4, Fraction], X: Sequence[Fraction], Y: Sequence[Fraction]) -> RatMatrix:
    rows = [[Fraction(0)] * size for _ in range(size)]
    for (a, b, c, d), value in Rpt.items():
        if X[a] and Y[b]:
            rows[d][c] += value * X[a] * Y[b]
    return tuple(tuple(row) for row in rows)


def skew_operator(
    m: WalkerMetric, R: RiemannTensor, pt: PointAssignment, X: Sequence, Y: Sequence
) -> RatMatrix:
    """Matrix of Z -> R(X, Y) Z at pt."""
    X = [Fraction(x) for x in X]
    Y = [Fraction(y) for y in Y]
    return skew_from_values(m.dim, evaluate_curvature(R, pt), X, Y)


def plane_gram(g: RatMatrix, X: Sequence[Fraction], Y: Sequence[Fraction]) -> Fraction:
    """g(X,X) g(Y,Y) - g(X,Y)^2."""
    return bilinear(g, X, X) * bilinear(g, Y, Y) - bilinear(g, X, Y) ** 2


def skew_square(
    m: WalkerMetric, R: RiemannTensor, pt: PointAssignment, X: Sequence, Y: Sequence
) -> Tuple[Fraction, RatMatrix]:
    """
    Returns (Delta, Q) with Q = Delta^-1 R(X,Y)^2, which depends only on the plane span{X, Y}.

    Raises:
        NullVectorError: the plane is degenerate (Delta = 0)
    """
    X = [Fraction(x) for x in X]
    Y = [Fraction(y) for y in Y]
    delta = plane_gram(metric_at(m, pt), X, Y)
    if not delta:
        raise NullVectorError("degenerate plane: g(X,X) g(Y,Y) - g(X,Y)^2 = 0")
    M = skew_operator(m, R, pt, X, Y)
    return delta, scale_matrix(matmul(M, M), 1 / delta)


@dataclass
class Verdict:
    """Outcome of a sampled check. holds is the property's verdict on the samples seen."""

    name: str
    holds: bool
    samples: int
    details: List[str] = field(default_factory=list)
    witnesses: List[str] = field(default_factory=list)
    evidence: str = SAMPLING_LABEL

    def structured(self) -> Dict[str, object]:
        return {}


@dataclass
class SzaboVerdict(Verdict):
    """Szabo verdict; holds means constant spectrum per causal class."""

    nilpotent: bool = False
    nonzero_count: int = 0
    jordan_profiles: int = 0

    @property
    def jordan_varies(self) -> bool:
        return self.jordan_profiles > 1

    def structured(self) -> Dict[str, object]:
        return {
            "nilpotent": self.nilpotent,
            "nonzero_count": self.nonzero_count,
            "jordan_profiles": self.jordan_profiles,
        }


def describe_vector(sample: Sample) -> str:
    comps = ", ".join(format_rat(c) for c in sample.vector.comps)
    return f"sample {sample.index} at point {sample.point_index}: v = ({comps}), eps = {format_rat(sample.vector.eps)}"


def _point_values(R: RiemannTensor, samples: Sequence[Sample]) -> Dict[int, Dict[Index4, Fraction]]:
    cache: Dict[int, Dict[Index4, Fraction]] = {}
    for sample in samples:
        if sample.point_index not in cache:
            cache[sample.point_index] = evaluate_curvature(R, sample.point)
    return cache


NON_NULL = (CausalClass.SPACELIKE, CausalClass.TIMELIKE)


def osserman_verdict(m: WalkerMetric, R: RiemannTensor, scheme: SampleScheme) -> Verdict:
    """All sampled reduced Jacobi operators, spacelike and timelike, share one characteristic polynomial."""
    samples = scheme.samples(m, NON_NULL)
    values = _point_values(R, samples)
    seen: Dict[CharPoly, Sample] = {}
    per_class: Dict[CausalClass, set] = defaultdict(set)
    for sample in samples:
        J = jacobi_from_values(m.dim, values[sample.point_index], sample.vector.comps)
        cp = char_poly(scale_matrix(J, 1 / sample.vector.eps))
        per_class[sample.causal].add(cp)
        seen.setdefault(cp, sample)
    verdict = Verdict("osserman", len(seen) == 1, len(samples))
    for causal in NON_NULL:
        polys = sorted(str(cp) for cp in per_class[causal])
        verdict.details.append(f"{causal.name.lower()}: {len(polys)} distinct reduced char poly(s): {', '.join(polys)}")
    if len(seen) > 1:
        for cp, sample in list(seen.items())[:2]:
            verdict.witnesses.append(f"{describe_vector(sample)} -> {cp}")
    return verdict


def jordan_osserman_verdict(m: WalkerMetric, R: RiemannTensor, scheme: SampleScheme) -> Verdict:
    """Within each causal class, all sampled reduced Jacobi operators share one Jordan profile."""
    samples = scheme.samples(m, NON_NULL)
    values = _point_values(R, samples)
    profiles: Dict[CausalClass, Dict[Tuple, Tuple[Sample, JordanReport]]] = defaultdict(dict)
    for sample in samples:
        J = jacobi_from_values(m.dim, values[sample.point_index], sample.vector.comps)
        report = jordan_analyze(scale_matrix(J, 1 / sample.vector.eps))
        profiles[sample.causal].setdefault(report.profile(), (sample, report))
    holds = all(len(found) <= 1 for found in profiles.values())
    verdict = Verdict("jordan-osserman", holds, len(samples))
    for causal in NON_NULL:
        found = profiles.get(causal, {})
        verdict.details.append(f"{causal.name.lower()}: {len(found)} distinct Jordan profile(s)")
        if len(found) > 1:
            for sample, report in list(found.values())[:2]:
                verdict.details.append(f"Jordan profile of {describe_vector(sample)}: {report.describe()}")
    return verdict


@dataclass
class NullProfile:
    indices: Dict[int, Counter]
    not_nilpotent: List[Sample]

    def all_indices(self) -> Counter:
        total: Counter = Counter()
        for counter in self.indices.values():
            total.update(counter)
        return total

    def max_distinct_at_point(self) -> int:
        return max((len(counter) for counter in self.indices.values()), default=0)


def null_nilpotency_profile(m: WalkerMetric, R: RiemannTensor, scheme: SampleScheme) -> NullProfile:
    """Nilpotency index of the Jacobi operator of every sampled null vector, grouped by point."""
    samples = scheme.samples(m, (CausalClass.NULL,))
    values = _point_values(R, samples)
    indices: Dict[int, Counter] = defaultdict(Counter)
    bad = []
    for sample in samples:
        J = jacobi_from_values(m.dim, values[sample.point_index], sample.vector.comps)
        k = nilpotency_index(J)
        if k is None:
            bad.append(sample)
        else:
            indices[sample.point_index][k] += 1
    return NullProfile(dict(indices), bad)


def null_nilpotency_verdict(m: WalkerMetric, R: RiemannTensor, scheme: SampleScheme) -> Verdict:
    profile = null_nilpotency_profile(m, R, scheme)
    verdict = Verdict("null-nilpotent", not profile.not_nilpotent, scheme.count)
    counts = profile.all_indices()
    verdict.details.append(
        "nilpotency indices: " + ", ".join(f"{k} (x{counts[k]})" for k in sorted(counts)) if counts else "no nilpotent samples"
    )
    verdict.details.append(f"most distinct indices at a single point: {profile.max_distinct_at_point()}")
    for sample in profile.not_nilpotent[:2]:
        verdict.witnesses.append(f"{describe_vector(sample)} -> not nilpotent")
    return verdict


def szabo_verdict(
    m: WalkerMetric, nablaR: Dict[Index5, Poly], scheme: SampleScheme
) -> SzaboVerdict:
    """Szabo operators of sampled unit vectors: constant eigenvalues per causal class, plus nilpotency and Jordan data."""
    samples = scheme.samples(m, NON_NULL)
    cache: Dict[int, Tuple[RatMatrix, Dict[Index5, Fraction]]] = {}
    per_class: Dict[CausalClass, Dict[CharPoly, Sample]] = defaultdict(dict)
    profiles: Dict[Tuple, Tuple[Sample, JordanReport]] = {}
    nonzero = 0
    for sample in samples:
        if sample.point_index not in cache:
            cache[sample.point_index] = (inverse_at(m, sample.point), evaluate_nabla_riemann(nablaR, sample.point))
        ginv, DRpt = cache[sample.point_index]
        S = szabo_from_values(m.dim, ginv, DRpt, sample.vector.comps)
        if not is_zero_matrix(S):
            nonzero += 1
        per_class[sample.causal].setdefault(char_poly(S), sample)
        report = jordan_analyze(S)
        profiles.setdefault(report.profile(), (sample, report))
    holds = all(len(found) <= 1 for found in per_class.values())
    all_polys = {cp for found in per_class.values() for cp in found}
    verdict = SzaboVerdict(
        "szabo",
        holds,
        len(samples),
        nilpotent=all(cp.is_nilpotent() for cp in all_polys),
        nonzero_count=nonzero,
        jordan_profiles=len(profiles),
    )
    for causal in NON_NULL:
        found = per_class.get(causal, {})
        verdict.details.append(
            f"{causal.name.lower()}: {len(found)} distinct char poly(s): {', '.join(sorted(str(cp) for cp in found))}"
        )
        if len(found) > 1:
            for cp, sample in list(found.items())[:2]:
                verdict.witnesses.append(f"{describe_vector(sample)} -> {cp}")
    verdict.details.append(f"nilpotent: {'yes' if verdict.nilpotent else 'no'}; nonzero operators: {nonzero}")
    verdict.details.append(f"Jordan profiles: {len(profiles)} ({'varies' if verdict.jordan_varies else 'constant'})")
    if verdict.jordan_varies:
        for sample, report in list(profiles.values())[:2]:
            verdict.details.append(f"Jordan profile at {describe_vector(sample)}: {report.describe()}")
    return verdict


def skew_curvature_verdict(m: WalkerMetric, R: RiemannTensor, scheme: SampleScheme) -> Verdict:
    """
    Ivanov-Petrova proxy: char poly of Q = Delta^-1 R(X,Y)^2 constant per sign of Delta.

    Degenerate planes are skipped and logged.
    """
    rng = random.Random(scheme.seed * 104729 + 3)
    points = scheme.points(m)
    by_sign: Dict[int, Dict[CharPoly, str]] = defaultdict(dict)
    skipped = 0
    cache: Dict[int, Tuple[RatMatrix, Dict[Index4, Fraction]]] = {}
    for s in range(scheme.count):
        point_index = s % len(points)
        pt = points[point_index]
        if point_index not in cache:
            cache[point_index] = (metric_at(m, pt), evaluate_curvature(R, pt))
        g, Rpt = cache[point_index]
        X = scheme.random_vector(m, rng)
        Y = scheme.random_vector(m, rng)
        delta = plane_gram(g, X, Y)
        if not delta:
            skipped += 1
            print(f"⏭️ Skipping degenerate plane in sample {s}", file=sys.stderr)
            continue
        M = skew_from_values(m.dim, Rpt, X, Y)
        cp = char_poly(scale_matrix(matmul(M, M), 1 / delta))
        span = f"X = ({', '.join(format_rat(x) for x in X)}), Y = ({', '.join(format_rat(y) for y in Y)})"
        by_sign[1 if delta > 0 else -1].setdefault(cp, f"plane {s} at point {point_index}: {span}")
    holds = all(len(found) <= 1 for found in by_sign.values())
    verdict = Verdict("ivanov-petrova", holds, scheme.count - skipped)
    for sign, label in ((1, "Delta > 0"), (-1, "Delta < 0")):
        found = by_sign.get(sign, {})
        verdict.details.append(f"{label}: {len(found)} distinct char poly(s) of Q")
        if len(found) > 1:
            for cp, where in list(found.items())[:2]:
                verdict.witnesses.append(f"{where} -> {cp}")
    if skipped:
        verdict.details.append(f"skipped degenerate planes: {skipped}")
    return verdict


def jacobi_at(m: WalkerMetric, R: RiemannTensor, pt: PointAssignment, comps: Sequence) -> Tuple[TangentVec, RatMatrix]:
    v = tangent_vec(m, pt, comps)
    return v, jacobi(m, R, pt, v)
