"""Charts, base tensor data and Walker metrics.

Index convention: total-space indices are 0-based with the base coordinates
first, i.e. a = 0..n-1 stands for x1..xn and a = n..2n-1 for x1'..xn'.
Base data (connections, endomorphisms, Phi) use 0-based base indices.
"""

from collections.abc import Mapping as MappingABC
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, Iterator, List, Mapping, Sequence, Tuple

import polymatrix
from errors import DimensionError, PreconditionError
from expr import Poly, VarId, is_base_only, variable_names
from polymatrix import PolyMatrix

Index3 = Tuple[int, int, int]


@dataclass(frozen=True)
class Chart:
    """Coordinates (x1..xn, x1'..xn') on the cotangent bundle of an n-manifold."""

    n: int

    def __post_init__(self):
        if self.n < 1:
            raise DimensionError("base dimension must be at least 1")

    @property
    def dim(self) -> int:
        return 2 * self.n

    @property
    def nvars(self) -> int:
        return 2 * self.n

    @property
    def names(self) -> List[str]:
        return variable_names(self.nvars)

    def base(self, i: int) -> Poly:
        """The coordinate x_{i+1} as a polynomial (i is 0-based)."""
        return Poly.variable(self.nvars, i)

    def fiber(self, i: int) -> Poly:
        """The coordinate x_{i+1}' as a polynomial (i is 0-based)."""
        return Poly.variable(self.nvars, self.n + i)

    def zero(self) -> Poly:
        return Poly.zero(self.nvars)

    def constant(self, value) -> Poly:
        return Poly.constant(self.nvars, value)

    def index_label(self, a: int) -> str:
        if a < self.n:
            return str(a + 1)
        return f"{a - self.n + 1}'"

    def require(self, n: int, what: str) -> None:
        if self.n != n:
            raise DimensionError(f"{what} needs base dimension {n}, got {self.n}")

    def check_poly(self, p: Poly, what: str, base_only: bool = False) -> None:
        if p.nvars != self.nvars:
            raise DimensionError(f"{what}: polynomial in {p.nvars} variables, chart has {self.nvars}")
        if base_only and not is_base_only(p, self.n):
            raise DimensionError(f"{what} must not depend on fiber coordinates: {p}")


def same_chart(*charts: Chart) -> Chart:
    first = charts[0]
    for other in charts[1:]:
        if other != first:
            raise DimensionError(f"base dimension mismatch: {first.n} vs {other.n}")
    return first


@dataclass(frozen=True)
class AffineConnection:
    """Torsion-free connection on the base; entries[(i, j, k)] = Gamma_ij^k."""

    chart: Chart
    entries: Dict[Index3, Poly]

    def __post_init__(self):
        for (i, j, k), value in self.entries.items():
            self.chart.check_poly(value, f"Gamma[{i + 1},{j + 1},{k + 1}]", base_only=True)
            if self.entries.get((j, i, k), self.chart.zero()) != value:
                raise PreconditionError(f"connection has torsion at Gamma[{i + 1},{j + 1},{k + 1}]")

    @classmethod
    def flat(cls, chart: Chart) -> "AffineConnection":
        return cls(chart, {})

    @classmethod
    def from_entries(cls, chart: Chart, entries: Mapping[Index3, Poly]) -> "AffineConnection":
        """Build a connection, filling in Gamma_ji^k from Gamma_ij^k where only one is given."""
        completed: Dict[Index3, Poly] = {}
        for (i, j, k), value in entries.items():
            if not value:
                continue
            completed[(i, j, k)] = value
            completed.setdefault((j, i, k), value)
        return cls(chart, completed)

    def gamma(self, i: int, j: int, k: int) -> Poly:
        return self.entries.get((i, j, k), self.chart.zero())

    def is_flat_symbols(self) -> bool:
        return not self.entries


@dataclass(frozen=True)
class SymTensor2Base:
    """Symmetric (0,2)-tensor on the base, stored as its component matrix."""

    chart: Chart
    phi: PolyMatrix

    def __post_init__(self):
        n = self.chart.n
        if len(self.phi) != n or any(len(row) != n for row in self.phi):
            raise DimensionError(f"Phi must be {n}x{n}")
        for i in range(n):
            for j in range(n):
                self.chart.check_poly(self.phi[i][j], f"Phi[{i + 1},{j + 1}]", base_only=True)
                if self.phi[i][j] != self.phi[j][i]:
                    raise PreconditionError(f"Phi is not symmetric at [{i + 1},{j + 1}]")

    @classmethod
    def zero(cls, chart: Chart) -> "SymTensor2Base":
        return cls(chart, polymatrix.freeze(polymatrix.zeros(chart.nvars, chart.n)))

    @classmethod
    def from_entries(cls, chart: Chart, entries: Mapping[Tuple[int, int], Poly]) -> "SymTensor2Base":
        rows = polymatrix.zeros(chart.nvars, chart.n)
        for (i, j), value in entries.items():
            rows[i][j] = value
            rows[j][i] = value
        return cls(chart, polymatrix.freeze(rows))

    def scaled(self, factor) -> "SymTensor2Base":
        return SymTensor2Base(self.chart, polymatrix.scale(self.phi, factor))

    def is_zero(self) -> bool:
        return polymatrix.is_zero(self.phi)


@dataclass(frozen=True)
class EndoBase:
    """(1,1)-tensor on the base with t[i][r] = T_i^r, i.e. T(d_i) = sum_r T_i^r d_r."""

    chart: Chart
    t: PolyMatrix

    def __post_init__(self):
        n = self.chart.n
        if len(self.t) != n or any(len(row) != n for row in self.t):
            raise DimensionError(f"endomorphism must be {n}x{n}")
        for row in self.t:
            for value in row:
                self.chart.check_poly(value, "endomorphism entry", base_only=True)

    @classmethod
    def identity(cls, chart: Chart) -> "EndoBase":
        return cls(chart, polymatrix.identity(chart.nvars, chart.n))

    @classmethod
    def zero(cls, chart: Chart) -> "EndoBase":
        return cls(chart, polymatrix.freeze(polymatrix.zeros(chart.nvars, chart.n)))

    @classmethod
    def from_entries(cls, chart: Chart, entries: Mapping[Tuple[int, int], Poly]) -> "EndoBase":
        rows = polymatrix.zeros(chart.nvars, chart.n)
        for (i, r), value in entries.items():
            rows[i][r] = value
        return cls(chart, polymatrix.freeze(rows))

    def scaled(self, factor) -> "EndoBase":
        return EndoBase(self.chart, polymatrix.scale(self.t, factor))


@dataclass(frozen=True)
class VectorFieldBase:
    chart: Chart
    comps: Tuple[Poly, ...]

    def __post_init__(self):
        if len(self.comps) != self.chart.n:
            raise DimensionError(f"vector field needs {self.chart.n} components")
        for value in self.comps:
            self.chart.check_poly(value, "vector field component", base_only=True)

    @classmethod
    def zero(cls, chart: Chart) -> "VectorFieldBase":
        return cls(chart, tuple(chart.zero() for _ in range(chart.n)))


@dataclass(frozen=True)
class WalkerMetric:
    """g = 2 dx^i o dx^i' + B_ij dx^i o dx^j, determined by the symmetric block B."""

    chart: Chart
    B: PolyMatrix

    def __post_init__(self):
        n = self.chart.n
        if len(self.B) != n or any(len(row) != n for row in self.B):
            raise DimensionError(f"B must be {n}x{n}")
        for i in range(n):
            for j in range(n):
                self.chart.check_poly(self.B[i][j], f"B[{i + 1},{j + 1}]")
                if self.B[i][j] != self.B[j][i]:
                    raise PreconditionError(f"B is not symmetric at [{i + 1},{j + 1}]")

    @classmethod
    def from_rows(cls, chart: Chart, rows: Sequence[Sequence[Poly]]) -> "WalkerMetric":
        return cls(chart, polymatrix.freeze(rows))

    @property
    def n(self) -> int:
        return self.chart.n

    @property
    def dim(self) -> int:
        return self.chart.dim

    def component(self, a: int, b: int) -> Poly:
        n = self.n
        if a < n and b < n:
            return self.B[a][b]
        if abs(a - b) == n:
            return self.chart.constant(1)
        return self.chart.zero()


class PointAssignment(MappingABC):
    """A point of the total space: one rational per coordinate."""

    def __init__(self, chart: Chart, values: Sequence):
        if len(values) != chart.nvars:
            raise DimensionError(f"point needs {chart.nvars} coordinates, got {len(values)}")
        self.chart = chart
        self.values: Tuple[Fraction, ...] = tuple(Fraction(v) for v in values)

    @classmethod
    def from_mapping(cls, chart: Chart, mapping: Mapping[VarId, Fraction]) -> "PointAssignment":
        values = []
        for position in range(chart.nvars):
            var = VarId.at_position(position, chart.n)
            if var not in mapping:
                raise DimensionError(f"point does not assign {var.name}")
            values.append(mapping[var])
        return cls(chart, values)

    def __getitem__(self, var: VarId) -> Fraction:
        return self.values[var.position(self.chart.n)]

    def __iter__(self) -> Iterator[VarId]:
        return (VarId.at_position(p, self.chart.n) for p in range(self.chart.nvars))

    def __len__(self) -> int:
        return self.chart.nvars

    def __eq__(self, other) -> bool:
        if isinstance(other, PointAssignment):
            return self.chart == other.chart and self.values == other.values
        return NotImplemented

    def __hash__(self) -> int:
        return hash((self.chart, self.values))

    def __repr__(self) -> str:
        from expr import format_rat

        pairs = ", ".join(
            f"{name}={format_rat(v)}" for name, v in zip(self.chart.names, self.values)
        )
        return f"PointAssignment({pairs})"


@dataclass(frozen=True)
class TangentVec:
    """Components (alpha_1..alpha_n, alpha_1'..alpha_n') with eps = g(v, v) at the attached point."""

    comps: Tuple[Fraction, ...]
    eps: Fraction

    def scaled(self, t) -> "TangentVec":
        t = Fraction(t)
        return TangentVec(tuple(c * t for c in self.comps), self.eps * t * t)


def metric_full(m: WalkerMetric) -> PolyMatrix:
    """The 2n x 2n matrix [[B, I], [I, 0]]."""
    size = m.dim
    return tuple(tuple(m.component(a, b) for b in range(size)) for a in range(size))


def metric_inverse(m: WalkerMetric) -> PolyMatrix:
    """The exact inverse [[0, I], [I, -B]]."""
    n, size = m.n, m.dim
    rows = polymatrix.zeros(m.chart.nvars, size)
    for i in range(n):
        rows[i][n + i] = m.chart.constant(1)
        rows[n + i][i] = m.chart.constant(1)
        for j in range(n):
            rows[n + i][n + j] = -m.B[i][j]
    return polymatrix.freeze(rows)


def metric_at(m: WalkerMetric, pt: PointAssignment) -> Tuple[Tuple[Fraction, ...], ...]:
    return polymatrix.evaluate(metric_full(m), pt.values)


def inverse_at(m: WalkerMetric, pt: PointAssignment) -> Tuple[Tuple[Fraction, ...], ...]:
    return polymatrix.evaluate(metric_inverse(m), pt.values)


def bilinear(g: Sequence[Sequence[Fraction]], u: Sequence[Fraction], v: Sequence[Fraction]) -> Fraction:
    total = Fraction(0)
    for a, ua in enumerate(u):
        if not ua:
            continue
        row = g[a]
        for b, vb in enumerate(v):
            if vb and row[b]:
                total += row[b] * ua * vb
    return total


def metric_eval(m: WalkerMetric, pt: PointAssignment, u: TangentVec, v: TangentVec) -> Fraction:
    """Exact g(u, v) at pt."""
    return bilinear(metric_at(m, pt), u.comps, v.comps)


def tangent_vec(m: WalkerMetric, pt: PointAssignment, comps: Sequence) -> TangentVec:
    comps = tuple(Fraction(c) for c in comps)
    if len(comps) != m.dim:
        raise DimensionError(f"tangent vector needs {m.dim} components")
    return TangentVec(comps, bilinear(metric_at(m, pt), comps, comps))


def coordinate_vector(m: WalkerMetric, pt: PointAssignment, a: int) -> TangentVec:
    comps = [0] * m.dim
    comps[a] = 1
    return tangent_vec(m, pt, comps)
