"""Exact rationals and sparse multivariate polynomials over them.

Every polynomial lives in Q[x1..xn, x1p..xnp] for some base dimension n; a
Poly records its variable count (always 2n) and stores only non-zero
coefficients keyed by exponent tuples. Positions 0..n-1 hold the base
coordinates, positions n..2n-1 the fiber coordinates.
"""

import re
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from types import MappingProxyType
from typing import Dict, Iterable, List, Mapping, Optional, Sequence, Tuple, Union

from errors import DimensionError, MissingAssignmentError, ParseError

Rat = Fraction
Exponent = Tuple[int, ...]
Scalar = Union[int, Fraction]

_RAT_PATTERN = re.compile(r"^\s*(-?\d+)(?:\s*/\s*(\d+))?\s*$")


def format_rat(q: Scalar) -> str:
    """Render a rational as "p/q", or "p" when the denominator is 1."""
    q = Fraction(q)
    if q.denominator == 1:
        return str(q.numerator)
    return f"{q.numerator}/{q.denominator}"


def parse_rat(text: str) -> Fraction:
    """
    Parse "p" or "p/q" into an exact rational.

    Args:
        text: The literal, optionally signed

    Returns:
        The rational in lowest terms
    """
    match = _RAT_PATTERN.match(text)
    if not match:
        raise ParseError(f"not a rational number: {text.strip()!r}")
    denominator = int(match.group(2)) if match.group(2) else 1
    if denominator == 0:
        raise ParseError("zero denominator in rational literal")
    return Fraction(int(match.group(1)), denominator)


class VarKind(Enum):
    BASE = "base"
    FIBER = "fiber"


@dataclass(frozen=True)
class VarId:
    """A coordinate x_i (base) or x_i' (fiber), 1-based."""

    kind: VarKind
    index: int

    @classmethod
    def base(cls, index: int) -> "VarId":
        return cls(VarKind.BASE, index)

    @classmethod
    def fiber(cls, index: int) -> "VarId":
        return cls(VarKind.FIBER, index)

    @classmethod
    def at_position(cls, position: int, n: int) -> "VarId":
        if position < n:
            return cls(VarKind.BASE, position + 1)
        return cls(VarKind.FIBER, position - n + 1)

    def position(self, n: int) -> int:
        if not 1 <= self.index <= n:
            raise DimensionError(f"{self.name} does not exist in base dimension {n}")
        if self.kind is VarKind.BASE:
            return self.index - 1
        return n + self.index - 1

    @property
    def name(self) -> str:
        suffix = "p" if self.kind is VarKind.FIBER else ""
        return f"x{self.index}{suffix}"


def variable_names(nvars: int) -> List[str]:
    n = nvars // 2
    return [f"x{i}" for i in range(1, n + 1)] + [f"x{i}p" for i in range(1, n + 1)]


def grlex_key(exponent: Exponent) -> Tuple[int, Exponent]:
    return (sum(exponent), exponent)


class Poly:
    """
    Immutable sparse polynomial with rational coefficients.

    Two polynomials are equal iff they have the same variable count and the
    same term mapping; zero coefficients are never stored, so equality is
    structural.
    """

    __slots__ = ("nvars", "_terms", "_hash")

    def __init__(self, nvars: int, terms: Optional[Mapping[Exponent, Scalar]] = None):
        clean: Dict[Exponent, Fraction] = {}
        for exponent, coeff in (terms or {}).items():
            exponent = tuple(exponent)
            if len(exponent) != nvars or any(k < 0 for k in exponent):
                raise DimensionError(f"bad exponent {exponent} for {nvars} variables")
            value = clean.get(exponent, Fraction(0)) + Fraction(coeff)
            if value:
                clean[exponent] = value
            else:
                clean.pop(exponent, None)
        self.nvars = nvars
        self._terms = clean
        self._hash = None

    @classmethod
    def _wrap(cls, nvars: int, terms: Dict[Exponent, Fraction]) -> "Poly":
        # terms must already be canonical (no zero coefficients)
        poly = cls.__new__(cls)
        poly.nvars = nvars
        poly._terms = terms
        poly._hash = None
        return poly

    @classmethod
    def zero(cls, nvars: int) -> "Poly":
        return cls._wrap(nvars, {})

    @classmethod
    def constant(cls, nvars: int, value: Scalar) -> "Poly":
        value = Fraction(value)
        if not value:
            return cls.zero(nvars)
        return cls._wrap(nvars, {(0,) * nvars: value})

    @classmethod
    def one(cls, nvars: int) -> "Poly":
        return cls.constant(nvars, 1)

    @classmethod
    def variable(cls, nvars: int, position: int) -> "Poly":
        exponent = [0] * nvars
        exponent[position] = 1
        return cls._wrap(nvars, {tuple(exponent): Fraction(1)})

    @classmethod
    def from_var(cls, var: VarId, n: int) -> "Poly":
        return cls.variable(2 * n, var.position(n))

    @property
    def terms(self) -> Mapping[Exponent, Fraction]:
        return MappingProxyType(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def __bool__(self) -> bool:
        return bool(self._terms)

    def __len__(self) -> int:
        return len(self._terms)

    def is_constant(self) -> bool:
        return all(not any(exponent) for exponent in self._terms)

    def constant_term(self) -> Fraction:
        return self._terms.get((0,) * self.nvars, Fraction(0))

    def coefficient(self, exponent: Exponent) -> Fraction:
        return self._terms.get(tuple(exponent), Fraction(0))

    def degree(self) -> int:
        """Total degree; -1 for the zero polynomial."""
        return max((sum(exponent) for exponent in self._terms), default=-1)

    def degree_in(self, positions: Iterable[int]) -> int:
        positions = list(positions)
        return max(
            (sum(exponent[p] for p in positions) for exponent in self._terms),
            default=-1,
        )

    def variables(self) -> List[int]:
        used = set()
        for exponent in self._terms:
            used.update(p for p, k in enumerate(exponent) if k)
        return sorted(used)

    def sorted_terms(self) -> List[Tuple[Exponent, Fraction]]:
        """Terms in graded lexicographic order, leading term first."""
        return sorted(self._terms.items(), key=lambda item: grlex_key(item[0]), reverse=True)

    def _coerce(self, other) -> "Poly":
        if isinstance(other, Poly):
            if other.nvars != self.nvars:
                raise DimensionError(
                    f"cannot combine polynomials in {self.nvars} and {other.nvars} variables"
                )
            return other
        if isinstance(other, (int, Fraction)):
            return Poly.constant(self.nvars, other)
        raise TypeError(f"cannot combine Poly with {type(other).__name__}")

    def __add__(self, other) -> "Poly":
        other = self._coerce(other)
        result = dict(self._terms)
        for exponent, coeff in other._terms.items():
            value = result.get(exponent, 0) + coeff
            if value:
                result[exponent] = value
            else:
                result.pop(exponent, None)
        return Poly._wrap(self.nvars, result)

    __radd__ = __add__

    def __neg__(self) -> "Poly":
        return Poly._wrap(self.nvars, {e: -c for e, c in self._terms.items()})

    def __sub__(self, other) -> "Poly":
        return self + (-self._coerce(other))

    def __rsub__(self, other) -> "Poly":
        return self._coerce(other) - self

    def scale(self, factor: Scalar) -> "Poly":
        factor = Fraction(factor)
        if not factor:
            return Poly.zero(self.nvars)
        return Poly._wrap(self.nvars, {e: c * factor for e, c in self._terms.items()})

    def __mul__(self, other) -> "Poly":
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        other = self._coerce(other)
        if not self._terms or not other._terms:
            return Poly.zero(self.nvars)
        result: Dict[Exponent, Fraction] = {}
        for e1, c1 in self._terms.items():
            for e2, c2 in other._terms.items():
                exponent = tuple(a + b for a, b in zip(e1, e2))
                result[exponent] = result.get(exponent, 0) + c1 * c2
        return Poly._wrap(self.nvars, {e: c for e, c in result.items() if c})

    __rmul__ = __mul__

    def __pow__(self, k: int) -> "Poly":
        if not isinstance(k, int) or k < 0:
            raise ValueError("polynomial powers need a non-negative integer exponent")
        result = Poly.one(self.nvars)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def diff(self, position: int) -> "Poly":
        """Partial derivative with respect to the variable at `position`."""
        result: Dict[Exponent, Fraction] = {}
        for exponent, coeff in self._terms.items():
            k = exponent[position]
            if k:
                lowered = exponent[:position] + (k - 1,) + exponent[position + 1:]
                result[lowered] = coeff * k
        return Poly._wrap(self.nvars, result)

    def evaluate(self, values: Sequence[Fraction]) -> Fraction:
        """Value at a point given as one rational per variable position."""
        total = Fraction(0)
        for exponent, coeff in self._terms.items():
            term = coeff
            for value, k in zip(values, exponent):
                if k:
                    term *= value ** k
            total += term
        return total

    def __eq__(self, other) -> bool:
        if isinstance(other, Poly):
            return self.nvars == other.nvars and self._terms == other._terms
        if isinstance(other, (int, Fraction)):
            return self.is_constant() and self.constant_term() == other
        return NotImplemented

    def __ne__(self, other) -> bool:
        result = self.__eq__(other)
        if result is NotImplemented:
            return result
        return not result

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.nvars, frozenset(self._terms.items())))
        return self._hash

    def __str__(self) -> str:
        return format_poly(self)

    def __repr__(self) -> str:
        return f"Poly({format_poly(self)!r}, nvars={self.nvars})"


def format_monomial(exponent: Exponent, names: Sequence[str]) -> str:
    factors = []
    for name, k in zip(names, exponent):
        if k == 1:
            factors.append(name)
        elif k > 1:
            factors.append(f"{name}^{k}")
    return "*".join(factors)


def format_poly(p: Poly) -> str:
    """
    Render a polynomial in ASCII, graded-lex order, parseable by parse_expr.

    Example: "1/2*x2*x2p^2*x3p - 2*x2p*x3p"
    """
    if p.is_zero():
        return "0"
    names = variable_names(p.nvars)
    pieces = []
    for i, (exponent, coeff) in enumerate(p.sorted_terms()):
        monomial = format_monomial(exponent, names)
        magnitude = abs(coeff)
        if not monomial:
            body = format_rat(magnitude)
        elif magnitude == 1:
            body = monomial
        else:
            body = f"{format_rat(magnitude)}*{monomial}"
        if i == 0:
            pieces.append(f"-{body}" if coeff < 0 else body)
        else:
            pieces.append(f" - {body}" if coeff < 0 else f" + {body}")
    return "".join(pieces)


def poly_add(p: Poly, q: Poly) -> Poly:
    return p + q


def poly_mul(p: Poly, q: Poly) -> Poly:
    return p * q


def poly_diff(p: Poly, v: VarId) -> Poly:
    return p.diff(v.position(p.nvars // 2))


def poly_eval(p: Poly, pt: Mapping[VarId, Fraction]) -> Fraction:
    """
    Evaluate a polynomial at a (possibly partial) assignment.

    Args:
        p: The polynomial
        pt: Values for at least every variable occurring in p

    Returns:
        The exact value
    """
    n = p.nvars // 2
    values = [Fraction(0)] * p.nvars
    for position in p.variables():
        var = VarId.at_position(position, n)
        if var not in pt:
            raise MissingAssignmentError(f"no value assigned to {var.name}")
        values[position] = Fraction(pt[var])
    return p.evaluate(values)


def is_base_only(p: Poly, n: int) -> bool:
    return all(not any(exponent[n:]) for exponent in p.terms)


def fiber_degree(p: Poly, n: int) -> int:
    return p.degree_in(range(n, 2 * n))


def split_fiber(p: Poly, n: int) -> Dict[Exponent, Poly]:
    """
    Group the terms of p by fiber monomial.

    Returns:
        Mapping from fiber exponent tuple (length n) to the base-variable
        coefficient polynomial (still in 2n variables)
    """
    groups: Dict[Exponent, Dict[Exponent, Fraction]] = {}
    for exponent, coeff in p.terms.items():
        fiber_part = exponent[n:]
        base_part = exponent[:n] + (0,) * n
        groups.setdefault(fiber_part, {})[base_part] = coeff
    return {fiber: Poly._wrap(p.nvars, terms) for fiber, terms in groups.items()}


def fiber_monomial_name(fiber_exponent: Exponent) -> str:
    n = len(fiber_exponent)
    names = [f"x{i}p" for i in range(1, n + 1)]
    return format_monomial(fiber_exponent, names) or "1"
