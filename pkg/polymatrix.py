"""Helpers for square matrices with Poly entries (tuples of tuples)."""

from fractions import Fraction
from functools import lru_cache
from typing import List, Sequence, Tuple

from expr import Poly

PolyMatrix = Tuple[Tuple[Poly, ...], ...]


def freeze(rows: Sequence[Sequence[Poly]]) -> PolyMatrix:
    return tuple(tuple(row) for row in rows)


def zeros(nvars: int, size: int) -> List[List[Poly]]:
    return [[Poly.zero(nvars) for _ in range(size)] for _ in range(size)]


def identity(nvars: int, size: int) -> PolyMatrix:
    rows = zeros(nvars, size)
    for i in range(size):
        rows[i][i] = Poly.one(nvars)
    return freeze(rows)


def transpose(m: PolyMatrix) -> PolyMatrix:
    return tuple(zip(*m))


def matmul(a: PolyMatrix, b: PolyMatrix) -> PolyMatrix:
    nvars = a[0][0].nvars
    size, inner, cols = len(a), len(b), len(b[0])
    rows = []
    for i in range(size):
        row = []
        for j in range(cols):
            total = Poly.zero(nvars)
            for k in range(inner):
                if a[i][k] and b[k][j]:
                    total = total + a[i][k] * b[k][j]
            row.append(total)
        rows.append(tuple(row))
    return tuple(rows)


def add(a: PolyMatrix, b: PolyMatrix) -> PolyMatrix:
    return tuple(tuple(x + y for x, y in zip(ra, rb)) for ra, rb in zip(a, b))


def sub(a: PolyMatrix, b: PolyMatrix) -> PolyMatrix:
    return tuple(tuple(x - y for x, y in zip(ra, rb)) for ra, rb in zip(a, b))


def scale(m: PolyMatrix, factor) -> PolyMatrix:
    return tuple(tuple(x * factor for x in row) for row in m)


def is_zero(m: PolyMatrix) -> bool:
    return all(entry.is_zero() for row in m for entry in row)


def evaluate(m: PolyMatrix, values: Sequence[Fraction]) -> Tuple[Tuple[Fraction, ...], ...]:
    return tuple(tuple(entry.evaluate(values) for entry in row) for row in m)


def determinant(m: PolyMatrix) -> Poly:
    """Exact determinant by cofactor expansion, memoised on column subsets."""
    size = len(m)
    nvars = m[0][0].nvars

    @lru_cache(maxsize=None)
    def minor(row: int, columns: Tuple[int, ...]) -> Poly:
        if row == size:
            return Poly.one(nvars)
        total = Poly.zero(nvars)
        for position, col in enumerate(columns):
            entry = m[row][col]
            if not entry:
                continue
            rest = columns[:position] + columns[position + 1:]
            term = entry * minor(row + 1, rest)
            total = total - term if position % 2 else total + term
        return total

    return minor(0, tuple(range(size)))
