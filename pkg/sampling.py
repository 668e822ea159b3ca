"""Deterministic sampling of rational points and tangent vectors.

Non-null vectors are solved to a prescribed g(v, v) exactly by adjusting one
fiber component: g(d_k, d_k') = 1 and g(d_k', d_k') = 0, so g(v, v) is affine
in alpha_k' with slope 2 alpha_k.
"""

import os
import random
import sys
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import List, Optional, Sequence

from dotenv import load_dotenv

from geometry import PointAssignment, TangentVec, WalkerMetric, bilinear, metric_at, tangent_vec

load_dotenv()

DEFAULT_SEED = 7
DEFAULT_COUNT = 64
DEFAULT_POINTS = 8


class CausalClass(Enum):
    SPACELIKE = 1
    TIMELIKE = -1
    NULL = 0

    @classmethod
    def of(cls, eps: Fraction) -> "CausalClass":
        if eps > 0:
            return cls.SPACELIKE
        if eps < 0:
            return cls.TIMELIKE
        return cls.NULL


@dataclass(frozen=True)
class Sample:
    index: int
    point_index: int
    point: PointAssignment
    vector: TangentVec
    causal: CausalClass
    kind: str


def _env_int(name: str, default: int) -> int:
    raw = os.getenv(name)
    if raw is None or not raw.strip():
        return default
    try:
        return int(raw)
    except ValueError:
        print(f"Warning: {name}={raw!r} is not an integer, using {default}", file=sys.stderr)
        return default


def _random_rat(rng: random.Random, max_den: int = 3) -> Fraction:
    return Fraction(rng.randint(-2, 2), rng.randint(1, max_den))


@dataclass(frozen=True)
class SampleScheme:
    """
    Seeded sampling plan.

    Samples take the classes in turn and each class walks through the points
    in order, so a class with at least npoints samples visits every point.
    For non-null classes, every third sample is coordinate-aligned
    (d_k + t d_k' with k = (s // 3) % n), the others are random.
    Null samples cycle through coordinate-aligned, random and purely fiber
    vectors.
    """

    seed: int = DEFAULT_SEED
    count: int = DEFAULT_COUNT
    npoints: int = DEFAULT_POINTS

    @classmethod
    def from_env(cls, seed: Optional[int] = None, count: Optional[int] = None) -> "SampleScheme":
        """Defaults from WALKER_EXT_SEED / WALKER_EXT_SAMPLES / WALKER_EXT_POINTS; explicit arguments win."""
        return cls(
            seed=seed if seed is not None else _env_int("WALKER_EXT_SEED", DEFAULT_SEED),
            count=count if count is not None else _env_int("WALKER_EXT_SAMPLES", DEFAULT_COUNT),
            npoints=max(1, _env_int("WALKER_EXT_POINTS", DEFAULT_POINTS)),
        )

    def points(self, m: WalkerMetric) -> List[PointAssignment]:
        rng = random.Random(self.seed)
        return [
            PointAssignment(m.chart, [_random_rat(rng) for _ in range(m.chart.nvars)])
            for _ in range(self.npoints)
        ]

    def samples(self, m: WalkerMetric, classes: Sequence[CausalClass]) -> List[Sample]:
        """Sample s targets classes[s % len(classes)]."""
        points = self.points(m)
        rng = random.Random(self.seed * 7919 + 1)
        result = []
        for s in range(self.count):
            causal = classes[s % len(classes)]
            point_index = (s // len(classes)) % len(points)
            point = points[point_index]
            if causal is CausalClass.NULL:
                kind = ("coordinate", "random", "fiber")[s % 3]
            else:
                kind = "coordinate" if s % 3 == 0 else "random"
            comps = self._vector(m, point, s, causal, kind, rng)
            result.append(Sample(s, point_index, point, tangent_vec(m, point, comps), causal, kind))
        return result

    def random_vector(self, m: WalkerMetric, rng: random.Random) -> List[Fraction]:
        comps = [_random_rat(rng, 2) for _ in range(m.dim)]
        if not any(comps):
            comps[0] = Fraction(1)
        return comps

    def _vector(self, m, point, s, causal, kind, rng) -> List[Fraction]:
        n = m.n
        eps = Fraction(causal.value)
        if kind == "fiber":
            comps = [Fraction(0)] * n + [_random_rat(rng, 2) for _ in range(n)]
            if not any(comps):
                comps[n] = Fraction(1)
            return comps
        if kind == "coordinate":
            k = (s // 3) % n
            comps = [Fraction(0)] * m.dim
            comps[k] = Fraction(1)
            comps[n + k] = (eps - m.B[k][k].evaluate(point.values)) / 2
            return comps
        comps = self.random_vector(m, rng)
        k = next((i for i in range(n) if comps[i]), None)
        if k is None:
            k = 0
            comps[0] = Fraction(1)
        current = bilinear(metric_at(m, point), comps, comps)
        comps[n + k] += (eps - current) / (2 * comps[k])
        return comps
