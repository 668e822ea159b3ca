"""Shared curvature computations for scenario runs."""

import asyncio
import os
import sys
import time
from functools import cached_property
from typing import Callable, Dict, Optional, Tuple, TypeVar

from dotenv import load_dotenv

from curvature import (
    ChristoffelBundle,
    CurvatureSummary,
    RiemannTensor,
    christoffel_walker,
    covariant_derivative_riemann,
    curvature_summary,
    riemann_walker,
)
from geometry import WalkerMetric
from scenario import Scenario, build_metric, format_scenario

load_dotenv()

T = TypeVar("T")


def verbose() -> bool:
    return os.getenv("WALKER_EXT_VERBOSE", "") == "1"


def progress(message: str) -> None:
    if verbose():
        print(message, file=sys.stderr)


class ScenarioComputation:
    """Metric and curvature of one scenario, each computed on first use."""

    def __init__(self, scenario: Scenario):
        self.scenario = scenario

    @cached_property
    def metric(self) -> WalkerMetric:
        progress("🔧 Building metric")
        return build_metric(self.scenario)

    @cached_property
    def gamma(self) -> ChristoffelBundle:
        return christoffel_walker(self.metric)

    @cached_property
    def riemann(self) -> RiemannTensor:
        progress("🧮 Computing curvature")
        return riemann_walker(self.metric, self.gamma)

    @cached_property
    def summary(self) -> CurvatureSummary:
        return curvature_summary(self.metric, self.riemann)

    @cached_property
    def nabla_riemann(self):
        progress("🧮 Computing covariant derivative of the curvature")
        return covariant_derivative_riemann(self.metric, self.gamma, self.riemann)


class CurvatureService:
    """Caches computations per scenario text and runs heavy work off the event loop."""

    def __init__(self, max_entries: int = 16):
        self._cache: Dict[str, Tuple[ScenarioComputation, float]] = {}
        self._max_entries = max_entries

    def _get_cached(self, key: str) -> Optional[ScenarioComputation]:
        if key in self._cache:
            computation, _ = self._cache[key]
            self._cache[key] = (computation, time.time())
            progress("Using cached computation")
            return computation
        return None

    def _cache_computation(self, key: str, computation: ScenarioComputation) -> None:
        self._cache[key] = (computation, time.time())
        if len(self._cache) > self._max_entries:
            oldest = min(self._cache.items(), key=lambda x: x[1][1])
            del self._cache[oldest[0]]

    def computation(self, scenario: Scenario) -> ScenarioComputation:
        key = format_scenario(scenario)
        cached = self._get_cached(key)
        if cached:
            return cached
        computation = ScenarioComputation(scenario)
        self._cache_computation(key, computation)
        return computation

    async def run(self, func: Callable[..., T], *args) -> T:
        """Run a CPU-bound computation in a worker thread."""
        return await asyncio.to_thread(func, *args)

    def clear(self) -> None:
        self._cache.clear()


# Global curvature service instance
curvature_service = CurvatureService()
