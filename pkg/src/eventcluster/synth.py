"""Seeded generators for periodic, white-noise and burst-composite series.

Random draws use NumPy's ``PCG64`` bit generator through
:func:`numpy.random.default_rng`, so a given ``(parameters, seed)`` pair
always yields the same series.
"""
from dataclasses import dataclass, field
from enum import Enum

import numpy as np

from .core import EventSeries, make_series
from .exceptions import BadRange, EventClusterError

BURST_SIZE = 10_000
PERIODIC_SIZE = 1_000


class GeneratorKind(str, Enum):
    PERIODIC = "periodic"
    UNIFORM = "uniform"
    BURST_COMPOSITE = "burst-composite"


@dataclass(frozen=True)
class GeneratorSpec:
    kind: GeneratorKind
    params: dict = field(default_factory=dict)
    seed: int = 0

    def generate(self) -> EventSeries:
        if self.kind is GeneratorKind.PERIODIC:
            return gen_periodic(**self.params)
        if self.kind is GeneratorKind.UNIFORM:
            return gen_uniform(seed=self.seed, **self.params)
        if self.kind is GeneratorKind.BURST_COMPOSITE:
            return gen_burst_composite(seed=self.seed, **self.params)
        raise EventClusterError(f"unknown generator {self.kind!r}")


def _check_count(n):
    if int(n) != n or n < 0:
        raise BadRange(f"count must be a non-negative integer, got {n!r}")
    return int(n)


def gen_periodic(n, period=1.0, start=0.0) -> EventSeries:
    """``n`` events at ``start, start + period, ...``."""
    n = _check_count(n)
    if not period > 0:
        raise BadRange(f"period must be positive, got {period!r}")
    return make_series(start + np.arange(n, dtype=np.float64) * period)


def gen_uniform(n, lo=0.0, hi=1.0, seed=0) -> EventSeries:
    """``n`` sorted draws from the half-open interval ``[lo, hi)``."""
    n = _check_count(n)
    if not lo < hi:
        raise BadRange(f"need lo < hi, got [{lo!r}, {hi!r})")
    rng = np.random.default_rng(seed)
    t = lo + (hi - lo) * rng.random(n)
    t.sort()
    # lo + (hi - lo) * u can round up to hi for u close to 1
    np.minimum(t, np.nextafter(hi, lo), out=t)
    return make_series(t)


def gen_burst_composite(seed=0, n_burst=BURST_SIZE, n_periodic=PERIODIC_SIZE) -> EventSeries:
    """A dense random burst on ``[0, 1)`` followed by equidistant events on ``[1, 10]``.

    The periodic tail includes both endpoints, so its spacing is
    ``9 / (n_periodic - 1)``.
    """
    burst = gen_uniform(n_burst, 0.0, 1.0, seed=seed).events
    tail = np.linspace(1.0, 10.0, _check_count(n_periodic))
    return make_series(np.concatenate((burst, tail)))
