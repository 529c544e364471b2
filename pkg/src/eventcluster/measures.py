"""Service-quality measures derived from a clustering.

Coverage, cluster-number and isolation measures are all fractions in
``[0, 1]``.  Sweeps are parameterised by the normalised log-frequency

    f = -log10(delta_t * N / span)

so ``f = 0`` sits at the spacing an equidistant series of the same size
and span would have, and each unit of ``f`` is one decade of frequency.
"""
from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from .core import ClusteringResult, EventSeries, cluster_events, compute_gaps, make_series
from .exceptions import BadBins, BadGrid, DegenerateSpan, NonPositiveDeltaT, TooShort


@dataclass(frozen=True)
class MeasurePoint:
    f: float
    delta_t: float
    c_o: float
    c_n: float
    c_s: float

    def as_dict(self):
        return {"f": self.f, "delta_t": self.delta_t, "c_o": self.c_o,
                "c_n": self.c_n, "c_s": self.c_s}


@dataclass(frozen=True)
class SweepResult:
    points: list[MeasurePoint]
    n: int
    span: float
    f_min: float
    f_max: float
    steps: int

    def column(self, name) -> np.ndarray:
        return np.array([getattr(p, name) for p in self.points])

    def as_dict(self):
        return {"points": [p.as_dict() for p in self.points]}


@dataclass(frozen=True)
class GapHistogram:
    edges: np.ndarray
    counts: np.ndarray

    @property
    def total(self) -> int:
        return int(self.counts.sum())


def _span(series: EventSeries) -> float:
    if series.n < 2:
        raise TooShort(series.n)
    span = series.span
    if span <= 0:
        raise DegenerateSpan()
    return span


def _check_result(result: ClusteringResult, series: EventSeries):
    if result.labels.shape[0] != series.n:
        raise ValueError("result was not produced from this series")


def coverage(result: ClusteringResult, series) -> float:
    """Fraction of the series span covered by cluster intervals."""
    series = make_series(series)
    _check_result(result, series)
    span = _span(series)
    return float(np.sum(result.bounds[:, 1] - result.bounds[:, 0])) / span


def cluster_number_measure(result: ClusteringResult, series) -> float:
    """``2 * (K - [K == 1]) / N``; zero when there are no clusters or just one."""
    series = make_series(series)
    _check_result(result, series)
    if series.n < 1:
        raise TooShort(series.n, required=1)
    k = result.n_clusters
    return 2.0 * (k - (k == 1)) / series.n


def isolation_measure(result: ClusteringResult, series) -> float:
    series = make_series(series)
    _check_result(result, series)
    if series.n < 1:
        raise TooShort(series.n, required=1)
    return result.isolated.shape[0] / series.n


def f_to_delta_t(f, series) -> float:
    series = make_series(series)
    return _span(series) / series.n * 10.0 ** (-f)


def delta_t_to_f(delta_t, series) -> float:
    series = make_series(series)
    span = _span(series)
    if not delta_t > 0:
        raise NonPositiveDeltaT(f"delta_t must be positive to take its log, got {delta_t!r}")
    return -math.log10(delta_t * series.n / span)


def measure_point(series, delta_t, f=None) -> MeasurePoint:
    """All three measures for one ``delta_t``."""
    series = make_series(series)
    result = cluster_events(series, delta_t)
    if f is None:
        f = delta_t_to_f(delta_t, series) if delta_t > 0 else math.nan
    return MeasurePoint(
        f=float(f),
        delta_t=float(delta_t),
        c_o=coverage(result, series),
        c_n=cluster_number_measure(result, series),
        c_s=isolation_measure(result, series),
    )


def sweep_grid(f_min, f_max, steps) -> np.ndarray:
    if not f_min < f_max:
        raise BadGrid(f"need f_min < f_max, got {f_min!r}, {f_max!r}")
    if int(steps) != steps or steps < 2:
        raise BadGrid(f"steps must be an integer >= 2, got {steps!r}")
    return np.linspace(f_min, f_max, int(steps))


def sweep(series, f_min, f_max, steps, *, n_jobs=None) -> SweepResult:
    """Evaluate the measures on an evenly spaced grid of ``f`` values.

    Each grid point clusters the whole series once, so the cost is
    ``O(steps * N)``.  ``n_jobs > 1`` evaluates grid points in a thread pool;
    the output order is the grid order either way.
    """
    series = make_series(series)
    span = _span(series)
    grid = sweep_grid(f_min, f_max, steps)

    def evaluate(f):
        return measure_point(series, f_to_delta_t(f, series), f=f)

    fs = grid.tolist()
    if n_jobs is not None and n_jobs > 1:
        with ThreadPoolExecutor(max_workers=n_jobs) as pool:
            points = list(pool.map(evaluate, fs))
    else:
        points = [evaluate(f) for f in fs]
    return SweepResult(points, series.n, span, float(f_min), float(f_max), int(steps))


def gap_histogram(series, bin_edges) -> GapHistogram:
    """Count gaps per half-open bin ``[edges[j], edges[j+1])``.

    The edges must start at or below 0 and end above the largest gap, so
    every gap falls into exactly one bin.
    """
    series = make_series(series)
    gaps = compute_gaps(series)
    edges = np.asarray(bin_edges, dtype=np.float64)
    if edges.ndim != 1 or edges.size < 2:
        raise BadBins("need at least two bin edges")
    if not np.all(np.isfinite(edges)) or np.any(np.diff(edges) <= 0):
        raise BadBins("bin edges must be finite and strictly increasing")
    if edges[0] > 0 or edges[-1] <= gaps.max():
        raise BadBins(
            f"edges [{edges[0]}, {edges[-1]}) do not cover gaps [0, {gaps.max()}]"
        )
    idx = np.searchsorted(edges, gaps, side="right") - 1
    counts = np.bincount(idx, minlength=edges.size - 1).astype(np.int64)
    return GapHistogram(edges, counts)
