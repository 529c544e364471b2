"""Linear-time clustering of ordered timestamps against an expected interval.

Every timestamp ``t[i]`` gets one of four labels from the two gaps that
surround it.  With ``b`` the gap-exceedance flags padded by virtual
timestamps at ``-inf`` and ``+inf``::

    b[0] = 1
    b[i] = int(t[i] - t[i-1] > delta_t)    for i = 1 .. N-1
    b[N] = 1

the label of ``t[i]`` is decided by the pair ``(b[i], b[i+1])``: a 1 -> 0
switch opens a cluster, 0 -> 1 closes one, 1 -> 1 is an isolated event and
0 -> 0 lies inside a cluster.  The label codes below are ``2*b[i] + b[i+1]``
so the classification needs no branching.
"""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field
from typing import Iterable, Iterator, NamedTuple

import numpy as np

from .exceptions import EventClusterError, NonFinite, OutOfOrder, TooShort
from .validation import check_delta_t, check_timestamps

__all__ = [
    "PointLabel",
    "EventSeries",
    "ClusterInterval",
    "GapInterval",
    "ClusteringResult",
    "make_series",
    "compute_gaps",
    "cluster_events",
    "classify",
    "iter_classify",
    "gap_intervals",
    "mean_gap",
]

# Bounded working set for the scan (128 KiB of float64); keeps auxiliary
# memory O(1) in N.
BLOCK_SIZE = 1 << 14


class PointLabel(enum.IntEnum):
    CLUSTERED_INTERIOR = 0
    CLOSING_BOUND = 1
    OPENING_BOUND = 2
    ISOLATED = 3

    @property
    def symbol(self):
        return _SYMBOLS[self]


_SYMBOLS = {
    PointLabel.CLUSTERED_INTERIOR: "x̄",
    PointLabel.CLOSING_BOUND: "τ⁺",
    PointLabel.OPENING_BOUND: "τ⁻",
    PointLabel.ISOLATED: "x",
}


@dataclass(frozen=True, eq=False)
class EventSeries:
    """An immutable, validated, non-decreasing sequence of timestamps.

    Build instances with :func:`make_series`; the constructor assumes its
    input is already validated.
    """

    events: np.ndarray

    def __len__(self):
        return self.events.shape[0]

    def __iter__(self):
        return iter(self.events.tolist())

    def __getitem__(self, i):
        return self.events[i]

    def __eq__(self, other):
        if not isinstance(other, EventSeries):
            return NotImplemented
        return np.array_equal(self.events, other.events)

    def __hash__(self):
        return hash(self.events.tobytes())

    def __repr__(self):
        return f"EventSeries(N={self.n}, span={self.span})"

    @property
    def n(self) -> int:
        return self.events.shape[0]

    @property
    def span(self) -> float | None:
        """``t[N-1] - t[0]``, or ``None`` when the series has fewer than 2 events."""
        if self.n < 2:
            return None
        return float(self.events[-1] - self.events[0])

    def tolist(self) -> list[float]:
        return self.events.tolist()


class ClusterInterval(NamedTuple):
    lo: float
    hi: float

    @property
    def length(self) -> float:
        return self.hi - self.lo


class GapInterval(NamedTuple):
    """A stretch of time not covered by any cluster.

    Interior gaps are open on both sides.  A leading gap starting at the
    first timestamp, or a trailing one ending at the last, is closed on that
    side so that the isolated events there are contained in it.
    """

    lo: float
    hi: float
    closed_lo: bool = False
    closed_hi: bool = False

    def __contains__(self, value):
        above = value >= self.lo if self.closed_lo else value > self.lo
        below = value <= self.hi if self.closed_hi else value < self.hi
        return above and below


@dataclass(frozen=True, eq=False)
class ClusteringResult:
    """Output of :func:`cluster_events`.

    Attributes
    ----------
    bounds : ndarray of shape (K, 2)
        ``[lo, hi]`` of each cluster in ascending order.
    isolated : ndarray of shape (n_isolated,)
        Isolated timestamps in ascending order.
    labels : ndarray of int8, shape (N,)
        :class:`PointLabel` codes aligned with the series.
    delta_t : float
        The expected interval the series was clustered against.
    """

    bounds: np.ndarray
    isolated: np.ndarray
    labels: np.ndarray
    delta_t: float
    _clusters: list = field(default=None, init=False, repr=False)

    @property
    def n_clusters(self) -> int:
        return self.bounds.shape[0]

    @property
    def clusters(self) -> list[ClusterInterval]:
        # built lazily: K can be ~N/4 for noisy series and most callers
        # only need the arrays
        if self._clusters is None:
            object.__setattr__(
                self,
                "_clusters",
                [ClusterInterval(lo, hi) for lo, hi in self.bounds.tolist()],
            )
        return self._clusters

    @property
    def point_labels(self) -> list[PointLabel]:
        return [PointLabel(c) for c in self.labels.tolist()]

    def label_counts(self) -> dict[PointLabel, int]:
        counts = np.bincount(self.labels, minlength=4)
        return {label: int(counts[label]) for label in PointLabel}

    def same_partition(self, other: "ClusteringResult") -> bool:
        """True when both results carry identical clusters, isolated events and labels."""
        return (
            np.array_equal(self.bounds, other.bounds)
            and np.array_equal(self.isolated, other.isolated)
            and np.array_equal(self.labels, other.labels)
        )

    def __eq__(self, other):
        if not isinstance(other, ClusteringResult):
            return NotImplemented
        return self.same_partition(other) and (
            self.delta_t == other.delta_t
        )

    __hash__ = None

    def __repr__(self):
        return (
            f"ClusteringResult(delta_t={self.delta_t}, clusters={self.n_clusters}, "
            f"isolated={self.isolated.shape[0]}, N={self.labels.shape[0]})"
        )


def make_series(raw) -> EventSeries:
    """Validate ``raw`` and wrap it as an :class:`EventSeries`.

    >>> make_series([1, 2, 3]).span
    2.0
    """
    if isinstance(raw, EventSeries):
        return raw
    return EventSeries(check_timestamps(raw))


def _as_series(series) -> EventSeries:
    return series if isinstance(series, EventSeries) else make_series(series)


def compute_gaps(series) -> np.ndarray:
    series = _as_series(series)
    if series.n < 2:
        raise TooShort(series.n)
    return np.diff(series.events)


def mean_gap(series) -> float:
    """Arithmetic mean of the ``N - 1`` consecutive gaps, i.e. ``span / (N - 1)``."""
    series = _as_series(series)
    if series.n < 2:
        raise TooShort(series.n)
    return series.span / (series.n - 1)


def _scan_blocks(t: np.ndarray, delta_t: float, block_size: int):
    """Yield ``(start, codes)`` for consecutive blocks of ``t`` in one pass.

    Only the flag of the last gap of a block is carried into the next one.
    """
    n = t.shape[0]
    b_prev = True  # sentinel t[-1] = -inf
    for start in range(0, n, block_size):
        stop = min(start + block_size, n)
        # b[start .. stop] inclusive
        b = np.empty(stop - start + 1, dtype=np.bool_)
        b[0] = b_prev
        if stop < n:
            np.greater(t[start + 1 : stop + 1] - t[start:stop], delta_t, out=b[1:])
        else:
            np.greater(t[start + 1 : stop] - t[start : stop - 1], delta_t, out=b[1:-1])
            b[-1] = True  # sentinel t[N] = +inf
        codes = b[:-1].view(np.int8) * np.int8(2)
        codes += b[1:].view(np.int8)
        b_prev = bool(b[-1])
        yield start, codes


def cluster_events(series, delta_t, *, block_size: int = BLOCK_SIZE) -> ClusteringResult:
    """Cluster ordered timestamps so consecutive members are at most ``delta_t`` apart.

    Parameters
    ----------
    series : EventSeries or array-like
        Non-decreasing finite timestamps.
    delta_t : float
        Expected inter-event interval.  A gap equal to ``delta_t`` keeps both
        events in one cluster.  Negative values are allowed and isolate
        every event.

    Returns
    -------
    ClusteringResult
    """
    series = _as_series(series)
    delta_t = check_delta_t(delta_t)
    if block_size < 1:
        raise EventClusterError("block_size must be positive")
    t = series.events
    n = t.shape[0]

    labels = np.empty(n, dtype=np.int8)
    opens, closes, isolated = [], [], []
    for start, codes in _scan_blocks(t, delta_t, block_size):
        labels[start : start + codes.shape[0]] = codes
        chunk = t[start : start + codes.shape[0]]
        opens.append(chunk[codes == PointLabel.OPENING_BOUND])
        closes.append(chunk[codes == PointLabel.CLOSING_BOUND])
        isolated.append(chunk[codes == PointLabel.ISOLATED])

    if n:
        lo = np.concatenate(opens)
        hi = np.concatenate(closes)
        isolated = np.concatenate(isolated)
    else:
        lo = hi = isolated = np.empty(0, dtype=np.float64)
    bounds = np.column_stack((lo, hi)) if lo.size else np.empty((0, 2), dtype=np.float64)
    for arr in (bounds, isolated, labels):
        arr.flags.writeable = False
    return ClusteringResult(bounds, isolated, labels, delta_t)


def classify(series, delta_t) -> list[PointLabel]:
    """Per-timestamp labels, aligned with ``series``."""
    return cluster_events(series, delta_t).point_labels


def iter_classify(timestamps: Iterable[float], delta_t) -> Iterator[PointLabel]:
    """Classify a stream of ordered timestamps lazily, one label per event.

    Holds only the previous timestamp and gap flag, so the input may be an
    unbounded iterator.  A label is emitted once the following timestamp
    (or the end of the stream) is seen.  Ordering is checked as the stream
    is consumed.
    """
    delta_t = check_delta_t(delta_t)
    it = iter(timestamps)
    try:
        prev = float(next(it))
    except StopIteration:
        return
    if not math.isfinite(prev):
        raise NonFinite(0, prev)
    b_before = 1
    for i, value in enumerate(it, start=1):
        value = float(value)
        if not math.isfinite(value):
            raise NonFinite(i, value)
        if value < prev:
            raise OutOfOrder(i, value, prev)
        b_after = int(value - prev > delta_t)
        yield PointLabel(2 * b_before + b_after)
        prev, b_before = value, b_after
    yield PointLabel(2 * b_before + 1)


def gap_intervals(result: ClusteringResult, series) -> list[GapInterval]:
    """Intervals of ``[t_1, t_N]`` not covered by any cluster.

    Contains the open interval between each pair of consecutive clusters,
    plus a leading interval ``[t_1, lo_1)`` when isolated events precede the
    first cluster and a trailing ``(hi_K, t_N]`` when isolated events follow
    the last.  With no clusters at all, the isolated events are covered by
    the single closed interval ``[t_1, t_N]``.  Every isolated event lies in
    exactly one returned interval.
    """
    series = _as_series(series)
    if result.labels.shape[0] != series.n:
        raise EventClusterError("result was not produced from this series")
    if series.n == 0:
        return []
    first, last = float(series.events[0]), float(series.events[-1])
    bounds = result.bounds.tolist()
    if not bounds:
        return [GapInterval(first, last, True, True)]

    gaps = []
    if first < bounds[0][0]:
        gaps.append(GapInterval(first, bounds[0][0], True, False))
    for (_, hi), (lo, _) in zip(bounds[:-1], bounds[1:]):
        gaps.append(GapInterval(hi, lo))
    if last > bounds[-1][1]:
        gaps.append(GapInterval(bounds[-1][1], last, False, True))
    return gaps
