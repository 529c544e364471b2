"""Linear-time clustering of ordered event timestamps and service-quality measures."""
__version__ = "0.1.0"

from .core import (
    ClusteringResult,
    ClusterInterval,
    EventSeries,
    GapInterval,
    PointLabel,
    classify,
    cluster_events,
    compute_gaps,
    gap_intervals,
    iter_classify,
    make_series,
    mean_gap,
)
from .estimator import EventClusterer, QualityProfile
from .exceptions import EventClusterError
from .measures import (
    cluster_number_measure,
    coverage,
    delta_t_to_f,
    f_to_delta_t,
    gap_histogram,
    isolation_measure,
    sweep,
)

__all__ = [
    "ClusteringResult",
    "ClusterInterval",
    "EventClusterError",
    "EventClusterer",
    "EventSeries",
    "GapInterval",
    "PointLabel",
    "QualityProfile",
    "classify",
    "cluster_events",
    "cluster_number_measure",
    "compute_gaps",
    "coverage",
    "delta_t_to_f",
    "f_to_delta_t",
    "gap_histogram",
    "gap_intervals",
    "isolation_measure",
    "iter_classify",
    "make_series",
    "mean_gap",
    "sweep",
]
