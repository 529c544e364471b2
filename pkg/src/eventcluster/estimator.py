"""scikit-learn compatible front ends.

:class:`EventClusterer` follows the ``sklearn.cluster`` conventions
(``fit`` / ``fit_predict``, ``labels_`` with ``-1`` for noise) so it can be
dropped into pipelines and grid searches next to ``DBSCAN``.
:class:`QualityProfile` fits the measure sweep of a series.
"""
import numbers

import numpy as np
from sklearn.base import BaseEstimator, ClusterMixin
from sklearn.exceptions import NotFittedError

from .core import PointLabel, cluster_events, gap_intervals, make_series, mean_gap
from .exceptions import EventClusterError
from .measures import sweep
from .validation import as_timestamp_array


class EventClusterer(ClusterMixin, BaseEstimator):
    """Cluster ordered timestamps whose consecutive gaps are at most ``delta_t``.

    Parameters
    ----------
    delta_t : float or "mean", default="mean"
        Expected inter-event interval.  ``"mean"`` uses the mean gap of the
        series being fitted.

    Attributes
    ----------
    labels_ : ndarray of shape (n_samples,)
        Cluster index of each event; isolated events are labelled ``-1``.
    point_labels_ : ndarray of int8
        :class:`~eventcluster.core.PointLabel` code of each event.
    cluster_bounds_ : ndarray of shape (n_clusters, 2)
    isolated_ : ndarray
    delta_t_ : float
        The interval actually used.
    result_ : ClusteringResult

    Examples
    --------
    >>> t = [-20, -18, 1, 2, 2.9, 10, 11, 100, 200, 202, 202, 203]
    >>> EventClusterer(delta_t=10).fit_predict(t).tolist()
    [0, 0, 1, 1, 1, 1, 1, -1, 2, 2, 2, 2]
    """

    def __init__(self, delta_t="mean"):
        self.delta_t = delta_t

    def _resolve_delta_t(self, series):
        if isinstance(self.delta_t, str):
            if self.delta_t != "mean":
                raise EventClusterError(f"delta_t must be a number or 'mean', got {self.delta_t!r}")
            return mean_gap(series)
        if not isinstance(self.delta_t, numbers.Real):
            raise EventClusterError(f"delta_t must be a number or 'mean', got {self.delta_t!r}")
        return float(self.delta_t)

    def fit(self, X, y=None):
        series = make_series(as_timestamp_array(X))
        self.delta_t_ = self._resolve_delta_t(series)
        result = cluster_events(series, self.delta_t_)
        self.result_ = result
        self.series_ = series
        self.point_labels_ = result.labels
        self.cluster_bounds_ = result.bounds
        self.isolated_ = result.isolated
        self.n_clusters_ = result.n_clusters
        self.labels_ = _cluster_index(result.labels)
        self.n_features_in_ = 1
        return self

    def gap_intervals(self):
        self._check_fitted()
        return gap_intervals(self.result_, self.series_)

    def _check_fitted(self):
        if not hasattr(self, "result_"):
            raise NotFittedError(f"{type(self).__name__} is not fitted yet")


def _cluster_index(codes):
    """Map point-label codes to ``0..K-1`` cluster ids, ``-1`` for isolated events."""
    opens = codes == PointLabel.OPENING_BOUND
    ids = np.cumsum(opens, dtype=np.int64) - 1
    ids[codes == PointLabel.ISOLATED] = -1
    return ids


class QualityProfile(BaseEstimator):
    """Coverage, cluster-number and isolation measures over a grid of ``f``.

    Parameters
    ----------
    f_min, f_max : float
        Range of the normalised log-frequency grid.
    steps : int
        Number of grid points, both ends included.
    n_jobs : int or None
        Threads used to evaluate grid points.
    """

    def __init__(self, f_min=-2.0, f_max=3.0, steps=51, n_jobs=None):
        self.f_min = f_min
        self.f_max = f_max
        self.steps = steps
        self.n_jobs = n_jobs

    def fit(self, X, y=None):
        series = make_series(as_timestamp_array(X))
        self.sweep_ = sweep(series, self.f_min, self.f_max, self.steps, n_jobs=self.n_jobs)
        self.f_ = self.sweep_.column("f")
        self.delta_t_ = self.sweep_.column("delta_t")
        self.coverage_ = self.sweep_.column("c_o")
        self.cluster_number_ = self.sweep_.column("c_n")
        self.isolation_ = self.sweep_.column("c_s")
        self.n_features_in_ = 1
        return self

    def transform(self, X=None):
        """Return the measures as an array with columns ``f, delta_t, c_o, c_n, c_s``."""
        if not hasattr(self, "sweep_"):
            raise NotFittedError(f"{type(self).__name__} is not fitted yet")
        return np.column_stack(
            (self.f_, self.delta_t_, self.coverage_, self.cluster_number_, self.isolation_)
        )

    def fit_transform(self, X, y=None):
        return self.fit(X).transform()
