"""Input validation helpers.

These mirror the ``check_array`` family in scikit-learn but encode the one
precondition the clustering relies on: timestamps are finite and
non-decreasing.
"""
import math
import numbers

import numpy as np

from .exceptions import EventClusterError, NonFinite, OutOfOrder


def as_timestamp_array(raw):
    """Coerce ``raw`` to a contiguous 1-D float64 array.

    Accepts any 1-D array-like, or a 2-D array with a single column (the
    ``(n_samples, 1)`` layout scikit-learn estimators receive).
    """
    arr = np.asarray(raw, dtype=np.float64)
    if arr.ndim == 2 and arr.shape[1] == 1:
        arr = arr[:, 0]
    elif arr.ndim == 0:
        raise EventClusterError("expected a sequence of timestamps, got a scalar")
    elif arr.ndim != 1:
        raise EventClusterError(
            f"expected 1-D timestamps or shape (n, 1), got shape {arr.shape}"
        )
    return np.ascontiguousarray(arr)


def check_finite(arr):
    finite = np.isfinite(arr)
    if not finite.all():
        i = int(np.argmin(finite))
        raise NonFinite(i, float(arr[i]))


def check_non_decreasing(arr):
    if arr.size < 2:
        return
    bad = arr[1:] < arr[:-1]
    if bad.any():
        i = int(np.argmax(bad)) + 1
        raise OutOfOrder(i, float(arr[i]), float(arr[i - 1]))


def check_timestamps(raw):
    """Validate ``raw`` and return it as a read-only float64 array.

    Raises
    ------
    NonFinite
        If any element is NaN or infinite.
    OutOfOrder
        At the first index ``i`` with ``t[i] < t[i-1]``.
    """
    arr = as_timestamp_array(raw)
    check_finite(arr)
    check_non_decreasing(arr)
    if arr.flags.writeable:
        arr = arr.copy() if np.shares_memory(arr, np.asarray(raw)) else arr
        arr.flags.writeable = False
    return arr


def check_delta_t(delta_t):
    """Return ``delta_t`` as a float; any real, including ``±inf``, is legal."""
    if isinstance(delta_t, bool) or not isinstance(delta_t, numbers.Real):
        raise EventClusterError(f"delta_t must be a real number, got {delta_t!r}")
    value = float(delta_t)
    if math.isnan(value):
        raise EventClusterError("delta_t must not be NaN")
    return value
