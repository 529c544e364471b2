"""HTTP monitoring service for event streams.

Each stream is an append-only series of timestamps persisted as a plain
one-per-line log under the data directory.  Clustering and measures are
computed on demand from an immutable snapshot of the stream.

Endpoints::

    POST /streams/{id}/events        {"events": [...]}  -> {"accepted": n}
    GET  /streams/{id}/clusters?delta_t=<r>
    GET  /streams/{id}/measures?f_min=&f_max=&steps=
    GET  /streams/{id}/delta_t

Errors are returned as ``{"error": <code>, "detail": <message>}`` with a
4xx status.

Log format: each acknowledged batch is written as its timestamps, one per
line, followed by a ``#commit <count>`` line, then fsynced.  Replay keeps
only committed batches, so a crash mid-write never exposes part of a
batch.  Comment lines are ignored by the plain parser, so the log is also a
valid plain-format input file.
"""
from __future__ import annotations

import logging
import math
import os
import re
import threading
from pathlib import Path

import numpy as np
from fastapi import FastAPI, Request
from fastapi.exceptions import RequestValidationError
from fastapi.responses import JSONResponse
from pydantic import BaseModel

from .core import EventSeries, cluster_events, gap_intervals
from .exceptions import (
    EmptyStream,
    EventClusterError,
    OutOfOrderAppend,
    TooShort,
    UnknownStream,
)
from .ingest import format_timestamp
from .measures import sweep

log = logging.getLogger(__name__)

DEFAULT_WINDOW = 128
DEFAULT_GRID = (-2.0, 3.0, 51)
COMMIT_PREFIX = "#commit"
_STREAM_ID = re.compile(r"^[A-Za-z0-9_][A-Za-z0-9_.-]{0,127}$")


class Stream:
    """One append-only stream; appends are serialised by a per-stream lock."""

    def __init__(self, stream_id: str, path: Path):
        self.id = stream_id
        self.path = path
        self._lock = threading.Lock()
        self._buf = np.empty(16, dtype=np.float64)
        self._n = 0
        if path.exists():
            self._replay()

    def _replay(self):
        committed, pending = [], []
        with open(self.path, "r", encoding="utf-8") as fh:
            raw = fh.read()
        good_bytes = 0
        offset = 0
        for line in raw.splitlines(keepends=True):
            offset += len(line.encode("utf-8"))
            if not line.endswith("\n"):
                break  # torn write
            s = line.strip()
            if s.startswith(COMMIT_PREFIX):
                committed.extend(pending)
                pending = []
                good_bytes = offset
            elif s and not s.startswith("#"):
                pending.append(float(s))
        if pending or good_bytes != len(raw.encode("utf-8")):
            log.warning("stream %s: dropping uncommitted tail of %s", self.id, self.path)
            with open(self.path, "r+b") as fh:
                fh.truncate(good_bytes)
                fh.flush()
                os.fsync(fh.fileno())
        self._extend(np.asarray(committed, dtype=np.float64))

    def _extend(self, values: np.ndarray):
        need = self._n + values.size
        if need > self._buf.size:
            # Reallocate instead of resizing in place: snapshots handed out
            # earlier keep pointing at the old buffer, whose prefix never changes.
            new = np.empty(max(need, 2 * self._buf.size), dtype=np.float64)
            new[: self._n] = self._buf[: self._n]
            self._buf = new
        self._buf[self._n : need] = values
        self._n = need

    def snapshot(self) -> EventSeries:
        with self._lock:
            view = self._buf[: self._n]
        view = view.view()
        view.flags.writeable = False
        return EventSeries(view)

    def append(self, batch) -> int:
        values = np.asarray(batch, dtype=np.float64)
        if values.ndim != 1:
            raise EventClusterError("events must be a flat list of numbers")
        if values.size == 0:
            return 0
        if not np.all(np.isfinite(values)):
            raise EventClusterError("events must be finite numbers")
        if np.any(values[1:] < values[:-1]):
            i = int(np.argmax(values[1:] < values[:-1])) + 1
            raise OutOfOrderAppend(f"batch is not ordered at position {i}")
        with self._lock:
            if self._n and values[0] < self._buf[self._n - 1]:
                raise OutOfOrderAppend(
                    f"batch starts at {values[0]!r}, before last timestamp "
                    f"{self._buf[self._n - 1]!r}"
                )
            text = "".join(format_timestamp(v) + "\n" for v in values.tolist())
            text += f"{COMMIT_PREFIX} {values.size}\n"
            with open(self.path, "a", encoding="utf-8") as fh:
                fh.write(text)
                fh.flush()
                os.fsync(fh.fileno())
            self._extend(values)
        return int(values.size)


class StreamStore:
    """All streams under one data directory."""

    def __init__(self, data_dir, window=DEFAULT_WINDOW, auto_create=True):
        if int(window) != window or window < 1:
            raise ValueError("detector window must be a positive integer")
        self.data_dir = Path(data_dir)
        self.data_dir.mkdir(parents=True, exist_ok=True)
        self.window = int(window)
        self.auto_create = auto_create
        self._streams: dict[str, Stream] = {}
        self._lock = threading.Lock()

    def _path(self, stream_id):
        return self.data_dir / f"{stream_id}.log"

    def get(self, stream_id, create=False) -> Stream:
        if not _STREAM_ID.match(stream_id):
            raise UnknownStream(f"invalid stream id {stream_id!r}")
        with self._lock:
            stream = self._streams.get(stream_id)
            if stream is None:
                path = self._path(stream_id)
                if not path.exists() and not (create and self.auto_create):
                    raise UnknownStream(f"no stream {stream_id!r}")
                stream = self._streams[stream_id] = Stream(stream_id, path)
            return stream

    def append_events(self, stream_id, batch) -> int:
        return self.get(stream_id, create=True).append(batch)

    def estimate_delta_t(self, stream_id) -> float:
        return estimate_delta_t(self.get(stream_id).snapshot(), self.window)

    def get_clusters(self, stream_id, delta_t=None) -> dict:
        series = self.get(stream_id).snapshot()
        if series.n == 0:
            raise EmptyStream(f"stream {stream_id!r} has no events")
        if delta_t is None:
            # a lone event is isolated at any interval, nothing to estimate
            delta_t = estimate_delta_t(series, self.window) if series.n >= 2 else None
        result = cluster_events(series, 0.0 if delta_t is None else delta_t)
        return {
            "delta_t": delta_t,
            "clusters": result.bounds.tolist(),
            "isolated": result.isolated.tolist(),
            "gaps": [[g.lo, g.hi] for g in gap_intervals(result, series)],
        }

    def get_measures(self, stream_id, f_min=None, f_max=None, steps=None) -> dict:
        series = self.get(stream_id).snapshot()
        d_min, d_max, d_steps = DEFAULT_GRID
        result = sweep(
            series,
            d_min if f_min is None else f_min,
            d_max if f_max is None else f_max,
            d_steps if steps is None else steps,
        )
        return result.as_dict()


def estimate_delta_t(series: EventSeries, window=DEFAULT_WINDOW) -> float:
    """Mean of the most recent ``min(window, N - 1)`` gaps."""
    n = series.n
    if n < 2:
        raise TooShort(n)
    k = min(int(window), n - 1)
    t = series.events
    return float(t[-1] - t[-1 - k]) / k


_STATUS = {
    UnknownStream: 404,
    EmptyStream: 409,
    OutOfOrderAppend: 409,
}


def _error(code, detail, status):
    return JSONResponse({"error": code, "detail": detail}, status_code=status)


class EventBatch(BaseModel):
    events: list[float]


def _require_finite(name, value):
    if value is not None and not math.isfinite(value):
        raise EventClusterError(f"{name} must be finite")


def create_app(data_dir=None, window=None, auto_create=True) -> FastAPI:
    """Build the service app.

    ``data_dir`` and ``window`` default to the ``EVENTCLUSTER_DATA_DIR`` and
    ``EVENTCLUSTER_WINDOW`` environment variables.
    """
    if data_dir is None:
        data_dir = os.environ.get("EVENTCLUSTER_DATA_DIR", "./eventcluster-data")
    if window is None:
        window = int(os.environ.get("EVENTCLUSTER_WINDOW", DEFAULT_WINDOW))
    store = StreamStore(data_dir, window=window, auto_create=auto_create)
    app = FastAPI(title="eventcluster")
    app.state.store = store

    @app.exception_handler(EventClusterError)
    async def _domain_error(request: Request, exc: EventClusterError):
        status = next((s for cls, s in _STATUS.items() if isinstance(exc, cls)), 422)
        return _error(exc.code, str(exc), status)

    @app.exception_handler(RequestValidationError)
    async def _bad_request(request: Request, exc: RequestValidationError):
        detail = "; ".join(
            f"{'.'.join(str(p) for p in e['loc'])}: {e['msg']}" for e in exc.errors()
        )
        return _error("BadRequest", detail, 400)

    @app.post("/streams/{stream_id}/events")
    def append(stream_id: str, batch: EventBatch):
        return {"accepted": store.append_events(stream_id, batch.events)}

    @app.get("/streams/{stream_id}/clusters")
    def clusters(stream_id: str, delta_t: float | None = None):
        _require_finite("delta_t", delta_t)
        return store.get_clusters(stream_id, delta_t)

    @app.get("/streams/{stream_id}/measures")
    def measures(stream_id: str, f_min: float | None = None, f_max: float | None = None,
                 steps: int | None = None):
        _require_finite("f_min", f_min)
        _require_finite("f_max", f_max)
        return store.get_measures(stream_id, f_min, f_max, steps)

    @app.get("/streams/{stream_id}/delta_t")
    def delta_t(stream_id: str):
        return {"delta_t": store.estimate_delta_t(stream_id), "window": store.window}

    return app


def serve(host="127.0.0.1", port=8000, data_dir=None, window=None):
    import uvicorn

    uvicorn.run(create_app(data_dir, window), host=host, port=port)
