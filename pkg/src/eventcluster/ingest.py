"""Reading timestamp files and writing clustering results.

Input formats
-------------
``plain``
    One decimal number per line.  Blank lines and lines starting with ``#``
    are skipped.
``csv:<column>``
    A CSV table.  A column *name* requires a header row.  An integer column
    *index* (0-based) means the file has no header.
``jsonl:<field>``
    One JSON object per line holding a numeric ``field`` (``t`` by default).

Line numbers in errors are 1-based and refer to the physical line of the
source.

Result document
---------------
:func:`write_result` emits a JSON object, one per call, followed by a
newline::

    {"format": "eventcluster.result/1", "delta_t": 10.0,
     "n_events": 12, "n_clusters": 3, "n_isolated": 1,
     "clusters": [[-20.0, -18.0], [1.0, 11.0], [200.0, 203.0]],
     "isolated": [100.0]}

Non-finite ``delta_t`` values are written as the JSON extensions
``Infinity`` / ``-Infinity``.
"""
from __future__ import annotations

import codecs
import csv
import enum
import io
import json
import math
import warnings
from dataclasses import dataclass

import numpy as np

from .core import ClusteringResult, EventSeries, make_series
from .exceptions import EventClusterError, NonFinite, OutOfOrder, ParseError

RESULT_FORMAT = "eventcluster.result/1"


class SortPolicy(str, enum.Enum):
    REJECT = "reject"
    SORT = "sort"


class UnsortedInputWarning(UserWarning):
    """Input had to be sorted, costing O(N log N)."""


class FormatKind(str, enum.Enum):
    PLAIN = "plain"
    CSV = "csv"
    JSONL = "jsonl"


@dataclass(frozen=True)
class InputFormat:
    kind: FormatKind = FormatKind.PLAIN
    key: str | int | None = None

    def __post_init__(self):
        if self.kind is FormatKind.PLAIN:
            return
        if self.key is None and self.kind is FormatKind.JSONL:
            object.__setattr__(self, "key", "t")
        if self.key is None or self.key == "":
            raise EventClusterError(f"{self.kind.value} format needs a non-empty column/field")

    @classmethod
    def parse(cls, text: str) -> "InputFormat":
        """Parse ``plain``, ``csv:<col>`` or ``jsonl[:<field>]``."""
        kind, _, key = text.partition(":")
        try:
            kind = FormatKind(kind.strip().lower())
        except ValueError:
            raise EventClusterError(f"unknown input format {text!r}") from None
        if kind is FormatKind.PLAIN:
            if key:
                raise EventClusterError("plain format takes no column")
            return cls(kind)
        if kind is FormatKind.CSV:
            if not key:
                raise EventClusterError("csv format needs a column: csv:<name|index>")
            return cls(kind, int(key) if key.isdigit() else key)
        return cls(kind, key or "t")


PLAIN = InputFormat()


def _to_float(text, line):
    try:
        value = float(text)
    except (TypeError, ValueError):
        raise ParseError(line, f"not a number: {text!r}") from None
    if not math.isfinite(value):
        raise NonFinite(line, value, unit="line")
    return value


def _iter_plain(lines):
    for lineno, raw in enumerate(lines, start=1):
        s = raw.strip()
        if not s or s.startswith("#"):
            continue
        yield lineno, _to_float(s, lineno)


def _iter_csv(lines, key):
    reader = csv.reader(lines)
    col = key
    if isinstance(key, str):
        try:
            header = next(reader)
        except StopIteration:
            raise ParseError(1, "missing header row") from None
        header = [h.strip() for h in header]
        if key not in header:
            raise ParseError(1, f"no column named {key!r} in header {header}")
        col = header.index(key)
    for row in reader:
        lineno = reader.line_num
        if not row or all(not c.strip() for c in row):
            continue
        if col >= len(row):
            raise ParseError(lineno, f"row has {len(row)} fields, need column {col}")
        yield lineno, _to_float(row[col].strip(), lineno)


def _iter_jsonl(lines, key):
    for lineno, raw in enumerate(lines, start=1):
        s = raw.strip()
        if not s:
            continue
        try:
            obj = json.loads(s)
        except json.JSONDecodeError as exc:
            raise ParseError(lineno, f"invalid JSON: {exc.msg}") from None
        if not isinstance(obj, dict) or key not in obj:
            raise ParseError(lineno, f"missing field {key!r}")
        value = obj[key]
        if isinstance(value, bool) or not isinstance(value, (int, float)):
            raise ParseError(lineno, f"field {key!r} is not a number: {value!r}")
        yield lineno, _to_float(value, lineno)


def _text_lines(source):
    if isinstance(source, (bytes, bytearray)):
        source = io.BytesIO(source)
    elif isinstance(source, str):
        source = io.StringIO(source)
    if isinstance(source, io.TextIOBase):
        return source
    return codecs.getreader("utf-8")(source, errors="strict")


def parse_events(source, fmt: InputFormat = PLAIN, sort_policy=SortPolicy.REJECT) -> EventSeries:
    """Read timestamps from ``source`` into an :class:`EventSeries`.

    ``source`` may be bytes, a str, or a binary/text file object.  Under
    ``SortPolicy.REJECT`` the first decreasing timestamp raises
    :class:`OutOfOrder` whose ``index`` is the offending source line; under
    ``SortPolicy.SORT`` the values are sorted and an
    :class:`UnsortedInputWarning` is issued.
    """
    if isinstance(fmt, str):
        fmt = InputFormat.parse(fmt)
    sort_policy = SortPolicy(sort_policy)
    lines = _text_lines(source)
    try:
        if fmt.kind is FormatKind.PLAIN:
            rows = _iter_plain(lines)
        elif fmt.kind is FormatKind.CSV:
            rows = _iter_csv(lines, fmt.key)
        else:
            rows = _iter_jsonl(lines, fmt.key)

        values = []
        unsorted = False
        prev = -math.inf
        for lineno, value in rows:
            if value < prev:
                if sort_policy is SortPolicy.REJECT:
                    raise OutOfOrder(lineno, value, prev, unit="line")
                unsorted = True
            prev = value
            values.append(value)
    except UnicodeDecodeError as exc:
        raise ParseError(0, f"input is not valid UTF-8: {exc.reason}") from None

    arr = np.array(values, dtype=np.float64)
    if unsorted:
        warnings.warn(
            f"input of {arr.size} timestamps was not sorted; sorted it (O(N log N))",
            UnsortedInputWarning,
            stacklevel=2,
        )
        arr.sort(kind="stable")
    return make_series(arr)


def format_timestamp(value: float) -> str:
    """Shortest decimal that parses back to exactly ``value``; ``10.0`` becomes ``10``."""
    text = repr(float(value))
    return text[:-2] if text.endswith(".0") else text


def write_series(series, sink):
    """Write ``series`` in the plain one-per-line format."""
    series = make_series(series)
    text = "".join(format_timestamp(v) + "\n" for v in series.events.tolist())
    _write(sink, text)


def result_document(result: ClusteringResult) -> dict:
    return {
        "format": RESULT_FORMAT,
        "delta_t": result.delta_t,
        "n_events": int(result.labels.shape[0]),
        "n_clusters": result.n_clusters,
        "n_isolated": int(result.isolated.shape[0]),
        "clusters": result.bounds.tolist(),
        "isolated": result.isolated.tolist(),
    }


def write_result(result: ClusteringResult, sink):
    _write(sink, json.dumps(result_document(result)) + "\n")


def read_result(source) -> dict:
    doc = json.loads(source.read() if hasattr(source, "read") else source)
    if doc.get("format") != RESULT_FORMAT:
        raise EventClusterError(f"unsupported result format {doc.get('format')!r}")
    return doc


def _write(sink, text):
    if isinstance(sink, (io.RawIOBase, io.BufferedIOBase)) or "b" in getattr(sink, "mode", ""):
        sink.write(text.encode("utf-8"))
    else:
        sink.write(text)
