"""Exception hierarchy shared by every layer of the package."""


class EventClusterError(ValueError):
    """Base class for all data errors raised by :mod:`eventcluster`."""

    code = "EventClusterError"


class NonFinite(EventClusterError):
    code = "NonFinite"

    def __init__(self, index, value=None, unit="position"):
        self.index = index
        self.value = value
        super().__init__(f"non-finite timestamp {value!r} at {unit} {index}")


class OutOfOrder(EventClusterError):
    """Raised at the first position ``i`` with ``t[i] < t[i-1]``."""

    code = "OutOfOrder"

    def __init__(self, index, value=None, previous=None, unit="position"):
        self.index = index
        self.value = value
        self.previous = previous
        super().__init__(
            f"timestamps out of order at {unit} {index}: {value!r} < {previous!r}"
        )


class TooShort(EventClusterError):
    code = "TooShort"

    def __init__(self, n, required=2):
        self.n = n
        self.required = required
        super().__init__(f"need at least {required} events, got {n}")


class DegenerateSpan(EventClusterError):
    code = "DegenerateSpan"

    def __init__(self, msg="series span is zero; measures are undefined"):
        super().__init__(msg)


class NonPositiveDeltaT(EventClusterError):
    code = "NonPositiveDeltaT"


class NonPositiveEps(EventClusterError):
    code = "NonPositiveEps"


class BadBins(EventClusterError):
    code = "BadBins"


class BadRange(EventClusterError):
    code = "BadRange"


class BadGrid(EventClusterError):
    code = "BadGrid"


class ParseError(EventClusterError):
    code = "ParseError"

    def __init__(self, line, reason):
        self.line = line
        self.reason = reason
        super().__init__(f"line {line}: {reason}")


class Divergence(AssertionError):
    """Two clustering routes disagreed on the same input."""

    code = "Divergence"

    def __init__(self, route, delta_t, details):
        self.route = route
        self.delta_t = delta_t
        self.details = details
        super().__init__(f"{route} diverged at delta_t={delta_t!r}: {details}")


class OutOfOrderAppend(EventClusterError):
    code = "OutOfOrderAppend"


class UnknownStream(EventClusterError):
    code = "UnknownStream"


class EmptyStream(EventClusterError):
    code = "EmptyStream"
