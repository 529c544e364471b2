import numpy as np
import pytest
from hypothesis import strategies as st

# Worked example used across the suite.
T_STAR = [-20, -18, 1, 2, 2.9, 10, 11, 100, 200, 202, 202, 203]
T_STAR_MEAN = sum(T_STAR) / len(T_STAR)

# delta_t -> (clusters, isolated), as printed for the worked example
WORKED_OUTPUTS = {
    -1: ([], [-20, -18, 1, 2, 2.9, 10, 11, 100, 200, 202, 202, 203]),
    0: ([[202, 202]], [-20, -18, 1, 2, 2.9, 10, 11, 100, 200, 203]),
    1: ([[1, 2.9], [10, 11], [202, 203]], [-20, -18, 100, 200]),
    10: ([[-20, -18], [1, 11], [200, 203]], [100]),
    100: ([[-20, 203]], []),
    "mean": ([[-20, 11], [200, 203]], [100]),
}


@pytest.fixture
def t_star():
    return list(T_STAR)


@st.composite
def ordered_series(draw, max_size=60):
    """Non-decreasing timestamps, with ties and exact repeats of gap values."""
    kind = draw(st.sampled_from(["grid", "float"]))
    if kind == "grid":
        # small integers give many duplicates and gaps exactly equal to delta_t
        values = draw(st.lists(st.integers(-50, 50), max_size=max_size))
        values = [float(v) for v in values]
    else:
        values = draw(
            st.lists(
                st.floats(-1e6, 1e6, allow_nan=False, allow_infinity=False),
                max_size=max_size,
            )
        )
    return sorted(values)


@st.composite
def series_and_delta(draw, max_size=60):
    t = draw(ordered_series(max_size=max_size))
    gaps = np.diff(t).tolist() if len(t) > 1 else []
    choices = [st.sampled_from([-1.0, 0.0, 1.0, 1e12])]
    if gaps:
        choices.append(st.sampled_from(gaps))
    choices.append(st.floats(-10, 100, allow_nan=False))
    delta_t = draw(st.one_of(*choices))
    return t, delta_t


def random_trial(rng, max_n=10_000):
    """One randomized (series, delta_t) trial for the large equivalence sweeps."""
    n = int(rng.integers(0, max_n + 1))
    kind = rng.integers(0, 3)
    if kind == 0:
        t = np.sort(rng.random(n) * max(n, 1))
    elif kind == 1:
        t = np.sort(rng.integers(0, max(n // 2, 1), n)).astype(np.float64)
    else:
        # bursts of dense events separated by long silences
        t = np.cumsum(rng.exponential(1.0, n) * np.where(rng.random(n) < 0.05, 50.0, 0.2))
    gaps = np.diff(t)
    pick = rng.integers(0, 4)
    if pick == 0 or gaps.size == 0:
        delta_t = float(rng.choice([-1.0, 0.0, 1e300]))
    elif pick == 1:
        delta_t = float(gaps[rng.integers(0, gaps.size)])  # exactly a gap
    else:
        delta_t = float(np.quantile(gaps, rng.random()))
    return t, delta_t


_ACCEPTANCE_LINES = []


@pytest.fixture(scope="session")
def acceptance_lines():
    return _ACCEPTANCE_LINES


def pytest_terminal_summary(terminalreporter):
    if _ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in _ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
