import numpy as np
import pytest

from eventcluster.exceptions import BadRange
from eventcluster.synth import (
    GeneratorKind,
    GeneratorSpec,
    gen_burst_composite,
    gen_periodic,
    gen_uniform,
)


def test_periodic():
    assert gen_periodic(3, 10, 0).tolist() == [0, 10, 20]
    assert gen_periodic(1, 5, 7).tolist() == [7]
    assert gen_periodic(0, 1, 0).tolist() == []


def test_periodic_bad_period():
    with pytest.raises(BadRange):
        gen_periodic(3, 0)


def test_uniform_sorted_and_in_range():
    s = gen_uniform(10_000, 0, 10_000, seed=1)
    assert s.n == 10_000
    assert np.all(np.diff(s.events) >= 0)
    assert s.events.min() >= 0 and s.events.max() < 10_000


def test_uniform_empty():
    assert gen_uniform(0, 0, 1, seed=3).n == 0


def test_uniform_deterministic():
    a = gen_uniform(1000, -5, 5, seed=7)
    b = gen_uniform(1000, -5, 5, seed=7)
    assert a.events.tobytes() == b.events.tobytes()
    assert gen_uniform(1000, -5, 5, seed=8) != a


@pytest.mark.parametrize("lo, hi", [(1, 1), (2, 1)])
def test_uniform_bad_range(lo, hi):
    with pytest.raises(BadRange):
        gen_uniform(3, lo, hi)


def test_burst_composite_shape():
    s = gen_burst_composite(seed=42)
    assert s.n == 11_000
    assert s.events[0] >= 0
    assert s.events[-1] == 10
    assert np.all(s.events[:10_000] < 1)
    tail = np.diff(s.events[10_000:])
    assert tail == pytest.approx(np.full(999, 9 / 999), rel=1e-9)


def test_burst_composite_seeds_differ_only_in_prefix():
    a = gen_burst_composite(seed=1).events
    b = gen_burst_composite(seed=2).events
    assert not np.array_equal(a[:10_000], b[:10_000])
    assert np.array_equal(a[10_000:], b[10_000:])


def test_spec_dispatch():
    spec = GeneratorSpec(GeneratorKind.UNIFORM, {"n": 5, "lo": 0, "hi": 1}, seed=4)
    assert spec.generate() == gen_uniform(5, 0, 1, seed=4)
    assert GeneratorSpec(GeneratorKind.PERIODIC, {"n": 2}).generate().tolist() == [0, 1]
