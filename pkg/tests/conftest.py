import numpy as np
import pytest

from lipext import MetricDescriptor, SampleSet


@pytest.fixture
def line_metric():
    return MetricDescriptor("euclidean", 1)


@pytest.fixture
def unit_ramp(line_metric):
    # the canonical two-point identity sample {0 -> 0, 1 -> 1}
    return SampleSet(line_metric, [[0.0], [1.0]], [0.0, 1.0])


@pytest.fixture
def rng():
    return np.random.default_rng(1234)
