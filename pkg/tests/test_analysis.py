import numpy as np
import pytest

from lipext import (
    DataConflictError,
    DegenerateInputError,
    MetricDescriptor,
    SampleSet,
    is_lipschitz,
    lipschitz_constant,
    pairwise_ratio,
)
from lipext.checks import random_lipschitz_instance


def brute_force_ratios(samples):
    # independent double loop used as the oracle for the vectorized scan
    out = []
    for i in range(samples.n):
        for j in range(i + 1, samples.n):
            d = float(np.linalg.norm(samples.points[i] - samples.points[j]))
            if d > 0:
                out.append(abs(samples.values[i] - samples.values[j]) / d)
    return out


def test_pairwise_ratio_identity(unit_ramp):
    assert pairwise_ratio(unit_ramp, 0, 1) == 1.0


def test_pairwise_ratio_hand_value(line_metric):
    s = SampleSet(line_metric, [[0.0], [2.0]], [0.0, 4.0])
    assert pairwise_ratio(s, 0, 1) == 2.0


def test_pairwise_ratio_constant(line_metric):
    s = SampleSet(line_metric, [[0.0], [1.0]], [5.0, 5.0])
    assert pairwise_ratio(s, 0, 1) == 0.0


def test_pairwise_ratio_errors(line_metric):
    s = SampleSet(line_metric, [[0.0], [0.0]], [1.0, 1.0])
    with pytest.raises(DegenerateInputError):
        pairwise_ratio(s, 0, 1)
    with pytest.raises(DegenerateInputError):
        pairwise_ratio(s, 0, 5)


def test_constant_scan_three_points(line_metric):
    # ratios by hand: (0,1) -> 1, (0,2) -> 2, (1,2) -> 3
    s = SampleSet(line_metric, [[0.0], [1.0], [2.0]], [0.0, 1.0, 4.0])
    report = lipschitz_constant(s)
    assert report.max_ratio == 3.0
    assert report.min_ratio == 1.0
    assert report.argmax_pair == (1, 2)
    assert report.pair_count == 3
    assert sorted(brute_force_ratios(s)) == [1.0, 2.0, 3.0]


def test_constant_scan_matches_brute_force(rng):
    for _ in range(20):
        samples, _ = random_lipschitz_instance(rng, 15, 2, MetricDescriptor("euclidean", 2))
        report = lipschitz_constant(samples)
        oracle = brute_force_ratios(samples)
        assert report.max_ratio == pytest.approx(max(oracle), rel=1e-12)
        assert report.min_ratio == pytest.approx(min(oracle), rel=1e-12)
        assert report.pair_count == len(oracle)


def test_constant_function_zero(line_metric):
    s = SampleSet(line_metric, [[0.0], [1.0], [5.0]], [3.0, 3.0, 3.0])
    assert lipschitz_constant(s).max_ratio == 0.0


def test_two_point_identity(unit_ramp):
    report = lipschitz_constant(unit_ramp)
    assert report.max_ratio == 1.0 and report.min_ratio == 1.0


def test_conflicting_duplicates_error(line_metric):
    s = SampleSet(line_metric, [[0.0], [0.0]], [1.0, 2.0])
    with pytest.raises(DataConflictError):
        lipschitz_constant(s)


def test_no_distinct_pair_error(line_metric):
    s = SampleSet(line_metric, [[0.0], [0.0]], [1.0, 1.0])
    with pytest.raises(DegenerateInputError, match="distinct"):
        lipschitz_constant(s)
    with pytest.raises(DegenerateInputError):
        lipschitz_constant(SampleSet(line_metric, [[1.0]], [0.0]))


def test_is_lipschitz_cases(line_metric):
    ident = SampleSet(line_metric, [[0.0], [1.0], [2.0]], [0.0, 1.0, 2.0])
    assert is_lipschitz(ident, 1.0, 1e-12)
    steep = SampleSet(line_metric, [[0.0], [1.0], [2.0]], [0.0, 1.0, 4.0])
    assert not is_lipschitz(steep, 2.0, 1e-9)
    assert is_lipschitz(steep, lipschitz_constant(steep).max_ratio, 1e-12)


def test_duplicate_rows_skipped_not_errors(line_metric):
    s = SampleSet(line_metric, [[0.0], [0.0], [1.0]], [2.0, 2.0, 3.0])
    assert lipschitz_constant(s).max_ratio == 1.0
    assert lipschitz_constant(s).pair_count == 2


def test_minimality_of_the_constant(rng):
    for _ in range(20):
        samples, _ = random_lipschitz_instance(rng, 12, 3)
        report = lipschitz_constant(samples)
        assert is_lipschitz(samples, report.max_ratio, 1e-12)
        if report.max_ratio > 0:
            shaved = report.max_ratio * (1 - 1e-6)
            i, j = report.argmax_pair
            assert pairwise_ratio(samples, i, j) > shaved


def test_permutation_invariance(rng):
    samples, _ = random_lipschitz_instance(rng, 20, 2)
    base = lipschitz_constant(samples)
    perm = rng.permutation(samples.n)
    shuffled = SampleSet(samples.metric, samples.points[perm], samples.values[perm])
    other = lipschitz_constant(shuffled)
    assert other.max_ratio == base.max_ratio
    assert other.min_ratio == base.min_ratio
    assert other.pair_count == base.pair_count


def test_value_scaling(rng):
    samples, _ = random_lipschitz_instance(rng, 15, 1)
    base = lipschitz_constant(samples).max_ratio
    # powers of two scale exactly in floating point
    for lam in (2.0, -8.0, 0.25):
        scaled = lipschitz_constant(samples.with_values(lam * samples.values)).max_ratio
        assert scaled == abs(lam) * base
    lam = 1.7
    scaled = lipschitz_constant(samples.with_values(lam * samples.values)).max_ratio
    assert scaled == pytest.approx(lam * base, rel=1e-12)


def test_min_ratio_lower_bounds_every_pair(rng):
    samples, _ = random_lipschitz_instance(rng, 10, 2, MetricDescriptor("euclidean", 2))
    report = lipschitz_constant(samples)
    for i in range(samples.n):
        for j in range(i + 1, samples.n):
            d = float(np.linalg.norm(samples.points[i] - samples.points[j]))
            if d > 0:
                gap = abs(samples.values[i] - samples.values[j])
                assert report.min_ratio * d <= gap + 1e-12
