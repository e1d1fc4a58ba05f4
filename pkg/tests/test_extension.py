import numpy as np
import pytest

from lipext import (
    DegenerateInputError,
    ExtensionSpec,
    SampleSet,
    SigmaTooSmallError,
    dist_to_set,
    extend_batch,
    extension_sum_bound_check,
    lipschitz_constant,
    mcshane_extend,
    scale_extension,
    step_extend,
    whitney_extend,
)
from lipext.checks import random_lipschitz_instance


@pytest.fixture
def ramp_lower(unit_ramp):
    return ExtensionSpec(unit_ramp, 1.0, "lower")


@pytest.fixture
def ramp_upper(unit_ramp):
    return ExtensionSpec(unit_ramp, 1.0, "upper")


def test_lower_kernel_two_point_values(ramp_lower):
    # max(0 - 2, 1 - 1) = 0 beyond the samples
    assert mcshane_extend(ramp_lower, 2.0) == 0.0
    assert mcshane_extend(ramp_lower, 1.0) == 1.0
    # max(0 - 0.5, 1 - 0.5) = 0.5
    assert mcshane_extend(ramp_lower, 0.5) == 0.5


def test_upper_kernel_two_point_values(ramp_upper):
    # min(0 + 2, 1 + 1) = 2
    assert whitney_extend(ramp_upper, 2.0) == 2.0
    assert whitney_extend(ramp_upper, 0.0) == 0.0
    assert whitney_extend(ramp_upper, 0.5) == 0.5


def test_extend_batch_matches_single_evals(ramp_lower, unit_ramp):
    np.testing.assert_allclose(
        extend_batch(ramp_lower, [2.0, 1.0, 0.5]), [0.0, 1.0, 0.5], atol=0
    )
    assert extend_batch(ramp_lower, []).shape == (0,)
    mid = ExtensionSpec(unit_ramp, 1.0, "midpoint")
    assert extend_batch(mid, [2.0])[0] == 1.0  # (0 + 2) / 2


def test_spec_rejects_sigma_below_empirical(unit_ramp):
    with pytest.raises(SigmaTooSmallError) as err:
        ExtensionSpec(unit_ramp, 0.5, "lower")
    assert err.value.report.argmax_pair == (0, 1)
    # at exactly the empirical constant construction succeeds
    ExtensionSpec(unit_ramp, 1.0, "lower")


def test_spec_parameter_validation(unit_ramp):
    with pytest.raises(DegenerateInputError):
        ExtensionSpec(unit_ramp, -1.0, "lower")
    with pytest.raises(DegenerateInputError):
        ExtensionSpec(unit_ramp, 1.0, "sideways")


def test_dist_to_set(line_metric, unit_ramp):
    assert dist_to_set(unit_ramp, 3.0) == 2.0
    assert dist_to_set(unit_ramp, 1.0) == 0.0


def test_dist_to_set_constant_extension_identity(unit_ramp):
    # hand evaluation: r = 5, sigma = 2, x = 3 gives min(5+6, 5+4) = 9, (9-5)/2 = 2
    const = unit_ramp.with_values([5.0, 5.0])
    spec = ExtensionSpec(const, 2.0, "upper")
    assert whitney_extend(spec, 3.0) == 9.0
    assert (whitney_extend(spec, 3.0) - 5.0) / 2.0 == dist_to_set(unit_ramp, 3.0)


def test_dist_to_set_identity_random(rng):
    for _ in range(100):
        samples, _ = random_lipschitz_instance(rng, 10, 2)
        r = float(rng.uniform(-10, 10))
        sigma = float(rng.uniform(0.1, 10))
        x = rng.uniform(-6, 6, 2)
        const = samples.with_values(np.full(samples.n, r))
        via = (whitney_extend(ExtensionSpec(const, sigma, "upper"), x) - r) / sigma
        assert via == pytest.approx(dist_to_set(samples, x), abs=1e-12)


def test_sum_bound_hand_instance(unit_ramp):
    spec = ExtensionSpec(unit_ramp, 1.0, "lower")
    # (g+g) with sigma 2 at x=2: max(0-4, 2-2) = 0 <= 0 + 0
    report = extension_sum_bound_check(spec, spec, [2.0])
    assert report.max_violation <= 0.0
    assert report.passed


def test_sum_bound_zero_function_equality(unit_ramp, line_metric):
    g = ExtensionSpec(unit_ramp, 1.0, "lower")
    zero = ExtensionSpec(unit_ramp.with_values([0.0, 0.0]), 0.0, "lower")
    report = extension_sum_bound_check(g, zero, np.linspace(-3, 3, 11))
    assert abs(report.max_violation) <= 1e-12


def test_sum_bound_random(rng):
    for _ in range(20):
        samples, sigma = random_lipschitz_instance(rng, 20, 2)
        other, sigma2 = random_lipschitz_instance(rng, 20, 2, samples.metric)
        g2 = samples.with_values(
            extend_batch(ExtensionSpec(other, sigma2, "lower", check=False), samples.points)
        )
        report = extension_sum_bound_check(
            ExtensionSpec(samples, sigma, "lower", check=False),
            ExtensionSpec(g2, sigma2, "lower", check=False),
            rng.uniform(-6, 6, (50, 2)),
        )
        assert report.max_violation <= 1e-9


def test_sum_bound_requires_matching_points(unit_ramp, line_metric):
    other = SampleSet(line_metric, [[0.0], [2.0]], [0.0, 1.0])
    with pytest.raises(DegenerateInputError):
        extension_sum_bound_check(
            ExtensionSpec(unit_ramp, 1.0), ExtensionSpec(other, 1.0), [1.0]
        )


def test_scale_by_two(ramp_lower):
    scaled = scale_extension(ramp_lower, 2.0)
    # (2g) at x=2: max(0-4, 2-2) = 0 = 2 * 0
    assert mcshane_extend(scaled, 2.0) == 0.0
    assert scaled.sigma == 2.0 and scaled.side == "lower"


def test_scale_identity(ramp_lower):
    same = scale_extension(ramp_lower, 1.0)
    assert same.sigma == ramp_lower.sigma
    assert same.side == ramp_lower.side
    np.testing.assert_array_equal(same.samples.values, ramp_lower.samples.values)


def test_scale_negative_flips_side(ramp_upper):
    # the lower kernel of -g: max(0-2, -1-1) = -2 = -(upper of g at 2)
    flipped = scale_extension(ramp_upper, -1.0)
    assert flipped.side == "lower"
    assert mcshane_extend(flipped, 2.0) == -2.0
    assert mcshane_extend(flipped, 2.0) == -whitney_extend(ramp_upper, 2.0)


def test_scale_zero_gives_constant_zero(ramp_lower):
    zero = scale_extension(ramp_lower, 0.0)
    assert zero.sigma == 0.0
    np.testing.assert_array_equal(extend_batch(zero, [-3.0, 7.0]), [0.0, 0.0])


def test_scale_pointwise_identity_random(rng):
    for _ in range(20):
        samples, sigma = random_lipschitz_instance(rng, 15, 2)
        queries = rng.uniform(-6, 6, (20, 2))
        for lam in (2.0, -0.5, 1.7, -3.1):
            for side in ("lower", "upper"):
                spec = ExtensionSpec(samples, sigma, side, check=False)
                direct = extend_batch(scale_extension(spec, lam), queries)
                np.testing.assert_allclose(direct, lam * extend_batch(spec, queries), atol=1e-12)


def test_step_extension_hand_instance(unit_ramp):
    bpts = [[0.0], [1.0], [1.5]]
    direct, staged = step_extend(unit_ramp, bpts, 1.0, [[2.0]], side="lower")
    # staged intermediate value at 1.5 is max(0-1.5, 1-0.5) = 0.5, and
    # re-extension at 2 gives max(0-2, 1-1, 0.5-0.5) = 0 = direct
    assert direct[0] == 0.0 and staged[0] == 0.0


def test_step_extension_with_same_set(unit_ramp):
    direct, staged = step_extend(unit_ramp, unit_ramp.points, 1.0, [[0.3], [4.0]], "upper")
    np.testing.assert_array_equal(direct, staged)


def test_step_extension_random_nested(rng):
    for _ in range(20):
        samples, sigma = random_lipschitz_instance(rng, 10, 2)
        bpts = np.vstack([samples.points, rng.uniform(-5, 5, (8, 2))])
        queries = np.vstack([bpts, rng.uniform(-6, 6, (30, 2))])
        for side in ("lower", "upper"):
            direct, staged = step_extend(samples, bpts, sigma, queries, side)
            assert float(np.max(np.abs(direct - staged))) <= 1e-9


def test_step_extension_requires_superset(unit_ramp):
    with pytest.raises(DegenerateInputError):
        step_extend(unit_ramp, [[0.0], [2.0]], 1.0, [[3.0]])


def test_agreement_on_samples_random(rng):
    for _ in range(20):
        samples, sigma = random_lipschitz_instance(rng, 25, 3)
        for side in ("lower", "upper"):
            vals = extend_batch(ExtensionSpec(samples, sigma, side, check=False), samples.points)
            assert float(np.max(np.abs(vals - samples.values))) <= 1e-12


def test_extension_is_sigma_lipschitz(rng):
    for _ in range(10):
        samples, sigma = random_lipschitz_instance(rng, 20, 2)
        queries = rng.uniform(-7, 7, (30, 2))
        allpts = np.vstack([samples.points, queries])
        for side in ("lower", "upper"):
            vals = extend_batch(ExtensionSpec(samples, sigma, side, check=False), allpts)
            ext = SampleSet(samples.metric, allpts, vals)
            assert lipschitz_constant(ext).max_ratio <= sigma + 1e-9


def test_sandwich_family(rng):
    for _ in range(10):
        samples, sigma = random_lipschitz_instance(rng, 20, 2)
        queries = rng.uniform(-7, 7, (30, 2))
        lo = extend_batch(ExtensionSpec(samples, sigma, "lower", check=False), queries)
        hi = extend_batch(ExtensionSpec(samples, sigma, "upper", check=False), queries)
        assert np.all(lo <= hi + 1e-9)
        lo_a = extend_batch(ExtensionSpec(samples, sigma, "lower", check=False), samples.points)
        hi_a = extend_batch(ExtensionSpec(samples, sigma, "upper", check=False), samples.points)
        for lam in (0.0, 0.3, 0.5, 0.8, 1.0):
            mix = lam * lo + (1 - lam) * hi
            assert np.all(lo - 1e-9 <= mix) and np.all(mix <= hi + 1e-9)
            mix_a = lam * lo_a + (1 - lam) * hi_a
            assert float(np.max(np.abs(mix_a - samples.values))) <= 1e-9


def test_bound_transfer(rng):
    for _ in range(10):
        samples, sigma = random_lipschitz_instance(rng, 15, 2)
        queries = rng.uniform(-8, 8, (40, 2))
        lo = extend_batch(ExtensionSpec(samples, sigma, "lower", check=False), queries)
        hi = extend_batch(ExtensionSpec(samples, sigma, "upper", check=False), queries)
        assert np.max(lo) <= np.max(samples.values)
        assert np.min(hi) >= np.min(samples.values)


def test_extremum_preservation_exact(rng):
    for _ in range(10):
        samples, sigma = random_lipschitz_instance(rng, 15, 2)
        queries = rng.uniform(-8, 8, (40, 2))
        allpts = np.vstack([samples.points, queries])
        lo = extend_batch(ExtensionSpec(samples, sigma, "lower", check=False), allpts)
        hi = extend_batch(ExtensionSpec(samples, sigma, "upper", check=False), allpts)
        assert float(np.min(hi)) == float(np.min(samples.values))
        assert float(np.max(lo)) == float(np.max(samples.values))


def test_constant_preservation(rng):
    for _ in range(10):
        samples, _ = random_lipschitz_instance(rng, 20, 2)
        sigma = lipschitz_constant(samples).max_ratio
        queries = rng.uniform(-6, 6, (30, 2))
        for side in ("lower", "upper"):
            vals = extend_batch(ExtensionSpec(samples, sigma, side, check=False), queries)
            union = SampleSet(
                samples.metric,
                np.vstack([samples.points, queries]),
                np.concatenate([samples.values, vals]),
            )
            assert lipschitz_constant(union).max_ratio == pytest.approx(sigma, abs=1e-9)
