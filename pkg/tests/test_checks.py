import numpy as np
import pytest

from lipext import (
    DegenerateInputError,
    ExtensionSpec,
    SampleSet,
    brute_force_extension_oracle,
    check_names,
    dist_to_set,
    extend_batch,
    run_suite,
)
from lipext.checks import CHECK_REGISTRY, random_lipschitz_instance


def test_oracle_two_point_values(unit_ramp):
    assert brute_force_extension_oracle(unit_ramp, 1.0, [2.0], "lower") == 0.0
    assert brute_force_extension_oracle(unit_ramp, 1.0, [2.0], "upper") == 2.0


def test_oracle_constant_samples_identity(rng, line_metric):
    # with g constant c, the lower kernel collapses to c - sigma * d(x, A)
    for _ in range(20):
        pts = rng.uniform(-5, 5, (8, 1))
        c = float(rng.uniform(-3, 3))
        sigma = float(rng.uniform(0.1, 4.0))
        samples = SampleSet(line_metric, pts, np.full(8, c))
        x = rng.uniform(-6, 6, 1)
        got = brute_force_extension_oracle(samples, sigma, x, "lower")
        assert got == pytest.approx(c - sigma * dist_to_set(samples, x), abs=1e-12)


def test_oracle_matches_vectorized_kernels(rng):
    for _ in range(50):
        samples, sigma = random_lipschitz_instance(rng, 12, 3)
        queries = rng.uniform(-6, 6, (10, 3))
        lo = extend_batch(ExtensionSpec(samples, sigma, "lower", check=False), queries)
        hi = extend_batch(ExtensionSpec(samples, sigma, "upper", check=False), queries)
        for q, a, b in zip(queries, lo, hi):
            assert abs(a - brute_force_extension_oracle(samples, sigma, q, "lower")) <= 1e-12
            assert abs(b - brute_force_extension_oracle(samples, sigma, q, "upper")) <= 1e-12


def test_registry_names_unique_and_enumerable():
    names = check_names()
    assert len(names) == len(set(names))
    assert len(names) == len(CHECK_REGISTRY)
    assert "differential_oracle" in names and "sandwich" in names


def test_default_suite_passes():
    reports = run_suite(seed=42, profile="default")
    assert all(r.passed for r in reports)
    assert {r.check_name for r in reports} == set(check_names())


def test_suite_deterministic_for_fixed_seed():
    a = run_suite(seed=7, profile="quick")
    b = run_suite(seed=7, profile="quick")
    assert [(r.check_name, r.max_violation, r.instances_run) for r in a] == [
        (r.check_name, r.max_violation, r.instances_run) for r in b
    ]


def test_quick_profile_marks_skips():
    reports = run_suite(seed=3, profile="quick")
    skipped = {r.check_name for r in reports if r.skipped}
    assert "approx_extension_oracle" in skipped
    assert all(r.passed for r in reports)


def test_tolerance_override_forces_failure():
    reports = run_suite(seed=42, profile="quick",
                        tolerance_overrides={"dist_to_set_identity": 0.0})
    by_name = {r.check_name: r for r in reports}
    assert not by_name["dist_to_set_identity"].passed
    assert by_name["dist_to_set_identity"].max_violation > 0.0


def test_unknown_override_rejected():
    with pytest.raises(DegenerateInputError):
        run_suite(seed=0, profile="quick", tolerance_overrides={"nope": 1.0})


def test_only_filter():
    reports = run_suite(seed=0, profile="quick", only={"metric_axioms"})
    assert [r.check_name for r in reports] == ["metric_axioms"]


def test_reports_serialize():
    reports = run_suite(seed=0, profile="quick", only={"metric_axioms"})
    d = reports[0].to_dict()
    assert d["check_name"] == "metric_axioms"
    assert isinstance(d["passed"], bool)
