"""Cross-module verification harness: every structural guarantee as a named check.

``run_suite`` executes the registry with a deterministic seed and returns
machine-readable reports; the CLI's ``check`` subcommand is a thin layer
over it. The independent brute-force kernel lives here too, written as a
plain-Python loop with its own distance code so that differential tests
share nothing with the vectorized kernels.

Random sample values are generated guaranteed-Lipschitz by extending
coarse random anchors (unconstrained random values are almost never
sigma-Lipschitz for interesting sigma); the generator is itself
cross-validated by the differential-oracle check, which runs first.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .analysis import is_lipschitz, lipschitz_constant, pairwise_ratio
from .density import builtin_function, density_sigma, lipschitz_approximate, sandwich_margins
from .errors import DataConflictError, DegenerateInputError, LipextError, SigmaTooSmallError
from .extension import (
    ExtensionSpec,
    dist_to_set,
    extend_batch,
    extension_sum_bound_check,
    mcshane_extend,
    scale_extension,
    step_extend,
    whitney_extend,
)
from .metrics import MetricDescriptor, SampleSet, cross_distance
from .modulus import HoelderModulus, LinearModulus, PiecewiseLinearModulus, nu_extend_batch
from .normed import (
    NormedSpace,
    SubspaceProblem,
    approx_mcshane,
    approx_whitney,
    convexity_check,
    hahn_banach_like,
    tail_bound_check,
)

_METRIC_CHOICES = ("euclidean", "manhattan", "chebyshev", "p_norm")


@dataclass(frozen=True)
class CheckReport:
    """Outcome of one named check; passed iff max_violation <= tolerance."""

    check_name: str
    instances_run: int
    max_violation: float
    tolerance: float
    passed: bool
    witness: dict | None = None
    skipped: bool = False

    def to_dict(self) -> dict:
        return {
            "check_name": self.check_name,
            "instances_run": self.instances_run,
            "max_violation": self.max_violation,
            "tolerance": self.tolerance,
            "passed": self.passed,
            "witness": self.witness,
            "skipped": self.skipped,
        }


@dataclass(frozen=True)
class SuiteProfile:
    name: str
    instances: int
    sample_sizes: tuple = (1, 2, 20, 200)
    dims: tuple = (1, 2, 3, 5)
    queries: int = 30
    oracle_evals: int = 2000
    approx_oracle_points: int = 200_000
    heavy: bool = True  # include the slower normed-space checks


DEFAULT_PROFILE = SuiteProfile(name="default", instances=10)
QUICK_PROFILE = SuiteProfile(
    name="quick",
    instances=3,
    sample_sizes=(1, 2, 20),
    dims=(1, 2),
    queries=10,
    oracle_evals=200,
    approx_oracle_points=20_000,
    heavy=False,
)
PROFILES = {"default": DEFAULT_PROFILE, "quick": QUICK_PROFILE}


# ---------------------------------------------------------------------------
# independent oracle + instance generation


def _oracle_distance(metric: MetricDescriptor, p, q) -> float:
    kind = metric.kind
    if kind == "euclidean":
        return math.dist(p, q)
    if kind == "manhattan":
        return math.fsum(abs(a - b) for a, b in zip(p, q))
    if kind == "chebyshev":
        return max((abs(a - b) for a, b in zip(p, q)), default=0.0)
    if kind == "p_norm":
        return math.fsum(abs(a - b) ** metric.p for a, b in zip(p, q)) ** (1.0 / metric.p)
    return 0.0 if all(a == b for a, b in zip(p, q)) else 1.0


def brute_force_extension_oracle(samples: SampleSet, sigma: float, x, side: str = "lower") -> float:
    """Direct loop over the samples; exists solely for differential testing."""
    xs = [float(c) for c in np.atleast_1d(np.asarray(x, dtype=float))]
    best = None
    for pt, val in zip(samples.points, samples.values):
        d = _oracle_distance(samples.metric, [float(c) for c in pt], xs)
        cand = val - sigma * d if side == "lower" else val + sigma * d
        if best is None:
            best = cand
        elif side == "lower":
            best = max(best, cand)
        else:
            best = min(best, cand)
    if best is None:
        raise DegenerateInputError("empty sample set")
    return float(best)


def random_metric(rng, dim: int) -> MetricDescriptor:
    kind = str(rng.choice(_METRIC_CHOICES))
    p = float(rng.uniform(1.0, 4.0)) if kind == "p_norm" else None
    return MetricDescriptor(kind, dim, p=p)


def random_lipschitz_instance(rng, n: int, dim: int, metric=None, anchors: int = 4):
    """(samples, sigma) with values guaranteed sigma-Lipschitz.

    Values come from the upper kernel of random anchor data, so the
    instance is sigma-Lipschitz for sigma = the anchors' empirical
    constant (validated independently by the differential-oracle check).
    """
    metric = metric or random_metric(rng, dim)
    points = rng.uniform(-5.0, 5.0, (n, dim))
    if n == 1:
        return SampleSet(metric, points, rng.uniform(-5.0, 5.0, 1)), float(rng.uniform(0.5, 3.0))
    k = min(anchors, n)
    anchor_set = SampleSet(metric, rng.uniform(-5.0, 5.0, (k, dim)), rng.uniform(-5.0, 5.0, k))
    if k == 1:
        sigma = float(rng.uniform(0.5, 3.0))
    else:
        sigma = lipschitz_constant(anchor_set).max_ratio
        if sigma == 0.0:
            sigma = 1.0
        elif sigma > 10.0:
            # near-coincident anchors can blow sigma up; rescale values so
            # downstream float magnitudes stay desk-scale
            anchor_set = anchor_set.with_values(anchor_set.values * (10.0 / sigma))
            sigma = lipschitz_constant(anchor_set).max_ratio
    spec = ExtensionSpec(anchor_set, sigma, side="upper")
    values = extend_batch(spec, points)
    return SampleSet(metric, points, values), sigma


def _instance_stream(rng, profile, extra_min_n=1):
    sizes = [n for n in profile.sample_sizes if n >= extra_min_n]
    for i in range(profile.instances):
        n = sizes[i % len(sizes)]
        dim = profile.dims[i % len(profile.dims)]
        yield random_lipschitz_instance(rng, n, dim)


# ---------------------------------------------------------------------------
# individual checks: each returns (instances_run, max_violation, witness)


def _check_differential_oracle(rng, profile, tol):
    worst, witness, run = -math.inf, None, 0
    per_instance = max(1, profile.oracle_evals // max(1, profile.instances))
    for samples, sigma in _instance_stream(rng, profile):
        if samples.n > 50:
            samples = SampleSet(samples.metric, samples.points[:50], samples.values[:50])
        queries = rng.uniform(-6.0, 6.0, (per_instance, samples.dimension))
        lo = extend_batch(ExtensionSpec(samples, sigma, "lower", check=False), queries)
        hi = extend_batch(ExtensionSpec(samples, sigma, "upper", check=False), queries)
        for q, lo_v, hi_v in zip(queries, lo, hi):
            gap = max(
                abs(lo_v - brute_force_extension_oracle(samples, sigma, q, "lower")),
                abs(hi_v - brute_force_extension_oracle(samples, sigma, q, "upper")),
            )
            run += 1
            if gap > worst:
                worst, witness = gap, {"n": samples.n, "dim": samples.dimension,
                                       "metric": samples.metric.kind}
    return run, worst, witness


def _check_metric_axioms(rng, profile, tol):
    worst, witness, run = -math.inf, None, 0
    for i in range(profile.instances * 10):
        dim = profile.dims[i % len(profile.dims)]
        metric = random_metric(rng, dim)
        x, y, z = rng.uniform(-5, 5, (3, dim))
        pts = np.vstack([x, y, z])
        d = cross_distance(metric, pts, pts)
        scale = max(1.0, float(np.max(d)))
        gap = max(
            float(np.max(-d)),                        # nonnegativity
            float(np.max(np.abs(d - d.T))),           # symmetry
            (d[0, 2] - (d[0, 1] + d[1, 2])) / scale,  # triangle, relative
            abs(d[0, 0]),                             # identity
        )
        run += 1
        if gap > worst:
            worst, witness = gap, {"metric": metric.kind, "dim": dim}
    return run, worst, witness


def _check_discrete_range(rng, profile, tol):
    run = 0
    worst = 0.0
    for i in range(profile.instances):
        dim = profile.dims[i % len(profile.dims)]
        metric = MetricDescriptor("discrete", dim)
        pts = rng.integers(0, 2, (8, dim)).astype(float)
        d = cross_distance(metric, pts, pts)
        run += 1
        if not np.all((d == 0.0) | (d == 1.0)):
            worst = 1.0
    return run, worst, None


def _check_constant_minimality(rng, profile, tol):
    worst, run = -math.inf, 0
    for samples, _ in _instance_stream(rng, profile, extra_min_n=2):
        try:
            report = lipschitz_constant(samples)
        except DegenerateInputError:
            continue
        run += 1
        ok_at = is_lipschitz(samples, report.max_ratio, 1e-12)
        worst = max(worst, 0.0 if ok_at else 1.0)
        if report.max_ratio > 0:
            shaved = report.max_ratio * (1.0 - 1e-6)
            i, j = report.argmax_pair
            still = pairwise_ratio(samples, i, j) <= shaved  # argmax pair must violate
            worst = max(worst, 1.0 if still else 0.0)
    return run, worst, None


def _check_relabeling_invariance(rng, profile, tol):
    worst, run = -math.inf, 0
    for samples, _ in _instance_stream(rng, profile, extra_min_n=2):
        perm = rng.permutation(samples.n)
        shuffled = SampleSet(samples.metric, samples.points[perm], samples.values[perm])
        run += 1
        worst = max(
            worst,
            abs(lipschitz_constant(samples).max_ratio - lipschitz_constant(shuffled).max_ratio),
        )
    return run, worst, None


def _check_value_scaling(rng, profile, tol):
    worst, run = -math.inf, 0
    for samples, _ in _instance_stream(rng, profile, extra_min_n=2):
        base = lipschitz_constant(samples).max_ratio
        lam = float(rng.choice([2.0, 0.5, -4.0, -0.25]))  # powers of two scale exactly
        scaled = lipschitz_constant(samples.with_values(lam * samples.values)).max_ratio
        run += 1
        worst = max(worst, abs(scaled - abs(lam) * base))
    return run, worst, None


def _check_min_ratio_bound(rng, profile, tol):
    worst, run = -math.inf, 0
    for samples, _ in _instance_stream(rng, profile, extra_min_n=2):
        report = lipschitz_constant(samples)
        dmat = cross_distance(samples.metric, samples.points, samples.points)
        iu, ju = np.triu_indices(samples.n, k=1)
        pos = dmat[iu, ju] > 0
        gap = np.abs(samples.values[iu] - samples.values[ju])[pos]
        run += 1
        worst = max(worst, float(np.max(report.min_ratio * dmat[iu, ju][pos] - gap)))
    return run, worst, None


def _agreement_gap(samples, sigma):
    lo = extend_batch(ExtensionSpec(samples, sigma, "lower", check=False), samples.points)
    hi = extend_batch(ExtensionSpec(samples, sigma, "upper", check=False), samples.points)
    return max(float(np.max(np.abs(lo - samples.values))), float(np.max(np.abs(hi - samples.values))))


def _check_agreement(rng, profile, tol):
    worst, run, witness = -math.inf, 0, None
    for samples, sigma in _instance_stream(rng, profile):
        run += 1
        gap = _agreement_gap(samples, sigma)
        if gap > worst:
            worst, witness = gap, {"n": samples.n, "metric": samples.metric.kind}
    return run, worst, witness


def _check_lipschitz_bound(rng, profile, tol):
    worst, run = -math.inf, 0
    for samples, sigma in _instance_stream(rng, profile):
        queries = rng.uniform(-6, 6, (profile.queries, samples.dimension))
        allpts = np.vstack([samples.points, queries])
        for side in ("lower", "upper"):
            vals = extend_batch(ExtensionSpec(samples, sigma, side, check=False), allpts)
            dmat = cross_distance(samples.metric, allpts, allpts)
            iu, ju = np.triu_indices(len(allpts), k=1)
            excess = np.abs(vals[iu] - vals[ju]) - sigma * dmat[iu, ju]
            worst = max(worst, float(np.max(excess)))
        run += 1
    return run, worst, None


def _check_sandwich(rng, profile, tol):
    worst, run = -math.inf, 0
    for samples, sigma in _instance_stream(rng, profile):
        queries = rng.uniform(-6, 6, (profile.queries, samples.dimension))
        lo = extend_batch(ExtensionSpec(samples, sigma, "lower", check=False), queries)
        hi = extend_batch(ExtensionSpec(samples, sigma, "upper", check=False), queries)
        lo_a = extend_batch(ExtensionSpec(samples, sigma, "lower", check=False), samples.points)
        hi_a = extend_batch(ExtensionSpec(samples, sigma, "upper", check=False), samples.points)
        run += 1
        for lam in (0.0, 0.25, 0.5, 0.75, 1.0):
            mix = lam * lo + (1 - lam) * hi
            worst = max(worst, float(np.max(lo - mix)), float(np.max(mix - hi)))
            mix_a = lam * lo_a + (1 - lam) * hi_a
            worst = max(worst, float(np.max(np.abs(mix_a - samples.values))))
    return run, worst, None


def _check_constant_preservation(rng, profile, tol):
    worst, run = -math.inf, 0
    for samples, _ in _instance_stream(rng, profile, extra_min_n=2):
        try:
            sigma = lipschitz_constant(samples).max_ratio
        except DegenerateInputError:
            continue
        if sigma == 0.0:
            continue
        queries = rng.uniform(-6, 6, (profile.queries, samples.dimension))
        for side in ("lower", "upper"):
            vals = extend_batch(ExtensionSpec(samples, sigma, side, check=False), queries)
            union = SampleSet(
                samples.metric,
                np.vstack([samples.points, queries]),
                np.concatenate([samples.values, vals]),
            )
            worst = max(worst, abs(lipschitz_constant(union).max_ratio - sigma))
        run += 1
    return run, worst, None


def _check_bound_transfer(rng, profile, tol):
    worst, run = -math.inf, 0
    for samples, sigma in _instance_stream(rng, profile):
        queries = rng.uniform(-6, 6, (profile.queries, samples.dimension))
        lo = extend_batch(ExtensionSpec(samples, sigma, "lower", check=False), queries)
        hi = extend_batch(ExtensionSpec(samples, sigma, "upper", check=False), queries)
        run += 1
        worst = max(
            worst,
            float(np.max(lo) - np.max(samples.values)),  # sup lower-ext <= sup g
            float(np.min(samples.values) - np.min(hi)),  # inf upper-ext >= inf g
        )
    return run, worst, None


def _check_extremum_preservation(rng, profile, tol):
    worst, run = -math.inf, 0
    for samples, sigma in _instance_stream(rng, profile):
        queries = rng.uniform(-6, 6, (profile.queries, samples.dimension))
        allpts = np.vstack([samples.points, queries])
        lo = extend_batch(ExtensionSpec(samples, sigma, "lower", check=False), allpts)
        hi = extend_batch(ExtensionSpec(samples, sigma, "upper", check=False), allpts)
        run += 1
        worst = max(
            worst,
            abs(float(np.min(hi)) - float(np.min(samples.values))),
            abs(float(np.max(lo)) - float(np.max(samples.values))),
        )
    return run, worst, None


def _check_dist_to_set_identity(rng, profile, tol):
    worst, run = -math.inf, 0
    for samples, _ in _instance_stream(rng, profile):
        for _ in range(5):
            r = float(rng.uniform(-10, 10))
            sigma = float(rng.uniform(0.1, 10.0))
            x = rng.uniform(-6, 6, samples.dimension)
            const = samples.with_values(np.full(samples.n, r))
            via_ext = (whitney_extend(ExtensionSpec(const, sigma, "upper"), x) - r) / sigma
            run += 1
            worst = max(worst, abs(via_ext - dist_to_set(samples, x)))
    return run, worst, None


def _check_step_invariance(rng, profile, tol):
    worst, run = -math.inf, 0
    for samples, sigma in _instance_stream(rng, profile):
        extra = rng.uniform(-5, 5, (max(2, samples.n // 2), samples.dimension))
        bpts = np.vstack([samples.points, extra])
        queries = np.vstack([bpts, rng.uniform(-6, 6, (profile.queries, samples.dimension))])
        run += 1
        for side in ("lower", "upper"):
            direct, staged = step_extend(samples, bpts, sigma, queries, side)
            worst = max(worst, float(np.max(np.abs(direct - staged))))
    return run, worst, None


def _check_algebra_sum(rng, profile, tol):
    worst, run = -math.inf, 0
    for samples, sigma in _instance_stream(rng, profile):
        other, sigma2 = random_lipschitz_instance(rng, samples.n, samples.dimension, samples.metric)
        g2 = SampleSet(samples.metric, samples.points, extend_batch(
            ExtensionSpec(other, sigma2, "lower", check=False), samples.points))
        queries = rng.uniform(-6, 6, (profile.queries, samples.dimension))
        report = extension_sum_bound_check(
            ExtensionSpec(samples, sigma, "lower", check=False),
            ExtensionSpec(g2, sigma2, "lower", check=False),
            queries,
        )
        run += 1
        worst = max(worst, report.max_violation)
    return run, worst, None


def _check_algebra_scaling(rng, profile, tol):
    worst, run = -math.inf, 0
    for samples, sigma in _instance_stream(rng, profile):
        queries = rng.uniform(-6, 6, (profile.queries, samples.dimension))
        for lam in (2.0, -0.5, 0.0, float(rng.uniform(-2, 2))):
            for side in ("lower", "upper"):
                spec = ExtensionSpec(samples, sigma, side, check=False)
                # the returned spec's own evaluation equals lam * the original's
                direct = extend_batch(scale_extension(spec, lam), queries)
                ref = lam * extend_batch(spec, queries)
                worst = max(worst, float(np.max(np.abs(direct - ref), initial=0.0)))
        run += 1
    return run, worst, None


def _nu_choices(rng):
    return (
        HoelderModulus(float(rng.uniform(0.5, 2.0)), float(rng.uniform(0.3, 1.0))),
        PiecewiseLinearModulus(((1.0, 2.0), (3.0, 3.0), (10.0, 4.0))),
    )


def _check_nu_extension(rng, profile, tol):
    worst, run = -math.inf, 0
    for i in range(profile.instances):
        dim = profile.dims[i % len(profile.dims)]
        metric = random_metric(rng, dim)
        for nu in _nu_choices(rng):
            anchor = SampleSet(metric, rng.uniform(-5, 5, (3, dim)), rng.uniform(-2, 2, 3))
            pts = rng.uniform(-5, 5, (12, dim))
            vals = nu_extend_batch(anchor, nu, pts, "upper", check=False)
            samples = SampleSet(metric, pts, vals)
            queries = rng.uniform(-6, 6, (profile.queries, dim))
            lo_a = nu_extend_batch(samples, nu, pts, "lower")
            hi_a = nu_extend_batch(samples, nu, pts, "upper")
            worst = max(worst, float(np.max(np.abs(lo_a - vals))), float(np.max(np.abs(hi_a - vals))))
            lo = nu_extend_batch(samples, nu, queries, "lower", check=False)
            hi = nu_extend_batch(samples, nu, queries, "upper", check=False)
            worst = max(worst, float(np.max(lo - hi)))
            allpts = np.vstack([pts, queries])
            for side_vals in (
                nu_extend_batch(samples, nu, allpts, "lower", check=False),
                nu_extend_batch(samples, nu, allpts, "upper", check=False),
            ):
                dmat = cross_distance(metric, allpts, allpts)
                iu, ju = np.triu_indices(len(allpts), k=1)
                excess = np.abs(side_vals[iu] - side_vals[ju]) - np.asarray(nu(dmat[iu, ju]))
                worst = max(worst, float(np.max(excess)))
            run += 1
    return run, worst, None


def _check_nu_linear_reduction(rng, profile, tol):
    worst, run = -math.inf, 0
    for samples, sigma in _instance_stream(rng, profile):
        nu = LinearModulus(sigma)
        queries = rng.uniform(-6, 6, (profile.queries, samples.dimension))
        run += 1
        worst = max(
            worst,
            float(np.max(np.abs(
                nu_extend_batch(samples, nu, queries, "lower", check=False)
                - extend_batch(ExtensionSpec(samples, sigma, "lower", check=False), queries)))),
            float(np.max(np.abs(
                nu_extend_batch(samples, nu, queries, "upper", check=False)
                - extend_batch(ExtensionSpec(samples, sigma, "upper", check=False), queries)))),
        )
    return run, worst, None


def _check_hoelder_alpha1_reduction(rng, profile, tol):
    worst, run = -math.inf, 0
    for samples, sigma in _instance_stream(rng, profile):
        nu = HoelderModulus(sigma, 1.0)
        queries = rng.uniform(-6, 6, (profile.queries, samples.dimension))
        run += 1
        worst = max(
            worst,
            float(np.max(np.abs(
                nu_extend_batch(samples, nu, queries, "lower", check=False)
                - extend_batch(ExtensionSpec(samples, sigma, "lower", check=False), queries)))),
        )
    return run, worst, None


def _check_density_sandwich(rng, profile, tol):
    worst, run = -math.inf, 0
    metric = MetricDescriptor("euclidean", 1)
    grid = np.linspace(0.0, 1.0, 201).reshape(-1, 1)
    for name in ("sqrt", "sin", "abs"):
        f = builtin_function(name, (0.0, 1.0))
        for eps in (0.3, 0.1):
            minorant, majorant = lipschitz_approximate(f, grid, metric, eps)
            fv = minorant.samples.values
            lo = extend_batch(minorant, grid)
            hi = extend_batch(majorant, grid)
            report = sandwich_margins(fv, lo, hi, eps)
            run += 1
            worst = max(worst, report.max_violation)
            # outputs must be sigma-Lipschitz with the constructed budget
            sigma = density_sigma(f, eps)
            for vals in (lo, hi):
                ext = SampleSet(metric, grid, vals)
                worst = max(worst, lipschitz_constant(ext).max_ratio - sigma)
            mid = 0.5 * (lo + hi)
            worst = max(worst, float(np.max(np.abs(fv - mid))) - eps)
    return run, worst, None


def _check_density_determinism(rng, profile, tol):
    metric = MetricDescriptor("euclidean", 1)
    grid = np.linspace(0.0, 1.0, 101).reshape(-1, 1)
    f = builtin_function("sqrt", (0.0, 1.0))
    a = lipschitz_approximate(f, grid, metric, 0.2)
    b = lipschitz_approximate(f, grid, metric, 0.2)
    gap = max(
        float(np.max(np.abs(extend_batch(a[0], grid) - extend_batch(b[0], grid)))),
        float(np.max(np.abs(extend_batch(a[1], grid) - extend_batch(b[1], grid)))),
    )
    return 1, gap, None


def _unit_problem():
    return SubspaceProblem(NormedSpace(2, "l2"), [[1.0, 0.0]], [1.0], 1.0)


def _dense_1d_oracle(problem, epsilon, x, n_points, maximize):
    # independent dense scan in subspace coordinate t (1-D subspaces only)
    space = problem.space
    r = 2.0 * (1.0 + epsilon) / epsilon * space.norm(x)
    direction = problem.orthonormal_basis[0]
    ts = np.linspace(-r, r, n_points)
    pts = ts[:, None] * direction[None, :]
    g0 = float(problem.values_at_coeffs(np.zeros((1, 1)))[0])
    h = problem.values_at_points(pts) - g0
    dist = space.norms(pts - np.asarray(x, dtype=float)[None, :])
    eff = (1.0 + epsilon) * problem.sigma
    if maximize:
        return float(np.max(h - eff * dist)) + g0
    return float(np.min(h + eff * dist)) + g0


def _check_approx_oracle(rng, profile, tol):
    worst, run = -math.inf, 0
    problem = _unit_problem()
    for eps in (1.0, 0.25):
        for _ in range(max(2, profile.instances // 3)):
            x = rng.uniform(-2, 2, 2)
            lo = approx_mcshane(problem, eps, x).value
            hi = approx_whitney(problem, eps, x).value
            run += 1
            worst = max(
                worst,
                abs(lo - _dense_1d_oracle(problem, eps, x, profile.approx_oracle_points, True)),
                abs(hi - _dense_1d_oracle(problem, eps, x, profile.approx_oracle_points, False)),
                lo - hi,  # sandwich between the pair
            )
    return run, worst, None


def _check_approx_lipschitz_bound(rng, profile, tol):
    worst, run = -math.inf, 0
    problem = _unit_problem()
    for eps in (1.0, 0.25):
        pts = rng.uniform(-3, 3, (12, 2))
        vals = np.array([approx_mcshane(problem, eps, x).value for x in pts])
        dmat = cross_distance(problem.space.as_metric(), pts, pts)
        iu, ju = np.triu_indices(len(pts), k=1)
        ratios = np.abs(vals[iu] - vals[ju]) / dmat[iu, ju]
        run += 1
        worst = max(worst, float(np.max(ratios)) - (1.0 + eps) * problem.sigma)
    return run, worst, None


def _check_approx_agreement(rng, profile, tol):
    worst, run = -math.inf, 0
    problem = _unit_problem()
    for _ in range(profile.instances):
        t = float(rng.uniform(-2, 2))
        x = np.array([t, 0.0])
        run += 1
        worst = max(
            worst,
            abs(approx_mcshane(problem, 1.0, x).value - t),
            abs(approx_whitney(problem, 1.0, x).value - t),
        )
    return run, worst, None


def _check_shift_covariance(rng, profile, tol):
    worst, run = -math.inf, 0
    space = NormedSpace(2, "l2")
    for _ in range(profile.instances):
        c = float(rng.uniform(-5, 5))
        base = SubspaceProblem(space, [[1.0, 0.0]], lambda t: float(t[0]), 1.0)
        shifted = SubspaceProblem(space, [[1.0, 0.0]], lambda t, c=c: float(t[0]) + c, 1.0)
        x = rng.uniform(-2, 2, 2)
        run += 1
        worst = max(
            worst,
            abs(approx_mcshane(shifted, 1.0, x).value - (approx_mcshane(base, 1.0, x).value + c)),
            abs(approx_whitney(shifted, 1.0, x).value - (approx_whitney(base, 1.0, x).value + c)),
        )
    return run, worst, None


def _check_monotone_improvement(rng, profile, tol):
    # refinement disabled: nested power-of-two grids make the evaluated
    # point sets literally nested, so the max cannot decrease
    worst, run = -math.inf, 0
    problem = _unit_problem()
    for _ in range(profile.instances):
        x = rng.uniform(-2, 2, 2)
        vals = [
            approx_mcshane(problem, 1.0, x, resolution=res, refine_rounds=0).value
            for res in (9, 17, 33)
        ]
        run += 1
        worst = max(worst, max(v0 - v1 for v0, v1 in zip(vals, vals[1:])))
    return run, worst, None


def _check_tail_bound(rng, profile, tol):
    worst, run = -math.inf, 0
    problem = _unit_problem()
    for _ in range(profile.instances):
        x = rng.uniform(-2, 2, 2)
        run += 1
        worst = max(worst, tail_bound_check(problem, 1.0, x, rng))
    return run, worst, None


def _check_hahn_banach(rng, profile, tol):
    worst, run = -math.inf, 0
    for space in (NormedSpace(2, "l2"), NormedSpace(3, "l1"), NormedSpace(2, "linf")):
        x0 = rng.uniform(-3, 3, space.dimension)
        while space.norm(x0) < 0.5:
            x0 = rng.uniform(-3, 3, space.dimension)
        report = hahn_banach_like(space, x0, grid=201, n_pairs=40, rng=rng)
        run += 1
        gt = report.grid_tolerance
        worst = max(
            worst,
            abs(report.upper_at_x0 - report.norm_x0) / gt,
            abs(report.lower_at_x0 - report.norm_x0) / gt,
            abs(report.empirical_constant - 1.0) / gt,
            report.subadditivity_violation / gt,
            report.superadditivity_violation / gt,
            report.pos_homogeneity_violation / gt,
            report.neg_homogeneity_violation / gt,
        )
    return run, worst, None


def _check_convexity(rng, profile, tol):
    # grid-scaled: violations are reported relative to 4 * spacing
    worst, run = -math.inf, 0
    grid = np.linspace(-1.0, 1.0, 201)
    h = grid[1] - grid[0]
    metric = MetricDescriptor("euclidean", 1)
    for coeffs in ((1.0, 0.0, 2.0), (0.5, -1.0, 1.0)):
        a, b, c = coeffs
        convex_vals = a * grid**2 + b * grid + c
        samples = SampleSet(metric, grid.reshape(-1, 1), convex_vals)
        sigma = lipschitz_constant(samples).max_ratio
        upper = ExtensionSpec(samples, sigma, "upper")
        lower_spec = ExtensionSpec(samples.with_values(-convex_vals), sigma, "lower")
        sampler = lambda r: np.array([r.uniform(-1, 1)])
        viol_u = convexity_check(lambda p: whitney_extend(upper, p), sampler, 40, rng, "convex")
        viol_l = convexity_check(lambda p: mcshane_extend(lower_spec, p), sampler, 40, rng, "concave")
        run += 1
        worst = max(worst, viol_u / (4 * h), viol_l / (4 * h))
    return run, worst, None


def _check_expected_errors(rng, profile, tol):
    failures = 0
    run = 0

    def expect(exc_types, fn):
        nonlocal failures, run
        run += 1
        try:
            fn()
        except exc_types:
            return
        except LipextError:
            failures += 1
        else:
            failures += 1

    metric = MetricDescriptor("euclidean", 1)
    expect(DegenerateInputError, lambda: SampleSet(metric, np.zeros((0, 1)), np.zeros(0)))
    two = SampleSet(metric, [[0.0], [1.0]], [0.0, 1.0])
    expect(SigmaTooSmallError, lambda: ExtensionSpec(two, 0.5, "lower"))
    dup = SampleSet(metric, [[0.0], [0.0]], [1.0, 2.0])
    expect(DataConflictError, lambda: lipschitz_constant(dup))
    same = SampleSet(metric, [[0.0], [0.0]], [1.0, 1.0])
    expect(DegenerateInputError, lambda: lipschitz_constant(same))
    expect(DegenerateInputError, lambda: pairwise_ratio(same, 0, 1))
    f = builtin_function("sqrt", (0.0, 1.0))
    expect(DegenerateInputError, lambda: density_sigma(f, 0.0))
    return run, float(failures), None


# registry: (name, default tolerance, runs-in-quick-profile, function)
CHECK_REGISTRY = (
    ("differential_oracle", 1e-12, True, _check_differential_oracle),
    ("metric_axioms", 1e-12, True, _check_metric_axioms),
    ("discrete_range", 0.0, True, _check_discrete_range),
    ("constant_minimality", 0.0, True, _check_constant_minimality),
    ("relabeling_invariance", 0.0, True, _check_relabeling_invariance),
    ("value_scaling", 0.0, True, _check_value_scaling),
    ("min_ratio_bound", 1e-12, True, _check_min_ratio_bound),
    ("agreement_on_samples", 1e-12, True, _check_agreement),
    ("lipschitz_bound", 1e-9, True, _check_lipschitz_bound),
    ("sandwich", 1e-9, True, _check_sandwich),
    ("constant_preservation", 1e-9, True, _check_constant_preservation),
    ("bound_transfer", 0.0, True, _check_bound_transfer),
    ("extremum_preservation", 0.0, True, _check_extremum_preservation),
    ("dist_to_set_identity", 1e-12, True, _check_dist_to_set_identity),
    ("step_invariance", 1e-9, True, _check_step_invariance),
    ("extension_algebra_sum", 1e-9, True, _check_algebra_sum),
    ("extension_algebra_scaling", 1e-12, True, _check_algebra_scaling),
    ("nu_extension_theorem", 1e-9, True, _check_nu_extension),
    ("nu_linear_reduction", 1e-12, True, _check_nu_linear_reduction),
    ("hoelder_alpha1_reduction", 1e-12, True, _check_hoelder_alpha1_reduction),
    ("density_sandwich", 1e-9, True, _check_density_sandwich),
    ("density_determinism", 0.0, True, _check_density_determinism),
    ("approx_extension_oracle", 1e-4, False, _check_approx_oracle),
    ("approx_lipschitz_bound", 1e-6, False, _check_approx_lipschitz_bound),
    ("approx_agreement", 1e-6, False, _check_approx_agreement),
    ("shift_covariance", 1e-12, False, _check_shift_covariance),
    ("monotone_improvement", 0.0, False, _check_monotone_improvement),
    ("tail_bound", 1e-9, False, _check_tail_bound),
    ("hahn_banach", 1.0, False, _check_hahn_banach),
    ("convexity_grid_scale", 1.0, False, _check_convexity),
    ("expected_errors", 0.0, True, _check_expected_errors),
)


def check_names() -> tuple:
    return tuple(name for name, _, _, _ in CHECK_REGISTRY)


def run_suite(seed: int = 0, profile="default", tolerance_overrides=None, only=None) -> list:
    """Execute the registry deterministically and return one report per check.

    Each check draws from its own seeded generator, so reports do not
    depend on which other checks run. ``tolerance_overrides`` maps check
    names to replacement tolerances; ``only`` restricts execution.
    """
    if isinstance(profile, str):
        profile = PROFILES[profile]
    overrides = dict(tolerance_overrides or {})
    unknown = set(overrides) - set(check_names())
    if unknown:
        raise DegenerateInputError(f"unknown check names in overrides: {sorted(unknown)}")
    reports = []
    for idx, (name, default_tol, in_quick, fn) in enumerate(CHECK_REGISTRY):
        tol = float(overrides.get(name, default_tol))
        if only is not None and name not in only:
            continue
        if not profile.heavy and not in_quick:
            reports.append(CheckReport(name, 0, 0.0, tol, True, None, skipped=True))
            continue
        rng = np.random.default_rng([seed, idx])
        run, worst, witness = fn(rng, profile, tol)
        worst = 0.0 if worst == -math.inf else float(worst)
        reports.append(CheckReport(name, int(run), worst, tol, bool(worst <= tol), witness))
    return reports
