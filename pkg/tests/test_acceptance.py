"""Acceptance gate: every criterion at its stated tolerance, one line per run.

Run with ``pytest tests/test_acceptance.py -v -s`` to see the pass/fail
lines. The random-instance criteria use dedicated seeds so the numbers
are reproducible.
"""
import math
import time

import numpy as np

from lipext import (
    ExtensionSpec,
    HoelderModulus,
    LinearModulus,
    MetricDescriptor,
    NormedSpace,
    SampleSet,
    SubspaceProblem,
    approx_mcshane,
    approx_whitney,
    brute_force_extension_oracle,
    builtin_function,
    convexity_check,
    dist_to_set,
    extend_batch,
    extension_sum_bound_check,
    hahn_banach_like,
    lipschitz_approximate,
    lipschitz_constant,
    mcshane_extend,
    nu_extend_batch,
    sandwich_margins,
    scale_extension,
    step_extend,
    whitney_extend,
)
from lipext.checks import random_lipschitz_instance
from lipext.metrics import cross_distance


def _report(cid, ok, detail):
    print(f"[acceptance {cid:02d}] {'PASS' if ok else 'FAIL'} {detail}")
    assert ok, detail


def _instances(seed, count, sizes=(2, 5, 20, 50, 100, 200), dims=(1, 2, 3, 4, 5)):
    rng = np.random.default_rng(seed)
    for i in range(count):
        yield rng, random_lipschitz_instance(rng, sizes[i % len(sizes)], dims[i % len(dims)])


def test_01_two_point_kernel_values():
    metric = MetricDescriptor("euclidean", 1)
    samples = SampleSet(metric, [[0.0], [1.0]], [0.0, 1.0])
    spec = ExtensionSpec(samples, 1.0, "lower")
    lower = mcshane_extend(spec, 2.0)
    upper = whitney_extend(spec, 2.0)
    mcshane_extend(spec, 2.0)  # warmup before timing
    times = []
    for _ in range(50):
        t0 = time.perf_counter()
        mcshane_extend(spec, 2.0)
        times.append(time.perf_counter() - t0)
    elapsed = min(times)
    ok = abs(lower - 0.0) <= 1e-12 and abs(upper - 2.0) <= 1e-12 and elapsed < 1e-3
    _report(1, ok, f"lower(2)={lower} upper(2)={upper} runtime={elapsed * 1e3:.3f} ms")


def test_02_extension_theorem_suite():
    t0 = time.perf_counter()
    worst_agree = worst_bound = worst_sandwich = -math.inf
    for rng, (samples, sigma) in _instances(20, 500):
        queries = rng.uniform(-6, 6, (50, samples.dimension))
        lo_spec = ExtensionSpec(samples, sigma, "lower", check=False)
        hi_spec = ExtensionSpec(samples, sigma, "upper", check=False)
        lo_a = extend_batch(lo_spec, samples.points)
        hi_a = extend_batch(hi_spec, samples.points)
        worst_agree = max(
            worst_agree,
            float(np.max(np.abs(lo_a - samples.values))),
            float(np.max(np.abs(hi_a - samples.values))),
        )
        lo = extend_batch(lo_spec, queries)
        hi = extend_batch(hi_spec, queries)
        dmat = cross_distance(samples.metric, queries, queries)
        iu, ju = np.triu_indices(len(queries), k=1)
        for vals in (lo, hi):
            excess = np.abs(vals[iu] - vals[ju]) - sigma * dmat[iu, ju]
            worst_bound = max(worst_bound, float(np.max(excess)))
        for lam in (0.0, 0.25, 0.5, 0.75, 1.0):
            mix = lam * lo + (1 - lam) * hi
            worst_sandwich = max(
                worst_sandwich, float(np.max(lo - mix)), float(np.max(mix - hi))
            )
    elapsed = time.perf_counter() - t0
    ok = (worst_agree <= 1e-12 and worst_bound <= 1e-9
          and worst_sandwich <= 1e-9 and elapsed < 30.0)
    _report(2, ok, f"agree={worst_agree:.2e} bound={worst_bound:.2e} "
                   f"sandwich={worst_sandwich:.2e} runtime={elapsed:.1f} s")


def test_03_step_invariance():
    worst = -math.inf
    for rng, (samples, sigma) in _instances(30, 200, sizes=(2, 5, 20, 50)):
        extra = rng.uniform(-5, 5, (6, samples.dimension))
        bpts = np.vstack([samples.points, extra])
        queries = np.vstack([bpts, rng.uniform(-6, 6, (20, samples.dimension))])
        for side in ("lower", "upper"):
            direct, staged = step_extend(samples, bpts, sigma, queries, side)
            worst = max(worst, float(np.max(np.abs(direct - staged))))
    _report(3, worst <= 1e-9, f"max |direct - staged| = {worst:.2e}")


def test_04_constant_preservation():
    worst = -math.inf
    count = 0
    for rng, (samples, _) in _instances(40, 200, sizes=(2, 5, 20, 50, 100)):
        sigma = lipschitz_constant(samples).max_ratio
        queries = rng.uniform(-6, 6, (25, samples.dimension))
        count += 1
        for side in ("lower", "upper"):
            vals = extend_batch(ExtensionSpec(samples, sigma, side, check=False), queries)
            union = SampleSet(
                samples.metric,
                np.vstack([samples.points, queries]),
                np.concatenate([samples.values, vals]),
            )
            worst = max(worst, abs(lipschitz_constant(union).max_ratio - sigma))
    _report(4, worst <= 1e-9, f"max |L(extended) - L(g)| = {worst:.2e} on {count} instances")


def test_05_located_distance_and_extrema():
    rng = np.random.default_rng(50)
    worst = -math.inf
    for _ in range(100):
        samples, _ = random_lipschitz_instance(rng, 12, 2)
        r = float(rng.uniform(-10, 10))
        sigma = float(rng.uniform(0.1, 10.0))
        x = rng.uniform(-6, 6, 2)
        const = samples.with_values(np.full(samples.n, r))
        via = (whitney_extend(ExtensionSpec(const, sigma, "upper"), x) - r) / sigma
        worst = max(worst, abs(via - dist_to_set(samples, x)))
    exact = True
    for rng2, (samples, sigma) in _instances(51, 50):
        queries = rng2.uniform(-7, 7, (30, samples.dimension))
        allpts = np.vstack([samples.points, queries])
        lo = extend_batch(ExtensionSpec(samples, sigma, "lower", check=False), allpts)
        hi = extend_batch(ExtensionSpec(samples, sigma, "upper", check=False), allpts)
        exact = exact and float(np.min(hi)) == float(np.min(samples.values))
        exact = exact and float(np.max(lo)) == float(np.max(samples.values))
    _report(5, worst <= 1e-12 and exact,
            f"distance identity={worst:.2e}, extrema exact={exact}")


def test_06_extension_algebra():
    worst_sum = worst_scale = -math.inf
    for rng, (samples, sigma) in _instances(60, 200, sizes=(2, 5, 20, 50)):
        other, sigma2 = random_lipschitz_instance(rng, samples.n, samples.dimension, samples.metric)
        g2 = samples.with_values(
            extend_batch(ExtensionSpec(other, sigma2, "lower", check=False), samples.points)
        )
        queries = rng.uniform(-6, 6, (20, samples.dimension))
        report = extension_sum_bound_check(
            ExtensionSpec(samples, sigma, "lower", check=False),
            ExtensionSpec(g2, sigma2, "lower", check=False),
            queries,
        )
        worst_sum = max(worst_sum, report.max_violation)
        for lam in (2.0, -0.5, float(rng.uniform(-2, 2))):
            for side in ("lower", "upper"):
                spec = ExtensionSpec(samples, sigma, side, check=False)
                direct = extend_batch(scale_extension(spec, lam), queries)
                worst_scale = max(
                    worst_scale,
                    float(np.max(np.abs(direct - lam * extend_batch(spec, queries)))),
                )
    _report(6, worst_sum <= 1e-9 and worst_scale <= 1e-12,
            f"sum bound={worst_sum:.2e} scaling={worst_scale:.2e}")


def test_07_density_sandwich_sqrt():
    metric = MetricDescriptor("euclidean", 1)
    grid = np.linspace(0.0, 1.0, 201).reshape(-1, 1)
    f = builtin_function("sqrt", (0.0, 1.0))
    details = []
    ok = True
    for eps in (0.3, 0.1, 0.05):
        t0 = time.perf_counter()
        minorant, majorant = lipschitz_approximate(f, grid, metric, eps)
        report = sandwich_margins(
            minorant.samples.values,
            extend_batch(minorant, grid),
            extend_batch(majorant, grid),
            eps,
        )
        elapsed = time.perf_counter() - t0
        details.append(f"eps={eps}: margin={report.max_violation:.2e} ({elapsed * 1e3:.0f} ms)")
        ok = ok and minorant.sigma == 2.0 / (eps * eps)  # exactly the constructed budget
        ok = ok and report.max_violation <= 1e-9 and elapsed < 1.0
    _report(7, ok, "; ".join(details))


def test_08_approximate_extension():
    problem = SubspaceProblem(NormedSpace(2, "l2"), [[1.0, 0.0]], [1.0], 1.0)
    space = problem.space
    details = []
    ok = True
    for eps in (0.25, 1.0):
        rng = np.random.default_rng(80)
        # dense independent oracle at 10^6 points along the subspace
        worst_oracle = -math.inf
        for x in ([0.0, 1.0], [1.5, -0.5], [-2.0, 2.0]):
            x = np.asarray(x)
            r = 2.0 * (1.0 + eps) / eps * space.norm(x)
            ts = np.linspace(-r, r, 10**6)
            dist = np.sqrt((ts - x[0]) ** 2 + x[1] ** 2)
            eff = (1.0 + eps) * 1.0
            oracle_lo = float(np.max(ts - eff * dist))
            oracle_hi = float(np.min(ts + eff * dist))
            worst_oracle = max(
                worst_oracle,
                abs(approx_mcshane(problem, eps, x).value - oracle_lo),
                abs(approx_whitney(problem, eps, x).value - oracle_hi),
            )
        # empirical constant over 100 random query pairs
        pts = rng.uniform(-4, 4, (200, 2))
        vals = np.array([approx_mcshane(problem, eps, p).value for p in pts])
        worst_ratio = -math.inf
        for i in range(100):
            a, b = pts[2 * i], pts[2 * i + 1]
            d = float(np.linalg.norm(a - b))
            worst_ratio = max(worst_ratio, abs(vals[2 * i] - vals[2 * i + 1]) / d)
        ok = ok and worst_oracle <= 1e-4 and worst_ratio <= (1.0 + eps) * 1.0 + 1e-6
        details.append(f"eps={eps}: oracle={worst_oracle:.2e} ratio={worst_ratio:.4f}")
    # shift covariance, exact to 1e-12
    rngc = np.random.default_rng(81)
    worst_shift = -math.inf
    base = SubspaceProblem(NormedSpace(2, "l2"), [[1.0, 0.0]], lambda t: float(t[0]), 1.0)
    for _ in range(10):
        c = float(rngc.uniform(-5, 5))
        shifted = SubspaceProblem(
            NormedSpace(2, "l2"), [[1.0, 0.0]], lambda t, c=c: float(t[0]) + c, 1.0
        )
        x = rngc.uniform(-2, 2, 2)
        worst_shift = max(
            worst_shift,
            abs(approx_mcshane(shifted, 1.0, x).value - (approx_mcshane(base, 1.0, x).value + c)),
        )
    # per-query runtime at the default resolution
    x = np.array([0.0, 1.0])
    approx_mcshane(problem, 1.0, x)
    times = []
    for _ in range(10):
        t0 = time.perf_counter()
        approx_mcshane(problem, 1.0, x)
        times.append(time.perf_counter() - t0)
    per_query = min(times)
    ok = ok and worst_shift <= 1e-12 and per_query < 0.1
    _report(8, ok, "; ".join(details)
            + f"; shift={worst_shift:.2e}; query={per_query * 1e3:.2f} ms")


def test_09_norm_functional_extension():
    rng = np.random.default_rng(90)
    report = hahn_banach_like(NormedSpace(2, "l2"), [3.0, 4.0], grid=401, n_pairs=100, rng=rng)
    ok = (
        abs(report.upper_at_x0 - 5.0) <= 1e-12
        and abs(report.lower_at_x0 - 5.0) <= 1e-12
        and abs(report.empirical_constant - 1.0) <= 1e-9
        and report.subadditivity_violation <= report.grid_tolerance
        and report.superadditivity_violation <= report.grid_tolerance
        and report.pos_homogeneity_violation <= report.grid_tolerance
        and report.neg_homogeneity_violation <= report.grid_tolerance
    )
    _report(9, ok, f"upper(x0)={report.upper_at_x0!r} L={report.empirical_constant!r} "
                   f"sub={report.subadditivity_violation:.2e} tol={report.grid_tolerance:.3f}")


def test_10_differential_oracle():
    worst = -math.inf
    evaluations = 0
    for rng, (samples, sigma) in _instances(100, 100, sizes=(1, 2, 20, 50)):
        queries = rng.uniform(-6, 6, (50, samples.dimension))
        lo = extend_batch(ExtensionSpec(samples, sigma, "lower", check=False), queries)
        hi = extend_batch(ExtensionSpec(samples, sigma, "upper", check=False), queries)
        for q, a, b in zip(queries, lo, hi):
            worst = max(
                worst,
                abs(a - brute_force_extension_oracle(samples, sigma, q, "lower")),
                abs(b - brute_force_extension_oracle(samples, sigma, q, "upper")),
            )
            evaluations += 2
    _report(10, evaluations >= 10_000 and worst <= 1e-12,
            f"max |kernel - oracle| = {worst:.2e} over {evaluations} evaluations")


def test_11_hoelder_values_and_reduction():
    metric = MetricDescriptor("euclidean", 1)
    samples = SampleSet(metric, [[0.0], [1.0]], [0.0, 1.0])
    nu = HoelderModulus(1.0, 0.5)
    lower = float(nu_extend_batch(samples, nu, [[4.0]], "lower")[0])
    upper = float(nu_extend_batch(samples, nu, [[4.0]], "upper")[0])
    worst = -math.inf
    for rng, (inst, sigma) in _instances(110, 50, sizes=(2, 5, 20)):
        queries = rng.uniform(-6, 6, (20, inst.dimension))
        nu_lin = LinearModulus(sigma)
        worst = max(
            worst,
            float(np.max(np.abs(
                nu_extend_batch(inst, nu_lin, queries, "lower", check=False)
                - extend_batch(ExtensionSpec(inst, sigma, "lower", check=False), queries)))),
            float(np.max(np.abs(
                nu_extend_batch(inst, nu_lin, queries, "upper", check=False)
                - extend_batch(ExtensionSpec(inst, sigma, "upper", check=False), queries)))),
        )
    ok = (abs(lower - (1.0 - math.sqrt(3.0))) <= 1e-12
          and abs(upper - 2.0) <= 1e-12 and worst <= 1e-12)
    _report(11, ok, f"lower(4)={lower} upper(4)={upper} reduction gap={worst:.2e}")


def test_12_convexity_and_sublinearity_grid_scale():
    rng = np.random.default_rng(120)
    grid = np.linspace(-1.0, 1.0, 401).reshape(-1, 1)
    h = 2.0 / 400.0
    metric = MetricDescriptor("euclidean", 1)
    convex_vals = grid[:, 0] ** 2
    samples = SampleSet(metric, grid, convex_vals)
    sigma = lipschitz_constant(samples).max_ratio
    upper = ExtensionSpec(samples, sigma, "upper")
    sampler = lambda r: np.array([r.uniform(-1, 1)])
    viol_convex = convexity_check(lambda p: whitney_extend(upper, p), sampler, 100, rng, "convex")
    concave = ExtensionSpec(samples.with_values(-convex_vals), sigma, "lower")
    viol_concave = convexity_check(lambda p: mcshane_extend(concave, p), sampler, 100, rng, "concave")
    hb = hahn_banach_like(NormedSpace(2, "l2"), [3.0, 4.0], grid=401, n_pairs=100,
                          rng=np.random.default_rng(121))
    sublinearity = max(hb.subadditivity_violation, hb.superadditivity_violation)
    ok = (viol_convex <= 4 * h and viol_concave <= 4 * h
          and sublinearity <= hb.grid_tolerance)
    _report(12, ok, f"convex={viol_convex:.2e} concave={viol_concave:.2e} "
                    f"(cap {4 * h:.3f}); sublinear={sublinearity:.2e} (cap {hb.grid_tolerance:.3f})")
