"""Extremal Lipschitz extension kernels over a finite sample set.

Given samples (A, g) that are sigma-Lipschitz, the two extremal
sigma-Lipschitz extensions to arbitrary query points are

    lower(x) = max over a in A of  g(a) - sigma * d(x, a)
    upper(x) = min over a in A of  g(a) + sigma * d(x, a)

(lower is the least extension, upper the greatest; every sigma-Lipschitz
extension is sandwiched between them, and both agree with g on A). The
midpoint (lower + upper) / 2 is offered as a practical predictor; it
carries the same sigma bound as an average of two sigma-Lipschitz
functions, though only the two extremes are canonical.

Kernels are exact brute-force max/min over A, O(|A|) per query. All
specs are immutable and evaluation is pure, so query batches may be
processed concurrently with deterministic results.
"""
from __future__ import annotations

from dataclasses import InitVar, dataclass

import numpy as np

from .analysis import is_lipschitz, lipschitz_constant
from .errors import DegenerateInputError, SigmaTooSmallError
from .metrics import SampleSet, as_point, as_points, cross_distance

DEFAULT_TOL = 1e-9
SIDES = ("lower", "upper", "midpoint")


@dataclass(frozen=True, eq=False)
class ExtensionSpec:
    """A frozen extension problem: samples + sigma + which side to evaluate.

    Construction verifies that the samples are sigma-Lipschitz within
    ``tol`` (extending non-sigma-Lipschitz data would break every
    downstream guarantee). ``check=False`` skips the scan for callers that
    construct specs whose validity is already known, or deliberately out
    of contract (the density approximants do the latter).
    """

    samples: SampleSet
    sigma: float
    side: str = "midpoint"
    tol: float = DEFAULT_TOL
    check: InitVar[bool] = True

    def __post_init__(self, check):
        if self.side not in SIDES:
            raise DegenerateInputError(f"side must be one of {SIDES}, got {self.side!r}")
        if not np.isfinite(self.sigma) or self.sigma < 0:
            raise DegenerateInputError("sigma must be a finite nonnegative real")
        if check and not is_lipschitz(self.samples, self.sigma, self.tol):
            report = lipschitz_constant(self.samples)
            raise SigmaTooSmallError(
                f"samples have empirical Lipschitz constant {report.max_ratio:.17g} "
                f"> sigma {self.sigma:.17g} (worst pair {report.argmax_pair})",
                report=report,
            )


def _lower_values(samples: SampleSet, sigma: float, queries: np.ndarray) -> np.ndarray:
    dmat = cross_distance(samples.metric, queries, samples.points)
    return np.max(samples.values[None, :] - sigma * dmat, axis=1)


def _upper_values(samples: SampleSet, sigma: float, queries: np.ndarray) -> np.ndarray:
    dmat = cross_distance(samples.metric, queries, samples.points)
    return np.min(samples.values[None, :] + sigma * dmat, axis=1)


def mcshane_extend(spec: ExtensionSpec, x) -> float:
    """Evaluate the lower (sup-side) kernel at one point."""
    x = as_point(x, spec.samples.dimension)
    return float(_lower_values(spec.samples, spec.sigma, x[None, :])[0])


def whitney_extend(spec: ExtensionSpec, x) -> float:
    """Evaluate the upper (inf-side) kernel at one point."""
    x = as_point(x, spec.samples.dimension)
    return float(_upper_values(spec.samples, spec.sigma, x[None, :])[0])


def extend_batch(spec: ExtensionSpec, queries) -> np.ndarray:
    """Evaluate the spec's side at every query point (empty in, empty out)."""
    pts = as_points(queries, spec.samples.dimension)
    if pts.shape[0] == 0:
        return np.zeros(0)
    if spec.side == "lower":
        return _lower_values(spec.samples, spec.sigma, pts)
    if spec.side == "upper":
        return _upper_values(spec.samples, spec.sigma, pts)
    lower = _lower_values(spec.samples, spec.sigma, pts)
    upper = _upper_values(spec.samples, spec.sigma, pts)
    return 0.5 * (lower + upper)


def dist_to_set(samples: SampleSet, x) -> float:
    """min over a in A of d(x, a).

    Equals (upper extension of the constant-r samples at x minus r) / sigma
    for any r and sigma > 0; the property suite exercises that identity.
    """
    x = as_point(x, samples.dimension)
    return float(np.min(cross_distance(samples.metric, x[None, :], samples.points)))


def scale_extension(spec: ExtensionSpec, lam: float) -> ExtensionSpec:
    """The spec for lam * g: sigma scales by |lam|, lower/upper swap when lam < 0.

    Evaluating the returned spec equals lam times the evaluation of the
    original spec's appropriate side, pointwise. lam = 0 yields the
    constant-0 spec with sigma 0.
    """
    if not np.isfinite(lam):
        raise DegenerateInputError("lam must be finite")
    samples = spec.samples.with_values(lam * spec.samples.values)
    side = spec.side
    if lam < 0 and side != "midpoint":
        side = "upper" if side == "lower" else "lower"
    return ExtensionSpec(samples, abs(lam) * spec.sigma, side, spec.tol, check=False)


@dataclass(frozen=True)
class SumBoundReport:
    """Worst-case violations of the subadditivity bounds for extension sums."""

    max_violation: float
    lower_violation: float
    upper_violation: float
    tol: float

    @property
    def passed(self) -> bool:
        return self.max_violation <= self.tol


def extension_sum_bound_check(
    g1: ExtensionSpec, g2: ExtensionSpec, queries, tol: float = DEFAULT_TOL
) -> SumBoundReport:
    """Verify lower(g1+g2) <= lower(g1) + lower(g2) and the dual upper bound.

    g1 and g2 must share the same points and metric; the sum uses
    sigma1 + sigma2. Returns the largest signed violation found (negative
    means satisfied with margin).
    """
    s1, s2 = g1.samples, g2.samples
    if s1.metric != s2.metric or s1.points.shape != s2.points.shape or not np.array_equal(
        s1.points, s2.points
    ):
        raise DegenerateInputError("sum bound check needs identical point sets")
    pts = as_points(queries, s1.dimension)
    sum_samples = s1.with_values(s1.values + s2.values)
    sigma_sum = g1.sigma + g2.sigma
    lower_sum = _lower_values(sum_samples, sigma_sum, pts)
    upper_sum = _upper_values(sum_samples, sigma_sum, pts)
    lower_split = _lower_values(s1, g1.sigma, pts) + _lower_values(s2, g2.sigma, pts)
    upper_split = _upper_values(s1, g1.sigma, pts) + _upper_values(s2, g2.sigma, pts)
    lower_violation = float(np.max(lower_sum - lower_split, initial=-np.inf))
    upper_violation = float(np.max(upper_split - upper_sum, initial=-np.inf))
    return SumBoundReport(
        max_violation=max(lower_violation, upper_violation),
        lower_violation=lower_violation,
        upper_violation=upper_violation,
        tol=tol,
    )


def step_extend(
    samples_a: SampleSet,
    points_b,
    sigma: float,
    queries,
    side: str = "lower",
    tol: float = DEFAULT_TOL,
):
    """Extend A to the queries directly, and via the intermediate superset B.

    Returns (direct, staged); the two agree up to floating-point noise
    because extending in stages through any superset of A reproduces the
    one-shot extension. B must contain every point of A (by coordinates).
    """
    if side not in ("lower", "upper"):
        raise DegenerateInputError("staged extension is defined for the lower/upper kernels")
    bpts = as_points(points_b, samples_a.dimension)
    present = (bpts[None, :, :] == samples_a.points[:, None, :]).all(-1).any(1)
    if not bool(present.all()):
        missing = int(np.argmin(present))
        raise DegenerateInputError(
            f"intermediate set must contain every base point (missing index {missing})"
        )
    spec_a = ExtensionSpec(samples_a, sigma, side, tol)
    direct = extend_batch(spec_a, queries)
    b_values = extend_batch(spec_a, bpts)
    # the staged values are sigma-Lipschitz by construction; skip the rescan
    spec_b = ExtensionSpec(
        SampleSet(samples_a.metric, bpts, b_values), sigma, side, tol, check=False
    )
    staged = extend_batch(spec_b, queries)
    return direct, staged
