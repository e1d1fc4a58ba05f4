"""Lipschitz approximants to uniformly continuous functions on finite samples.

Given f with a modulus of uniform continuity omega (d <= omega(eps)
forces |df| <= eps) and a bound M >= |f|, the choice

    sigma = 2 * M / omega(eps)

makes the two extremal kernels of the sampled graph of f an eps-tight
Lipschitz sandwich:

    f - eps <= minorant <= f <= majorant <= f + eps

where minorant(x) = min_y f(y) + sigma d(x, y) (the greatest
sigma-Lipschitz function below f) and majorant(x) = max_y f(y) - sigma
d(x, y) (the least one above). Note the kernel roles flip relative to the
extension setting: because f itself need not be sigma-Lipschitz, the
inf-side formula lands *below* f and the sup-side formula above it.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

import numpy as np

from .errors import BoundViolationError, DegenerateInputError, ParseError
from .extension import ExtensionSpec, extend_batch
from .metrics import MetricDescriptor, SampleSet, as_points, cross_distance


@dataclass(frozen=True)
class UCFunction:
    """A black-box uniformly continuous function with certified omega and bound.

    ``evaluator`` maps a coordinate vector to a real; ``omega`` maps
    eps > 0 to a positive delta; ``bound`` is a positive M with |f| <= M
    on the intended domain. Both omega and the bound are taken as given
    data, never inferred.
    """

    evaluator: Callable
    omega: Callable
    bound: float

    def __post_init__(self):
        if not np.isfinite(self.bound) or self.bound <= 0:
            raise DegenerateInputError("bound must be a positive real")


def density_sigma(f: UCFunction, epsilon: float) -> float:
    """The Lipschitz budget 2 * bound / omega(eps) for accuracy eps."""
    if not np.isfinite(epsilon) or epsilon <= 0:
        raise DegenerateInputError("epsilon must be positive")
    delta = float(f.omega(epsilon))
    if not np.isfinite(delta) or delta <= 0:
        raise DegenerateInputError(f"omega({epsilon:g}) = {delta:g} is not positive")
    return 2.0 * f.bound / delta


def evaluate_on(f: UCFunction, points) -> np.ndarray:
    """f at every row of ``points``, validating the declared bound.

    A sample exceeding the bound aborts (no clamping): sigma depends on
    the bound, so a violated bound voids the sandwich guarantee.
    """
    pts = np.asarray(points, dtype=float)
    values = np.array([float(f.evaluator(p)) for p in pts])
    if not np.all(np.isfinite(values)):
        raise BoundViolationError("function evaluated to a non-finite value")
    worst = float(np.max(np.abs(values), initial=0.0))
    if worst > f.bound:
        k = int(np.argmax(np.abs(values)))
        raise BoundViolationError(
            f"|f| = {worst:.6g} at sample {k} exceeds the declared bound {f.bound:.6g}"
        )
    return values


def lipschitz_approximate(
    f: UCFunction, sample_points, metric: MetricDescriptor, epsilon: float
) -> tuple[ExtensionSpec, ExtensionSpec]:
    """Build the (minorant, majorant) specs for f on the given sample points.

    The minorant is the inf-side kernel, the majorant the sup-side one;
    both use sigma = density_sigma(f, epsilon). The specs bypass the
    sigma-Lipschitz construction check on purpose: the sampled f need not
    be sigma-Lipschitz, and the sandwich holds regardless.
    """
    pts = as_points(sample_points, metric.dimension)
    if pts.shape[0] == 0:
        raise DegenerateInputError("need at least one sample point")
    values = evaluate_on(f, pts)
    sigma = density_sigma(f, epsilon)
    samples = SampleSet(metric, pts, values)
    minorant = ExtensionSpec(samples, sigma, side="upper", check=False)
    majorant = ExtensionSpec(samples, sigma, side="lower", check=False)
    return minorant, majorant


@dataclass(frozen=True)
class SandwichReport:
    """Worst signed violations of f - eps <= minorant <= f <= majorant <= f + eps."""

    below_floor: float   # (f - eps) - minorant
    minorant_over_f: float
    f_over_majorant: float
    above_ceiling: float  # majorant - (f + eps)
    tol: float

    @property
    def max_violation(self) -> float:
        return max(self.below_floor, self.minorant_over_f, self.f_over_majorant, self.above_ceiling)

    @property
    def passed(self) -> bool:
        return self.max_violation <= self.tol


def sandwich_margins(
    f_values, minorant_values, majorant_values, epsilon: float, tol: float = 1e-9
) -> SandwichReport:
    """Compare pointwise evaluations of f and the two approximants."""
    fv = np.asarray(f_values, dtype=float)
    lo = np.asarray(minorant_values, dtype=float)
    hi = np.asarray(majorant_values, dtype=float)
    return SandwichReport(
        below_floor=float(np.max((fv - epsilon) - lo, initial=-np.inf)),
        minorant_over_f=float(np.max(lo - fv, initial=-np.inf)),
        f_over_majorant=float(np.max(fv - hi, initial=-np.inf)),
        above_ceiling=float(np.max(hi - (fv + epsilon), initial=-np.inf)),
        tol=tol,
    )


@dataclass(frozen=True)
class ExtremalityReport:
    """Per-candidate outcome of the extremality comparison."""

    entries: tuple  # (index, applies_below, applies_above, violation)
    max_violation: float
    tol: float

    @property
    def passed(self) -> bool:
        return self.max_violation <= self.tol


def extremality_check(
    f: UCFunction,
    minorant: ExtensionSpec,
    majorant: ExtensionSpec,
    candidates,
    extra_points=None,
    tol: float = 1e-9,
) -> ExtremalityReport:
    """Verify the minorant majorizes, and the majorant minorizes, eligible candidates.

    A candidate spec e (sigma-Lipschitz over the same points) with
    e <= f at every sample must satisfy e <= minorant everywhere checked;
    dually, f <= e forces majorant <= e.
    """
    pts = minorant.samples.points
    if extra_points is not None:
        extra = as_points(extra_points, minorant.samples.dimension)
        pts = np.vstack([pts, extra]) if extra.shape[0] else pts
    f_at_samples = evaluate_on(f, minorant.samples.points)
    lo_vals = extend_batch(minorant, pts)
    hi_vals = extend_batch(majorant, pts)
    entries = []
    worst = -math.inf
    for idx, cand in enumerate(candidates):
        cand_at_samples = extend_batch(cand, minorant.samples.points)
        cand_vals = extend_batch(cand, pts)
        applies_below = bool(np.all(cand_at_samples <= f_at_samples + tol))
        applies_above = bool(np.all(cand_at_samples >= f_at_samples - tol))
        violation = -math.inf
        if applies_below:
            violation = max(violation, float(np.max(cand_vals - lo_vals)))
        if applies_above:
            violation = max(violation, float(np.max(hi_vals - cand_vals)))
        entries.append((idx, applies_below, applies_above, violation))
        worst = max(worst, violation)
    return ExtremalityReport(tuple(entries), worst, tol)


def empirical_modulus(samples: SampleSet) -> Callable:
    """Estimate a modulus of uniform continuity from sampled data.

    NOT certified: it only reflects the pairs present in the samples and
    can be arbitrarily wrong off-sample. Returned omega(eps) is the
    smallest pairwise distance whose value gap exceeds eps (or the
    diameter if none does).
    """
    dmat = cross_distance(samples.metric, samples.points, samples.points)
    iu, ju = np.triu_indices(samples.n, k=1)
    dist = dmat[iu, ju]
    gap = np.abs(samples.values[iu] - samples.values[ju])
    pos = dist > 0
    dist, gap = dist[pos], gap[pos]
    fallback = float(np.max(dist, initial=1.0))

    def omega(eps: float) -> float:
        over = dist[gap > eps]
        if over.size == 0:
            return fallback
        return float(np.min(over))

    return omega


def _poly_function(coeffs, interval) -> UCFunction:
    coeffs = [float(c) for c in coeffs]
    a, b = interval
    radius = max(abs(a), abs(b))
    bound = sum(abs(c) * radius**i for i, c in enumerate(coeffs))
    slope = sum(i * abs(c) * radius ** (i - 1) for i, c in enumerate(coeffs) if i >= 1)

    def evaluator(p):
        x = float(np.atleast_1d(p)[0])
        acc = 0.0
        for c in reversed(coeffs):
            acc = acc * x + c
        return acc

    if slope == 0.0:
        return UCFunction(evaluator, lambda eps: 1.0, max(bound, 1.0))
    return UCFunction(evaluator, lambda eps: eps / slope, max(bound, 1e-12))


def builtin_function(spec: str, interval: tuple[float, float]) -> UCFunction:
    """The CLI's table of functions with known (omega, bound) on an interval.

    ``sqrt`` uses omega(eps) = eps**2 (valid on [0, inf)); ``abs`` and
    ``sin`` are 1-Lipschitz; ``poly:c0,c1,...`` derives certified bounds
    from its coefficients.
    """
    a, b = float(interval[0]), float(interval[1])
    if not (np.isfinite(a) and np.isfinite(b)) or a >= b:
        raise DegenerateInputError("interval must be a finite [a, b] with a < b")
    name = spec.strip()
    if name == "sqrt":
        if a < 0:
            raise DegenerateInputError("sqrt needs a nonnegative interval")
        return UCFunction(
            lambda p: math.sqrt(float(np.atleast_1d(p)[0])),
            lambda eps: eps * eps,
            max(math.sqrt(b), 1e-12),
        )
    if name == "abs":
        return UCFunction(
            lambda p: abs(float(np.atleast_1d(p)[0])),
            lambda eps: eps,
            max(abs(a), abs(b), 1e-12),
        )
    if name == "sin":
        return UCFunction(
            lambda p: math.sin(float(np.atleast_1d(p)[0])),
            lambda eps: eps,
            1.0,
        )
    if name.startswith("poly:"):
        try:
            coeffs = [float(c) for c in name.split(":", 1)[1].split(",")]
        except ValueError:
            raise ParseError(f"bad polynomial coefficients in {spec!r}") from None
        return _poly_function(coeffs, (a, b))
    raise ParseError(f"unknown function spec {spec!r} (try sqrt, abs, sin, poly:...)")


def sampled_function(xs, ys, omega: Callable, bound: float) -> UCFunction:
    """A 1-D function given by samples, interpolated linearly; omega and bound are the caller's claim."""
    xs = np.asarray(xs, dtype=float).ravel()
    ys = np.asarray(ys, dtype=float).ravel()
    if xs.size < 2 or xs.size != ys.size:
        raise DegenerateInputError("need matching x/y samples, at least two")
    order = np.argsort(xs)
    xs, ys = xs[order], ys[order]
    return UCFunction(
        lambda p: float(np.interp(float(np.atleast_1d(p)[0]), xs, ys)),
        omega,
        float(bound),
    )


def parse_omega(spec: str) -> Callable:
    """Parse an omega spec: ``linear:C`` (C * eps) or ``power:C:K`` (C * eps**K)."""
    head, _, rest = spec.strip().partition(":")
    try:
        if head == "linear":
            c = float(rest)
            if c <= 0:
                raise ValueError("coefficient must be positive")
            return lambda eps: c * eps
        if head == "power":
            c_text, _, k_text = rest.partition(":")
            c, k = float(c_text), float(k_text)
            if c <= 0 or k <= 0:
                raise ValueError("coefficient and exponent must be positive")
            return lambda eps: c * eps**k
    except ValueError as exc:
        raise ParseError(f"bad omega spec {spec!r}: {exc}") from None
    raise ParseError(f"unknown omega kind in {spec!r} (try linear:C or power:C:K)")
