"""Moduli of continuity and the generalized extension kernels they drive.

A modulus of continuity nu maps [0, inf) to [0, inf) with nu(0) = 0, is
subadditive, and strictly increasing. Data bounded by |dg| <= nu(d) on
every pair extends through

    lower(x) = max over a of  g(a) - nu(d(x, a))
    upper(x) = min over a of  g(a) + nu(d(x, a))

with the same agreement/sandwich structure as the linear (Lipschitz)
case. ``linear:sigma`` reproduces the Lipschitz kernels exactly;
``hoelder:sigma:alpha`` covers Hoelder continuity of order alpha.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DegenerateInputError, ParseError
from .metrics import SampleSet, as_point, as_points, cross_distance

_SUBADD_TOL = 1e-12


class ModulusOfContinuity:
    """Base class; subclasses implement vectorized evaluation on t >= 0."""

    def __call__(self, t):
        raise NotImplementedError

    def spec_string(self) -> str:
        raise NotImplementedError


@dataclass(frozen=True)
class LinearModulus(ModulusOfContinuity):
    """nu(t) = sigma * t; membership is exactly sigma-Lipschitz continuity."""

    sigma: float

    def __post_init__(self):
        if not np.isfinite(self.sigma) or self.sigma < 0:
            raise DegenerateInputError("linear modulus needs sigma >= 0")

    def __call__(self, t):
        return self.sigma * np.asarray(t, dtype=float)

    def spec_string(self) -> str:
        return f"linear:{self.sigma:.17g}"


@dataclass(frozen=True)
class HoelderModulus(ModulusOfContinuity):
    """nu(t) = sigma * t**alpha with alpha in (0, 1]; concave, hence subadditive."""

    sigma: float
    alpha: float

    def __post_init__(self):
        if not np.isfinite(self.sigma) or self.sigma < 0:
            raise DegenerateInputError("hoelder modulus needs sigma >= 0")
        if not np.isfinite(self.alpha) or not (0.0 < self.alpha <= 1.0):
            raise DegenerateInputError("hoelder modulus needs alpha in (0, 1]")

    def __call__(self, t):
        return self.sigma * np.asarray(t, dtype=float) ** self.alpha

    def spec_string(self) -> str:
        return f"hoelder:{self.sigma:.17g}:{self.alpha:.17g}"


@dataclass(frozen=True, eq=False)
class PiecewiseLinearModulus(ModulusOfContinuity):
    """Concave piecewise-linear modulus through (0, 0) and the given breakpoints.

    Breakpoints must be strictly increasing in both coordinates with
    non-increasing, strictly positive slopes (concavity plus nu(0) = 0
    guarantees subadditivity). Beyond the last breakpoint the last slope
    continues.
    """

    breakpoints: tuple

    def __post_init__(self):
        pts = [(float(t), float(v)) for t, v in self.breakpoints]
        if not pts:
            raise DegenerateInputError("need at least one breakpoint")
        ts = np.array([0.0] + [t for t, _ in pts])
        vs = np.array([0.0] + [v for _, v in pts])
        if np.any(np.diff(ts) <= 0):
            raise DegenerateInputError("breakpoint abscissae must be strictly increasing from 0")
        slopes = np.diff(vs) / np.diff(ts)
        if np.any(slopes <= 0):
            raise DegenerateInputError("modulus must be strictly increasing (positive slopes)")
        if np.any(np.diff(slopes) > 1e-12):
            raise DegenerateInputError("breakpoints must be concave (non-increasing slopes)")
        object.__setattr__(self, "breakpoints", tuple(pts))
        object.__setattr__(self, "_ts", ts)
        object.__setattr__(self, "_vs", vs)
        object.__setattr__(self, "_last_slope", float(slopes[-1]))

    def __call__(self, t):
        t = np.asarray(t, dtype=float)
        inside = np.interp(t, self._ts, self._vs)
        beyond = self._vs[-1] + self._last_slope * (t - self._ts[-1])
        return np.where(t > self._ts[-1], beyond, inside)

    def spec_string(self) -> str:
        return "pwl:" + ";".join(f"{t:.17g},{v:.17g}" for t, v in self.breakpoints)


def parse_modulus(spec: str) -> ModulusOfContinuity:
    """Parse ``linear:SIGMA``, ``hoelder:SIGMA:ALPHA``, or ``pwl:t1,v1;t2,v2;...``."""
    text = spec.strip()
    head, _, rest = text.partition(":")
    try:
        if head == "linear":
            return LinearModulus(float(rest))
        if head == "hoelder":
            sig, _, alpha = rest.partition(":")
            return HoelderModulus(float(sig), float(alpha))
        if head == "pwl":
            pairs = []
            for chunk in rest.split(";"):
                t, _, v = chunk.partition(",")
                pairs.append((float(t), float(v)))
            return PiecewiseLinearModulus(tuple(pairs))
    except (ValueError, DegenerateInputError) as exc:
        raise ParseError(f"bad modulus spec {spec!r}: {exc}") from None
    raise ParseError(f"unknown modulus kind in {spec!r}")


@dataclass(frozen=True)
class ModulusValidationReport:
    """Sampled verification of the modulus axioms on a grid."""

    ok: bool
    violations: tuple
    grid_max: float
    grid_steps: int


def validate_modulus(
    nu: ModulusOfContinuity, grid_max: float, grid_steps: int = 1024
) -> ModulusValidationReport:
    """Check nu(0) = 0, strict increase, subadditivity, and bounded increments on a grid.

    Uniform continuity is checked in its practical surrogate form
    nu(t + h) - nu(t) <= nu(h), which subadditivity implies.
    """
    if grid_max <= 0 or grid_steps < 2:
        raise DegenerateInputError("need grid_max > 0 and grid_steps >= 2")
    violations = []
    ts = np.linspace(0.0, grid_max, grid_steps)
    vs = np.asarray(nu(ts), dtype=float)
    v0 = float(nu(0.0))
    if abs(v0) > 1e-15:
        violations.append(("zero", f"nu(0) = {v0:.6g} != 0"))
    if np.any(~np.isfinite(vs)) or np.any(vs < 0):
        violations.append(("range", "nu must take finite nonnegative values"))
    inc = np.diff(vs)
    if np.any(inc <= 0):
        k = int(np.argmax(inc <= 0))
        violations.append(
            ("strict_increase", f"nu({ts[k]:.6g}) >= nu({ts[k + 1]:.6g})")
        )
    if np.all(np.isfinite(vs)):
        # subadditivity over all grid pairs: nu(s + t) <= nu(s) + nu(t)
        sums = ts[:, None] + ts[None, :]
        lhs = np.asarray(nu(sums), dtype=float)
        excess = lhs - (vs[:, None] + vs[None, :])
        worst = float(np.max(excess))
        if worst > _SUBADD_TOL:
            i, j = np.unravel_index(int(np.argmax(excess)), excess.shape)
            violations.append(
                ("subadditive", f"nu({ts[i]:.6g} + {ts[j]:.6g}) exceeds the sum by {worst:.3g}")
            )
        h = ts[1]
        step_excess = np.asarray(nu(ts + h), dtype=float) - vs - float(nu(h))
        if np.max(step_excess) > _SUBADD_TOL:
            violations.append(("increment", "nu(t + h) - nu(t) > nu(h) on the grid"))
    return ModulusValidationReport(
        ok=not violations,
        violations=tuple(violations),
        grid_max=float(grid_max),
        grid_steps=int(grid_steps),
    )


def is_nu_continuous(samples: SampleSet, nu: ModulusOfContinuity, tol: float = 1e-9) -> bool:
    """True iff every pair satisfies |dvalue| <= nu(d) + tol."""
    if samples.n < 2:
        return True
    dmat = cross_distance(samples.metric, samples.points, samples.points)
    iu, ju = np.triu_indices(samples.n, k=1)
    gap = np.abs(samples.values[iu] - samples.values[ju])
    return bool(np.all(gap <= np.asarray(nu(dmat[iu, ju]), dtype=float) + tol))


def _require_membership(samples, nu, tol):
    if not is_nu_continuous(samples, nu, tol):
        raise DegenerateInputError(
            "samples violate the modulus bound |dvalue| <= nu(d); cannot extend"
        )


def nu_extend_batch(
    samples: SampleSet,
    nu: ModulusOfContinuity,
    queries,
    side: str = "midpoint",
    tol: float = 1e-9,
    check: bool = True,
) -> np.ndarray:
    """Evaluate the nu-kernels at every query; midpoint averages the two sides."""
    if side not in ("lower", "upper", "midpoint"):
        raise DegenerateInputError(f"unknown side {side!r}")
    if check:
        _require_membership(samples, nu, tol)
    pts = as_points(queries, samples.dimension)
    if pts.shape[0] == 0:
        return np.zeros(0)
    nu_d = np.asarray(nu(cross_distance(samples.metric, pts, samples.points)), dtype=float)
    if side == "lower":
        return np.max(samples.values[None, :] - nu_d, axis=1)
    if side == "upper":
        return np.min(samples.values[None, :] + nu_d, axis=1)
    lower = np.max(samples.values[None, :] - nu_d, axis=1)
    upper = np.min(samples.values[None, :] + nu_d, axis=1)
    return 0.5 * (lower + upper)


def nu_extend_lower(
    samples: SampleSet, nu: ModulusOfContinuity, x, tol: float = 1e-9, check: bool = True
) -> float:
    """max over a of g(a) - nu(d(x, a)); agrees with g on the samples."""
    x = as_point(x, samples.dimension)
    return float(nu_extend_batch(samples, nu, x[None, :], "lower", tol, check)[0])


def nu_extend_upper(
    samples: SampleSet, nu: ModulusOfContinuity, x, tol: float = 1e-9, check: bool = True
) -> float:
    """min over a of g(a) + nu(d(x, a)); dual of :func:`nu_extend_lower`."""
    x = as_point(x, samples.dimension)
    return float(nu_extend_batch(samples, nu, x[None, :], "upper", tol, check)[0])
