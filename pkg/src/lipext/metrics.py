"""Points, metric descriptors, and finite sample sets.

Every downstream kernel measures distances through these helpers. All
objects are immutable after construction (arrays are frozen), so they can
be shared between threads without synchronization.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DegenerateInputError, DimensionMismatchError, ParseError

METRIC_KINDS = ("euclidean", "manhattan", "chebyshev", "p_norm", "discrete")


def as_point(x, dimension=None) -> np.ndarray:
    """Coerce ``x`` to a flat float coordinate vector.

    Scalars are accepted as one-dimensional points. Non-finite coordinates
    are rejected.
    """
    arr = np.atleast_1d(np.asarray(x, dtype=float))
    if arr.ndim != 1:
        raise DimensionMismatchError("a point is a flat coordinate vector")
    if dimension is not None and arr.shape[0] != dimension:
        raise DimensionMismatchError(
            f"expected {dimension} coordinates, got {arr.shape[0]}"
        )
    if not np.all(np.isfinite(arr)):
        raise DegenerateInputError("point has non-finite coordinates")
    return arr


def as_points(points, dimension=None) -> np.ndarray:
    """Coerce ``points`` to an (n, d) float array.

    A one-dimensional input of length n is read as n points on the line.
    A single d-dimensional point must therefore be passed as ``[point]``.
    """
    arr = np.array(points, dtype=float)
    if arr.ndim == 0:
        arr = arr.reshape(1, 1)
    elif arr.ndim == 1:
        arr = arr.reshape(-1, 1)
    if arr.ndim != 2:
        raise DimensionMismatchError("point array must be 1- or 2-dimensional")
    if dimension is not None:
        if arr.shape[0] == 0:
            arr = arr.reshape(0, dimension)
        elif arr.shape[1] != dimension:
            raise DimensionMismatchError(
                f"expected {dimension}-dimensional points, got {arr.shape[1]}"
            )
    if arr.size and not np.all(np.isfinite(arr)):
        raise DegenerateInputError("points must have finite coordinates")
    return arr


@dataclass(frozen=True)
class MetricDescriptor:
    """Which distance governs a point set, plus the ambient dimension."""

    kind: str
    dimension: int
    p: float | None = None

    def __post_init__(self):
        if self.kind not in METRIC_KINDS:
            raise DegenerateInputError(f"unknown metric kind {self.kind!r}")
        if int(self.dimension) != self.dimension or self.dimension < 1:
            raise DegenerateInputError("dimension must be a positive integer")
        if self.kind == "p_norm":
            if self.p is None or not np.isfinite(self.p) or self.p < 1:
                raise DegenerateInputError("p_norm requires a finite p >= 1")
        elif self.p is not None:
            raise DegenerateInputError(f"p only applies to p_norm, not {self.kind!r}")


def parse_metric(spec: str, dimension: int) -> MetricDescriptor:
    """Parse a metric spec string: euclidean|manhattan|chebyshev|discrete|pnorm:P."""
    name = spec.strip().lower()
    if name in ("euclidean", "manhattan", "chebyshev", "discrete"):
        return MetricDescriptor(name, dimension)
    if name.startswith("pnorm:"):
        try:
            p = float(name.split(":", 1)[1])
        except ValueError:
            raise ParseError(f"bad p value in metric spec {spec!r}") from None
        return MetricDescriptor("p_norm", dimension, p=p)
    raise ParseError(f"unknown metric {spec!r}")


def metric_spec_string(metric: MetricDescriptor) -> str:
    """Inverse of :func:`parse_metric` (CLI round-tripping)."""
    if metric.kind == "p_norm":
        return f"pnorm:{metric.p:g}"
    return metric.kind


def cross_distance(metric: MetricDescriptor, X, Y) -> np.ndarray:
    """All pairwise distances between the rows of X and of Y, shape (len(X), len(Y))."""
    X = as_points(X, metric.dimension)
    Y = as_points(Y, metric.dimension)
    if X.shape[0] == 0 or Y.shape[0] == 0:
        return np.zeros((X.shape[0], Y.shape[0]))
    if metric.kind == "discrete":
        equal = np.all(X[:, None, :] == Y[None, :, :], axis=-1)
        return np.where(equal, 0.0, 1.0)
    diff = X[:, None, :] - Y[None, :, :]
    if metric.kind == "euclidean":
        return np.sqrt(np.sum(diff * diff, axis=-1))
    if metric.kind == "manhattan":
        return np.sum(np.abs(diff), axis=-1)
    if metric.kind == "chebyshev":
        return np.max(np.abs(diff), axis=-1)
    return np.sum(np.abs(diff) ** metric.p, axis=-1) ** (1.0 / metric.p)


def distance(metric: MetricDescriptor, x, y) -> float:
    """d(x, y) for a single pair of points."""
    x = as_point(x, metric.dimension)
    y = as_point(y, metric.dimension)
    return float(cross_distance(metric, x[None, :], y[None, :])[0, 0])


def diameter(metric: MetricDescriptor, points) -> float:
    """Largest pairwise distance among the given points (0 for a single point)."""
    pts = as_points(points, metric.dimension)
    if pts.shape[0] < 2:
        return 0.0
    return float(np.max(cross_distance(metric, pts, pts)))


@dataclass(frozen=True, eq=False)
class SampleSet:
    """A finite metric space with attached real values: the data every kernel extends.

    Invariants enforced at construction: points and values have equal,
    nonzero length; all entries are finite. Conflicting values at
    coincident points are *reported* by :func:`dedup_check` rather than
    rejected here, so ingestion can surface an actionable report.
    """

    metric: MetricDescriptor
    points: np.ndarray
    values: np.ndarray

    def __post_init__(self):
        pts = as_points(self.points, self.metric.dimension)
        vals = np.array(self.values, dtype=float)
        if vals.ndim != 1:
            raise DegenerateInputError("values must be a flat vector")
        if pts.shape[0] == 0:
            raise DegenerateInputError("sample set needs at least one point")
        if pts.shape[0] != vals.shape[0]:
            raise DegenerateInputError(
                f"{pts.shape[0]} points but {vals.shape[0]} values"
            )
        if not np.all(np.isfinite(vals)):
            raise DegenerateInputError("values must be finite")
        pts.setflags(write=False)
        vals.setflags(write=False)
        object.__setattr__(self, "points", pts)
        object.__setattr__(self, "values", vals)

    @property
    def n(self) -> int:
        return self.points.shape[0]

    @property
    def dimension(self) -> int:
        return self.points.shape[1]

    def with_values(self, values) -> "SampleSet":
        """Same points and metric, new values."""
        return SampleSet(self.metric, self.points, values)


@dataclass(frozen=True)
class DedupReport:
    """Pairs at (near-)zero distance whose values disagree beyond tolerance."""

    conflicts: tuple
    tol: float

    @property
    def ok(self) -> bool:
        return not self.conflicts

    def summary(self) -> str:
        if self.ok:
            return "ok"
        lines = [f"{len(self.conflicts)} conflicting pair(s) at tol {self.tol:g}:"]
        for i, j, dist, gap in self.conflicts:
            lines.append(f"  pair ({i}, {j}): distance {dist:.6g}, value gap {gap:.6g}")
        return "\n".join(lines)


def dedup_check(samples: SampleSet, tol: float = 1e-9) -> DedupReport:
    """Report all pairs with d <= tol but |value difference| > tol (non-function data)."""
    n = samples.n
    if n < 2:
        return DedupReport((), tol)
    dmat = cross_distance(samples.metric, samples.points, samples.points)
    iu, ju = np.triu_indices(n, k=1)
    dist = dmat[iu, ju]
    gap = np.abs(samples.values[iu] - samples.values[ju])
    bad = (dist <= tol) & (gap > tol)
    conflicts = tuple(
        (int(i), int(j), float(d), float(g))
        for i, j, d, g in zip(iu[bad], ju[bad], dist[bad], gap[bad])
    )
    return DedupReport(conflicts, tol)
