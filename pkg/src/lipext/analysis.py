"""Empirical Lipschitz analysis of finite samples.

The Lipschitz constant of a finite sample is the maximum of the pairwise
difference ratios |g(x) - g(y)| / d(x, y) over all pairs at positive
distance; it is the least bound sigma for which the data is
sigma-Lipschitz. Everything here is a pure function of an immutable
:class:`~lipext.metrics.SampleSet`.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DataConflictError, DegenerateInputError
from .metrics import SampleSet, cross_distance


@dataclass(frozen=True)
class RatioReport:
    """Extremes of the pairwise difference ratios of a sample set.

    ``max_ratio`` is the empirical Lipschitz constant (least valid bound);
    ``min_ratio`` is the largest lower modulus (largest c with
    |dg| >= c * d on every pair). ``argmax_pair`` is the lowest-index pair
    attaining ``max_ratio``; ``pair_count`` counts pairs at positive
    distance.
    """

    max_ratio: float
    min_ratio: float
    argmax_pair: tuple[int, int]
    pair_count: int


def _pair_arrays(samples: SampleSet):
    """Index pairs (i<j) with their distances and absolute value gaps."""
    n = samples.n
    iu, ju = np.triu_indices(n, k=1)
    dmat = cross_distance(samples.metric, samples.points, samples.points)
    return iu, ju, dmat[iu, ju], np.abs(samples.values[iu] - samples.values[ju])


def pairwise_ratio(samples: SampleSet, i: int, j: int) -> float:
    """|values[i] - values[j]| / d(points[i], points[j]) for one pair.

    The pair must be at positive distance.
    """
    n = samples.n
    if not (0 <= i < n and 0 <= j < n):
        raise DegenerateInputError(f"pair ({i}, {j}) out of range for {n} samples")
    d = cross_distance(metric=samples.metric, X=samples.points[i][None, :],
                       Y=samples.points[j][None, :])[0, 0]
    if d == 0.0:
        raise DegenerateInputError(f"pair ({i}, {j}) is at zero distance")
    return float(abs(samples.values[i] - samples.values[j]) / d)


def lipschitz_constant(samples: SampleSet) -> RatioReport:
    """Scan all pairs and report the extreme difference ratios.

    Duplicated rows (zero distance, equal values) are skipped. Zero
    distance with differing values is a data error; a sample with no pair
    at positive distance has no ratios to report.
    """
    iu, ju, dist, gap = _pair_arrays(samples)
    zero = dist == 0.0
    conflict = zero & (gap > 0.0)
    if np.any(conflict):
        k = int(np.argmax(conflict))
        raise DataConflictError(
            f"points {int(iu[k])} and {int(ju[k])} coincide but carry different values",
            conflicts=[(int(iu[k]), int(ju[k]), 0.0, float(gap[k]))],
        )
    pos = ~zero
    if not np.any(pos):
        raise DegenerateInputError("need >= 2 distinct points")
    ratios = gap[pos] / dist[pos]
    k = int(np.argmax(ratios))  # first occurrence = lowest-index pair
    return RatioReport(
        max_ratio=float(ratios[k]),
        min_ratio=float(np.min(ratios)),
        argmax_pair=(int(iu[pos][k]), int(ju[pos][k])),
        pair_count=int(ratios.size),
    )


def is_lipschitz(samples: SampleSet, sigma: float, tol: float = 1e-9) -> bool:
    """True iff every pair satisfies |dvalue| <= sigma * d + tol."""
    if samples.n < 2:
        return True
    _, _, dist, gap = _pair_arrays(samples)
    return bool(np.all(gap <= sigma * dist + tol))
