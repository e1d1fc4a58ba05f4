"""Extensions from linear subspaces of a normed space.

A sigma-Lipschitz g on a finite-dimensional subspace A extends to a
(1 + eps) * sigma-Lipschitz function on the whole space, for any eps > 0,
by optimizing

    phi(a) = g(a) - (1 + eps) * sigma * ||a - x||      (sup  -> lower value)
    theta(a) = g(a) + (1 + eps) * sigma * ||x - a||    (inf  -> upper value)

over the ball K_r = {a in A : ||a|| <= r} with r = 2 * (1 + eps) / eps *
||x||: outside that ball the objective can never beat its value at the
origin (after normalizing g(0) to 0), so the compact ball carries the
whole optimum. The continuum sup/inf is realized as a uniform grid search
in orthonormal subspace coordinates followed by local refinement rounds
around the incumbent.

Accuracy: the initial grid alone certifies
|grid opt - true opt| <= (sigma + (1 + eps) * sigma) * h * sqrt(dim A)
with h the grid spacing, from the Lipschitz constant of the objective.
When refinement brackets the optimum (always for unimodal objectives,
e.g. linear g), the same bound holds with the final spacing.
"""
from __future__ import annotations

import json
import math
from dataclasses import dataclass
from pathlib import Path
from typing import Callable

import numpy as np

from .analysis import lipschitz_constant
from .errors import DegenerateInputError, ParseError, SigmaTooSmallError
from .extension import DEFAULT_TOL, ExtensionSpec, extend_batch
from .metrics import MetricDescriptor, SampleSet, as_point

NORM_KINDS = ("l2", "l1", "linf", "p_norm")
_METRIC_FOR_NORM = {"l2": "euclidean", "l1": "manhattan", "linf": "chebyshev", "p_norm": "p_norm"}


@dataclass(frozen=True)
class NormedSpace:
    """R^dimension with one of the standard norms."""

    dimension: int
    kind: str = "l2"
    p: float | None = None

    def __post_init__(self):
        if self.kind not in NORM_KINDS:
            raise DegenerateInputError(f"unknown norm kind {self.kind!r}")
        if int(self.dimension) != self.dimension or self.dimension < 1:
            raise DegenerateInputError("dimension must be a positive integer")
        if self.kind == "p_norm":
            if self.p is None or not np.isfinite(self.p) or self.p < 1:
                raise DegenerateInputError("p_norm requires a finite p >= 1")
        elif self.p is not None:
            raise DegenerateInputError(f"p only applies to p_norm, not {self.kind!r}")

    def as_metric(self) -> MetricDescriptor:
        return MetricDescriptor(_METRIC_FOR_NORM[self.kind], self.dimension, p=self.p)

    def norms(self, X) -> np.ndarray:
        """Row-wise norms of an (m, dimension) array."""
        X = np.asarray(X, dtype=float)
        if X.ndim == 1:
            X = X[None, :]
        if self.kind == "l2":
            return np.sqrt(np.sum(X * X, axis=-1))
        if self.kind == "l1":
            return np.sum(np.abs(X), axis=-1)
        if self.kind == "linf":
            return np.max(np.abs(X), axis=-1)
        return np.sum(np.abs(X) ** self.p, axis=-1) ** (1.0 / self.p)

    def norm(self, x) -> float:
        return float(self.norms(as_point(x, self.dimension))[0])


def parse_norm(spec: str, dimension: int) -> NormedSpace:
    """Parse l2|l1|linf|pnorm:P into a NormedSpace."""
    name = spec.strip().lower()
    if name in ("l2", "l1", "linf"):
        return NormedSpace(dimension, name)
    if name.startswith("pnorm:"):
        try:
            p = float(name.split(":", 1)[1])
        except ValueError:
            raise ParseError(f"bad p value in norm spec {spec!r}") from None
        return NormedSpace(dimension, "p_norm", p=p)
    raise ParseError(f"unknown norm {spec!r}")


def _orthonormalize(basis: np.ndarray) -> np.ndarray:
    """Stabilized (twice-through) Gram-Schmidt; rows come back orthonormal in l2."""
    q = basis.astype(float).copy()
    for i in range(q.shape[0]):
        for _ in range(2):
            for j in range(i):
                q[i] -= (q[i] @ q[j]) * q[j]
        norm = float(np.linalg.norm(q[i]))
        if norm < 1e-12 * max(1.0, float(np.linalg.norm(basis[i]))):
            raise DegenerateInputError("basis vectors are linearly dependent")
        q[i] /= norm
    return q


@dataclass(frozen=True, eq=False)
class SubspaceProblem:
    """A normed space, a subspace spanned by a basis, and a Lipschitz g on it.

    ``g`` is a function of the coefficient vector with respect to the
    *given* basis: either a coefficient vector (linear functional) or a
    callable. ``sigma`` must bound the empirical Lipschitz constant of g,
    measured in the ambient norm, on a coefficient-box validation grid.
    """

    space: NormedSpace
    basis: np.ndarray
    g: object
    sigma: float
    validation_tol: float = DEFAULT_TOL

    def __post_init__(self):
        basis = np.atleast_2d(np.asarray(self.basis, dtype=float))
        if basis.ndim != 2 or basis.shape[1] != self.space.dimension:
            raise DegenerateInputError("basis must be a (k, dimension) array")
        if basis.shape[0] < 1 or basis.shape[0] > basis.shape[1]:
            raise DegenerateInputError("need 1 <= k <= dimension basis vectors")
        if not np.all(np.isfinite(basis)):
            raise DegenerateInputError("basis must be finite")
        gram = basis @ basis.T
        scale = float(np.prod(np.diag(gram)))
        if scale <= 0 or float(np.linalg.det(gram)) <= 1e-12 * scale:
            raise DegenerateInputError("basis is degenerate (Gram determinant ~ 0)")
        ortho = _orthonormalize(basis)
        if not np.isfinite(self.sigma) or self.sigma < 0:
            raise DegenerateInputError("sigma must be a finite nonnegative real")
        lin = None
        fn = None
        if callable(self.g):
            fn = self.g
        else:
            lin = np.asarray(self.g, dtype=float).ravel()
            if lin.shape[0] != basis.shape[0] or not np.all(np.isfinite(lin)):
                raise DegenerateInputError("linear g needs one finite coefficient per basis vector")
        basis.setflags(write=False)
        ortho.setflags(write=False)
        object.__setattr__(self, "basis", basis)
        object.__setattr__(self, "_ortho", ortho)
        object.__setattr__(self, "_pinv", np.linalg.pinv(basis))
        object.__setattr__(self, "_lin", lin)
        object.__setattr__(self, "_fn", fn)
        self._validate_sigma()

    @property
    def subspace_dim(self) -> int:
        return self.basis.shape[0]

    @property
    def orthonormal_basis(self) -> np.ndarray:
        return self._ortho

    def values_at_coeffs(self, coeffs) -> np.ndarray:
        coeffs = np.atleast_2d(np.asarray(coeffs, dtype=float))
        if self._lin is not None:
            return coeffs @ self._lin
        return np.array([float(self._fn(c)) for c in coeffs])

    def values_at_points(self, ambient_points) -> np.ndarray:
        """g at ambient points assumed to lie on the subspace."""
        pts = np.atleast_2d(np.asarray(ambient_points, dtype=float))
        return self.values_at_coeffs(pts @ self._pinv)

    def _validate_sigma(self):
        k = self.subspace_dim
        steps = max(2, int(round(125 ** (1.0 / k))))
        axes = [np.linspace(-1.0, 1.0, steps)] * k
        mesh = np.stack(np.meshgrid(*axes, indexing="ij"), axis=-1).reshape(-1, k)
        pts = mesh @ self.basis
        vals = self.values_at_coeffs(mesh)
        samples = SampleSet(self.space.as_metric(), pts, vals)
        report = lipschitz_constant(samples)
        if report.max_ratio > self.sigma + self.validation_tol:
            raise SigmaTooSmallError(
                f"g has empirical constant {report.max_ratio:.6g} on the validation grid "
                f"> sigma {self.sigma:.6g}",
                report=report,
            )


@dataclass(frozen=True)
class ApproxExtensionResult:
    """One approximate-extension evaluation at a query point."""

    value: float
    radius_used: float
    grid_points_evaluated: int
    epsilon: float
    effective_sigma: float


def approx_radius(x, epsilon: float, space: NormedSpace) -> float:
    """The search radius 2 * (1 + eps) / eps * ||x|| that confines the optimum."""
    if not np.isfinite(epsilon) or epsilon <= 0:
        raise DegenerateInputError("epsilon must be positive")
    return 2.0 * (1.0 + epsilon) / epsilon * space.norm(x)


def _cube_halfwidth(space: NormedSpace, r: float) -> float:
    # the orthonormal-coordinate cube must cover {||a||_ambient <= r};
    # coordinates are l2-isometric, so scale r by the norm-equivalence factor
    n = space.dimension
    if space.kind == "linf":
        return r * math.sqrt(n)
    if space.kind == "p_norm" and space.p > 2:
        return r * n ** (0.5 - 1.0 / space.p)
    return r


def _search_box(objective, center, halfwidth, resolution, keep, maximize):
    """Best objective value over a uniform box grid, filtered by ``keep``.

    Chunks along the leading axis so memory stays bounded for higher
    subspace dimensions. Returns (best_t, best_val, evaluated_count).
    """
    k = center.shape[0]
    axes = [np.linspace(center[i] - halfwidth, center[i] + halfwidth, resolution) for i in range(k)]
    if k == 1:
        tail = np.zeros((1, 0))
    else:
        tail = np.stack(np.meshgrid(*axes[1:], indexing="ij"), axis=-1).reshape(-1, k - 1)
    rows_per_lead = tail.shape[0]
    lead_chunk = max(1, 300_000 // rows_per_lead)
    best_val = -math.inf if maximize else math.inf
    best_t = None
    count = 0
    for start in range(0, resolution, lead_chunk):
        leads = axes[0][start:start + lead_chunk]
        block = np.column_stack([
            np.repeat(leads, rows_per_lead),
            np.tile(tail, (leads.shape[0], 1)),
        ])
        block = block[keep(block)]
        if block.shape[0] == 0:
            continue
        vals = objective(block)
        count += block.shape[0]
        idx = int(np.argmax(vals)) if maximize else int(np.argmin(vals))
        if (maximize and vals[idx] > best_val) or (not maximize and vals[idx] < best_val):
            best_val = float(vals[idx])
            best_t = block[idx].copy()
    return best_t, best_val, count


def _approx_extend(problem, epsilon, x, resolution, refine_rounds, maximize, max_dim):
    if not np.isfinite(epsilon) or epsilon <= 0:
        raise DegenerateInputError("epsilon must be positive")
    if int(resolution) != resolution or resolution < 3:
        raise DegenerateInputError("resolution must be an integer >= 3")
    k = problem.subspace_dim
    if k > max_dim:
        raise DegenerateInputError(
            f"subspace dimension {k} exceeds the grid-search cap {max_dim}; raise max_dim explicitly"
        )
    space = problem.space
    x = as_point(x, space.dimension)
    eff_sigma = (1.0 + epsilon) * problem.sigma
    g0 = float(problem.values_at_coeffs(np.zeros((1, k)))[0])
    ortho = problem.orthonormal_basis

    # maximized in both senses: phi itself, or -theta when minimizing
    def objective(T):
        pts = T @ ortho
        h = problem.values_at_points(pts) - g0
        dist = space.norms(pts - x[None, :])
        if maximize:
            return h - eff_sigma * dist
        return -(h + eff_sigma * dist)

    r = approx_radius(x, epsilon, space)
    origin = np.zeros(k)
    origin_val = float(objective(origin[None, :])[0])
    if r == 0.0:
        value = (origin_val if maximize else -origin_val) + g0
        return ApproxExtensionResult(value, 0.0, 1, float(epsilon), eff_sigma)

    def keep(T):
        return space.norms(T @ ortho) <= r

    halfwidth = _cube_halfwidth(space, r)
    resolution = int(resolution)
    best_t, best_val, count = _search_box(objective, origin, halfwidth, resolution, keep, True)
    count += 1
    if best_t is None or origin_val > best_val:
        best_t, best_val = origin, origin_val
    spacing = 2.0 * halfwidth / (resolution - 1)
    for _ in range(int(refine_rounds)):
        t, val, n_eval = _search_box(objective, best_t, spacing, resolution, keep, True)
        count += n_eval
        if t is not None and val > best_val:
            best_t, best_val = t, val
        spacing = 2.0 * spacing / (resolution - 1)
    value = (best_val if maximize else -best_val) + g0
    return ApproxExtensionResult(value, float(r), int(count), float(epsilon), eff_sigma)


def approx_mcshane(
    problem: SubspaceProblem, epsilon: float, x, resolution: int = 65,
    refine_rounds: int = 3, max_dim: int = 4,
) -> ApproxExtensionResult:
    """Lower approximate extension: maximize g(a) - (1+eps)*sigma*||a - x|| over K_r.

    g(0) != 0 is handled by extending g - g(0) and adding g(0) back.
    """
    return _approx_extend(problem, epsilon, x, resolution, refine_rounds, True, max_dim)


def approx_whitney(
    problem: SubspaceProblem, epsilon: float, x, resolution: int = 65,
    refine_rounds: int = 3, max_dim: int = 4,
) -> ApproxExtensionResult:
    """Upper approximate extension: minimize g(a) + (1+eps)*sigma*||x - a|| over K_r."""
    return _approx_extend(problem, epsilon, x, resolution, refine_rounds, False, max_dim)


def tail_bound_check(
    problem: SubspaceProblem, epsilon: float, x, rng, n_directions: int = 16,
    scales=(1.0, 1.5, 2.0),
) -> float:
    """Sampled verification that outside the search ball the objectives never win.

    For subspace points with ||a|| >= r (after normalizing g(0) to 0) the
    lower objective must stay <= its origin value and the upper objective
    >= its origin value. Returns the worst signed violation (<= 0 means
    verified on the sample).
    """
    space = problem.space
    x = as_point(x, space.dimension)
    k = problem.subspace_dim
    eff_sigma = (1.0 + epsilon) * problem.sigma
    g0 = float(problem.values_at_coeffs(np.zeros((1, k)))[0])
    r = approx_radius(x, epsilon, space)
    base = max(r, 1.0)
    worst = -math.inf
    ortho = problem.orthonormal_basis
    phi0 = -eff_sigma * space.norm(x)
    theta0 = eff_sigma * space.norm(x)
    for _ in range(n_directions):
        u = rng.standard_normal(k)
        u /= max(np.linalg.norm(u), 1e-300)
        v = u @ ortho
        nv = space.norms(v[None, :])[0]
        for s in scales:
            a = (s * base / nv) * v
            h = float(problem.values_at_points(a[None, :])[0]) - g0
            dist = float(space.norms((a - x)[None, :])[0])
            worst = max(worst, (h - eff_sigma * dist) - phi0)
            worst = max(worst, theta0 - (h + eff_sigma * dist))
    return worst


@dataclass(frozen=True, eq=False)
class HahnBanachReport:
    """Extensions of the norm-valued linear functional along a direction x0.

    The sample is the segment {lam * x0 : lam in [-1, 1]} on a uniform
    lam-grid with values lam * ||x0||; both extremal extensions recover
    ||x0|| at x0 and have empirical constant 1. Additivity and
    homogeneity are verified on sampled points of the segment (the finite
    sample is only faithful to the subspace extension there).
    """

    lower: ExtensionSpec
    upper: ExtensionSpec
    norm_x0: float
    lower_at_x0: float
    upper_at_x0: float
    empirical_constant: float
    grid_tolerance: float
    subadditivity_violation: float
    superadditivity_violation: float
    pos_homogeneity_violation: float
    neg_homogeneity_violation: float

    @property
    def passed(self) -> bool:
        value_ok = (
            abs(self.lower_at_x0 - self.norm_x0) <= 1e-9
            and abs(self.upper_at_x0 - self.norm_x0) <= 1e-9
        )
        shape_ok = max(
            self.subadditivity_violation,
            self.superadditivity_violation,
            self.pos_homogeneity_violation,
            self.neg_homogeneity_violation,
        ) <= self.grid_tolerance
        return value_ok and abs(self.empirical_constant - 1.0) <= 1e-9 and shape_ok


def hahn_banach_like(
    space: NormedSpace, x0, grid: int = 401, n_pairs: int = 100, rng=None,
    tol: float = 1e-12,
) -> HahnBanachReport:
    """Extend lam * ||x0|| from the segment [-x0, x0] and verify its structure."""
    if grid < 3 or grid % 2 == 0:
        raise DegenerateInputError("grid must be an odd integer >= 3")
    x0 = as_point(x0, space.dimension)
    norm_x0 = space.norm(x0)
    if norm_x0 <= tol:
        raise DegenerateInputError("x0 must have positive norm")
    if rng is None:
        rng = np.random.default_rng(0)
    lams = np.linspace(-1.0, 1.0, grid)
    points = lams[:, None] * x0[None, :]
    values = lams * norm_x0
    samples = SampleSet(space.as_metric(), points, values)
    lower = ExtensionSpec(samples, 1.0, side="lower")
    upper = ExtensionSpec(samples, 1.0, side="upper")
    grid_tol = (2.0 / (grid - 1)) * norm_x0

    def eval_lower(pts):
        return extend_batch(ExtensionSpec(samples, 1.0, "lower", check=False), pts)

    def eval_upper(pts):
        return extend_batch(ExtensionSpec(samples, 1.0, "upper", check=False), pts)

    lower_at_x0 = float(eval_lower(x0[None, :])[0])
    upper_at_x0 = float(eval_upper(x0[None, :])[0])
    constant = lipschitz_constant(samples).max_ratio

    # additivity on segment points whose sum stays on the sampled segment
    l1 = rng.uniform(-0.5, 0.5, n_pairs)
    l2 = rng.uniform(-0.5, 0.5, n_pairs)
    p1 = l1[:, None] * x0[None, :]
    p2 = l2[:, None] * x0[None, :]
    psum = p1 + p2
    sub_viol = float(np.max(eval_upper(psum) - (eval_upper(p1) + eval_upper(p2))))
    super_viol = float(np.max((eval_lower(p1) + eval_lower(p2)) - eval_lower(psum)))

    mus = rng.uniform(-0.5, 0.5, n_pairs)
    lams_pos = rng.uniform(0.05, 2.0, n_pairs)
    base_pts = mus[:, None] * x0[None, :]
    pos_pts = (lams_pos * mus)[:, None] * x0[None, :]
    neg_pts = (-lams_pos * mus)[:, None] * x0[None, :]
    pos_viol = max(
        float(np.max(np.abs(eval_upper(pos_pts) - lams_pos * eval_upper(base_pts)))),
        float(np.max(np.abs(eval_lower(pos_pts) - lams_pos * eval_lower(base_pts)))),
    )
    neg_viol = max(
        float(np.max(np.abs(eval_upper(neg_pts) - (-lams_pos) * eval_lower(base_pts)))),
        float(np.max(np.abs(eval_lower(neg_pts) - (-lams_pos) * eval_upper(base_pts)))),
    )
    return HahnBanachReport(
        lower=lower,
        upper=upper,
        norm_x0=norm_x0,
        lower_at_x0=lower_at_x0,
        upper_at_x0=upper_at_x0,
        empirical_constant=constant,
        grid_tolerance=grid_tol,
        subadditivity_violation=sub_viol,
        superadditivity_violation=super_viol,
        pos_homogeneity_violation=pos_viol,
        neg_homogeneity_violation=neg_viol,
    )


def convexity_check(
    evaluate: Callable, sample_domain: Callable, trials: int, rng, sense: str = "convex"
) -> float:
    """Largest sampled violation of (mid)point convexity or concavity.

    ``evaluate`` maps a point to a value; ``sample_domain`` maps an rng to
    a point of the (convex) domain. The check is meaningful at grid
    scale: extensions of finitely sampled convex data are convex only up
    to a sample-spacing-proportional defect.
    """
    if sense not in ("convex", "concave"):
        raise DegenerateInputError("sense must be convex or concave")
    worst = -math.inf
    for _ in range(int(trials)):
        a = np.asarray(sample_domain(rng), dtype=float)
        b = np.asarray(sample_domain(rng), dtype=float)
        lam = float(rng.uniform())
        mid = lam * a + (1.0 - lam) * b
        gap = evaluate(mid) - (lam * evaluate(a) + (1.0 - lam) * evaluate(b))
        if sense == "concave":
            gap = -gap
        worst = max(worst, float(gap))
    return worst


def load_problem(source, base_dir=None) -> SubspaceProblem:
    """Build a SubspaceProblem from a JSON document (path, JSON text, or dict).

    Schema: {"dimension": n, "norm": "l2"|"l1"|"linf"|"pnorm:P",
    "basis": [[...], ...], "g": {"linear": [...]} | {"samples": "path.csv"},
    "sigma": s}. A samples-based g is realized as the midpoint extension
    of the coefficient-space samples (euclidean coefficient metric, its
    own empirical constant).
    """
    if isinstance(source, dict):
        doc = source
    else:
        path = Path(source)
        if path.exists():
            base_dir = base_dir or path.parent
            text = path.read_text()
        else:
            text = str(source)
        try:
            doc = json.loads(text)
        except json.JSONDecodeError as exc:
            raise ParseError(f"bad problem JSON: {exc}") from None
    try:
        dimension = int(doc["dimension"])
        space = parse_norm(str(doc.get("norm", "l2")), dimension)
        basis = np.asarray(doc["basis"], dtype=float)
        sigma = float(doc["sigma"])
        gdoc = doc["g"]
    except (KeyError, TypeError, ValueError) as exc:
        raise ParseError(f"bad problem document: {exc}") from None
    if "linear" in gdoc:
        g = np.asarray(gdoc["linear"], dtype=float)
    elif "samples" in gdoc:
        from .cli import read_samples_csv  # local import; cli owns the CSV format

        csv_path = Path(gdoc["samples"])
        if base_dir is not None and not csv_path.is_absolute():
            csv_path = Path(base_dir) / csv_path
        coeff_metric = MetricDescriptor("euclidean", basis.shape[0])
        coeff_samples = read_samples_csv(csv_path, coeff_metric)
        sigma_c = lipschitz_constant(coeff_samples).max_ratio
        spec = ExtensionSpec(coeff_samples, sigma_c, side="midpoint")

        def g(coeffs, _spec=spec):
            return float(extend_batch(_spec, np.atleast_2d(coeffs))[0])

    else:
        raise ParseError('problem "g" must provide "linear" or "samples"')
    return SubspaceProblem(space, basis, g, sigma)
