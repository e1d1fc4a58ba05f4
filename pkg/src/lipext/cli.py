"""Command-line front end.

Commands: ``fit`` (empirical Lipschitz analysis), ``extend`` (kernel
evaluation at query points), ``density`` (Lipschitz sandwich for a
uniformly continuous function), ``approx-extend`` (subspace problems),
and ``check`` (the property suite).

CSV formats: sample files carry a header ``x1,...,xd,g``; query files
``x1,...,xd``. Floats are serialized with 17 significant digits so
round-trips are lossless. All randomness is confined to ``check``; the
numeric commands are deterministic.

Exit codes: 0 ok, 1 check failures, 2 parse error, 3 data conflict,
4 sigma/modulus violation, 5 bound violation, 6 degenerate input.
"""
from __future__ import annotations

import csv
import json
import sys
from dataclasses import dataclass, field
from pathlib import Path

import click
import numpy as np

from .analysis import lipschitz_constant
from .checks import PROFILES, run_suite
from .density import (
    builtin_function,
    density_sigma,
    lipschitz_approximate,
    parse_omega,
    sampled_function,
    sandwich_margins,
)
from .errors import (
    BoundViolationError,
    DataConflictError,
    DegenerateInputError,
    DimensionMismatchError,
    LipextError,
    ParseError,
    SigmaTooSmallError,
)
from .extension import ExtensionSpec, extend_batch
from .metrics import MetricDescriptor, SampleSet, dedup_check, diameter, parse_metric
from .modulus import is_nu_continuous, nu_extend_batch, parse_modulus, validate_modulus
from .normed import approx_mcshane, approx_whitney, load_problem

EXIT_OK = 0
EXIT_CHECK_FAILED = 1
EXIT_PARSE = 2
EXIT_CONFLICT = 3
EXIT_SIGMA = 4
EXIT_BOUND = 5
EXIT_DEGENERATE = 6

_EXIT_FOR = (
    (ParseError, EXIT_PARSE),
    (DataConflictError, EXIT_CONFLICT),
    (SigmaTooSmallError, EXIT_SIGMA),
    (BoundViolationError, EXIT_BOUND),
    (DimensionMismatchError, EXIT_DEGENERATE),
    (DegenerateInputError, EXIT_DEGENERATE),
)


def exit_code_for(exc: LipextError) -> int:
    for exc_type, code in _EXIT_FOR:
        if isinstance(exc, exc_type):
            return code
    return EXIT_DEGENERATE


@dataclass
class RunConfig:
    """One resolved CLI invocation; commands build this and call :func:`execute`."""

    command: str
    samples_path: str | None = None
    queries_path: str | None = None
    problem_path: str | None = None
    metric: str = "euclidean"
    sigma: float | None = None
    modulus: str | None = None
    side: str = "lower"
    epsilon: float | None = None
    resolution: int = 65
    tol: float = 1e-9
    out: str | None = None
    seed: int = 0
    function: str | None = None
    interval: tuple[float, float] = (0.0, 1.0)
    grid: int = 201
    omega: str | None = None
    bound: float | None = None
    profile: str = "default"
    overrides: dict = field(default_factory=dict)


def _fmt(value: float) -> str:
    return format(float(value), ".17g")


def read_labeled_csv(path):
    """Parse a samples CSV with header x1..xd,g into (points, values)."""
    return _read_csv(path, labeled=True)


def read_points_csv(path):
    """Parse a queries CSV with header x1..xd into a point array."""
    return _read_csv(path, labeled=False)


def _read_csv(path, labeled):
    path = Path(path)
    try:
        text = path.read_text()
    except OSError as exc:
        raise ParseError(f"cannot read {path}: {exc}") from None
    rows = list(csv.reader(text.splitlines()))
    if not rows:
        raise ParseError("empty file", line=1)
    header = [h.strip().lower() for h in rows[0]]
    expected_dim = len(header) - (1 if labeled else 0)
    if expected_dim < 1:
        raise ParseError("header must list coordinate columns x1..xd", line=1)
    coord_names = [f"x{i + 1}" for i in range(expected_dim)]
    want = coord_names + (["g"] if labeled else [])
    if header != want:
        raise ParseError(f"expected header {','.join(want)!r}, got {','.join(header)!r}", line=1)
    points, values = [], []
    for lineno, row in enumerate(rows[1:], start=2):
        if not row or all(not cell.strip() for cell in row):
            continue
        if len(row) != len(want):
            raise ParseError(f"expected {len(want)} fields, got {len(row)}", line=lineno)
        try:
            nums = [float(cell) for cell in row]
        except ValueError as exc:
            raise ParseError(str(exc), line=lineno) from None
        points.append(nums[:expected_dim])
        if labeled:
            values.append(nums[-1])
    pts = np.asarray(points, dtype=float).reshape(-1, expected_dim)
    if labeled:
        return pts, np.asarray(values, dtype=float)
    return pts


def read_samples_csv(path, metric: MetricDescriptor) -> SampleSet:
    points, values = read_labeled_csv(path)
    return SampleSet(metric, points, values)


def _write_csv(out, header, rows):
    def emit(handle):
        writer = csv.writer(handle, lineterminator="\n")
        writer.writerow(header)
        for row in rows:
            writer.writerow([_fmt(v) for v in row])

    if out is None or out == "-":
        emit(sys.stdout)
    else:
        with open(out, "w", newline="") as handle:
            emit(handle)


def _echo_json(payload, out=None):
    text = json.dumps(payload, indent=2)
    click.echo(text)
    if out:
        Path(out).write_text(text + "\n")


def _load_samples(config) -> SampleSet:
    points, values = read_labeled_csv(config.samples_path)
    if points.shape[0] == 0:
        raise DegenerateInputError("samples file has no data rows")
    metric = parse_metric(config.metric, points.shape[1])
    samples = SampleSet(metric, points, values)
    report = dedup_check(samples, config.tol)
    if not report.ok:
        raise DataConflictError("conflicting duplicate samples\n" + report.summary(),
                                conflicts=report.conflicts)
    return samples


def _run_fit(config) -> int:
    samples = _load_samples(config)
    report = lipschitz_constant(samples)
    _echo_json(
        {
            "max_ratio": report.max_ratio,
            "min_ratio": report.min_ratio,
            "argmax_pair": list(report.argmax_pair),
            "pair_count": report.pair_count,
        },
        config.out,
    )
    return EXIT_OK


def _run_extend(config) -> int:
    if (config.sigma is None) == (config.modulus is None):
        raise DegenerateInputError("give exactly one of --sigma or --modulus")
    samples = _load_samples(config)
    queries = read_points_csv(config.queries_path)
    if queries.shape[0] and queries.shape[1] != samples.dimension:
        raise DimensionMismatchError(
            f"queries are {queries.shape[1]}-dimensional, samples {samples.dimension}-dimensional"
        )
    coord_header = [f"x{i + 1}" for i in range(samples.dimension)]
    if config.modulus is not None:
        nu = parse_modulus(config.modulus)
        # sampled axiom check over twice the data diameter
        pts = np.vstack([samples.points, queries]) if queries.shape[0] else samples.points
        grid_max = 2.0 * diameter(samples.metric, pts)
        report = validate_modulus(nu, grid_max if grid_max > 0 else 1.0, 1024)
        if not report.ok:
            details = "; ".join(msg for _, msg in report.violations)
            raise DegenerateInputError(f"modulus fails its axioms on the grid: {details}")
        if not is_nu_continuous(samples, nu, config.tol):
            raise SigmaTooSmallError("samples violate the modulus bound |dg| <= nu(d)")
        if config.side == "both":
            cols = [nu_extend_batch(samples, nu, queries, s, config.tol, check=False)
                    for s in ("lower", "upper", "midpoint")]
            rows = [list(q) + [a, b, c] for q, a, b, c in zip(queries, *cols)]
            _write_csv(config.out, coord_header + ["lower", "upper", "midpoint"], rows)
        else:
            vals = nu_extend_batch(samples, nu, queries, config.side, config.tol, check=False)
            rows = [list(q) + [v] for q, v in zip(queries, vals)]
            _write_csv(config.out, coord_header + ["g"], rows)
        return EXIT_OK
    sigma = float(config.sigma)
    if config.side == "both":
        specs = [ExtensionSpec(samples, sigma, s, config.tol) for s in ("lower", "upper", "midpoint")]
        cols = [extend_batch(spec, queries) for spec in specs]
        rows = [list(q) + [a, b, c] for q, a, b, c in zip(queries, *cols)]
        _write_csv(config.out, coord_header + ["lower", "upper", "midpoint"], rows)
    else:
        spec = ExtensionSpec(samples, sigma, config.side, config.tol)
        vals = extend_batch(spec, queries)
        rows = [list(q) + [v] for q, v in zip(queries, vals)]
        _write_csv(config.out, coord_header + ["g"], rows)
    return EXIT_OK


def _resolve_function(config):
    spec = config.function
    if spec is None:
        raise DegenerateInputError("--function is required")
    if spec.startswith("csv:"):
        if config.omega is None or config.bound is None:
            raise DegenerateInputError("sampled functions need --omega and --bound")
        pts, vals = read_labeled_csv(spec[4:])
        if pts.shape[1] != 1:
            raise DegenerateInputError("sampled density functions must be one-dimensional")
        return sampled_function(pts[:, 0], vals, parse_omega(config.omega), config.bound)
    return builtin_function(spec, config.interval)


def _run_density(config) -> int:
    if config.epsilon is None or config.epsilon <= 0:
        raise DegenerateInputError("--epsilon must be positive")
    if config.grid < 2:
        raise DegenerateInputError("--grid must be at least 2")
    f = _resolve_function(config)
    a, b = config.interval
    xs = np.linspace(a, b, config.grid).reshape(-1, 1)
    metric = MetricDescriptor("euclidean", 1)
    minorant, majorant = lipschitz_approximate(f, xs, metric, config.epsilon)
    fv = minorant.samples.values
    lo = extend_batch(minorant, xs)
    hi = extend_batch(majorant, xs)
    rows = [[x[0], fx, l, h] for x, fx, l, h in zip(xs, fv, lo, hi)]
    _write_csv(config.out, ["x", "f", "minorant", "majorant"], rows)
    report = sandwich_margins(fv, lo, hi, config.epsilon, config.tol)
    _echo_json(
        {
            "sigma": density_sigma(f, config.epsilon),
            "epsilon": config.epsilon,
            "grid": config.grid,
            "interval": [a, b],
            "max_margin_below_floor": report.below_floor,
            "max_margin_minorant_over_f": report.minorant_over_f,
            "max_margin_f_over_majorant": report.f_over_majorant,
            "max_margin_above_ceiling": report.above_ceiling,
            "sandwich_ok": report.passed,
        }
    )
    return EXIT_OK


def _run_approx_extend(config) -> int:
    if config.epsilon is None or config.epsilon <= 0:
        raise DegenerateInputError("--epsilon must be positive")
    problem = load_problem(config.problem_path)
    queries = read_points_csv(config.queries_path)
    if queries.shape[0] and queries.shape[1] != problem.space.dimension:
        raise DimensionMismatchError(
            f"queries are {queries.shape[1]}-dimensional, the space is {problem.space.dimension}-dimensional"
        )
    coord_header = [f"x{i + 1}" for i in range(problem.space.dimension)]
    rows = []
    for q in queries:
        lo = approx_mcshane(problem, config.epsilon, q, config.resolution)
        hi = approx_whitney(problem, config.epsilon, q, config.resolution)
        rows.append(list(q) + [lo.value, hi.value, lo.radius_used,
                               lo.grid_points_evaluated + hi.grid_points_evaluated])
    _write_csv(config.out, coord_header + ["lower", "upper", "radius_used", "grid_points"], rows)
    return EXIT_OK


def _run_check(config) -> int:
    reports = run_suite(config.seed, config.profile, config.overrides)
    payload = {
        "seed": config.seed,
        "profile": config.profile,
        "checks": [r.to_dict() for r in reports],
        "passed": all(r.passed for r in reports),
    }
    _echo_json(payload, config.out)
    return EXIT_OK if payload["passed"] else EXIT_CHECK_FAILED


_DISPATCH = {
    "fit": _run_fit,
    "extend": _run_extend,
    "density": _run_density,
    "approx-extend": _run_approx_extend,
    "check": _run_check,
}


def execute(config: RunConfig) -> int:
    """Run a resolved configuration, translating package errors to exit codes."""
    try:
        return _DISPATCH[config.command](config)
    except LipextError as exc:
        click.echo(f"error: {exc}", err=True)
        return exit_code_for(exc)


_tol_option = click.option(
    "--tol", type=float, default=1e-9, envvar="LIPEXT_TOL", show_default=True,
    help="Absolute tolerance for admissibility checks (env LIPEXT_TOL).",
)
_metric_option = click.option(
    "--metric", default="euclidean", show_default=True,
    help="euclidean|manhattan|chebyshev|pnorm:P|discrete",
)
_out_option = click.option("--out", default=None, help="Output path (default: stdout).")


@click.group()
def main():
    """Lipschitz extension toolkit: fit constants, extend samples, approximate."""


@main.command("fit")
@click.argument("samples_csv", type=click.Path())
@_metric_option
@_tol_option
@_out_option
def cmd_fit(samples_csv, metric, tol, out):
    """Empirical Lipschitz analysis of a samples CSV; prints a JSON report."""
    config = RunConfig("fit", samples_path=samples_csv, metric=metric, tol=tol, out=out)
    sys.exit(execute(config))


@main.command("extend")
@click.argument("samples_csv", type=click.Path())
@click.argument("queries_csv", type=click.Path())
@click.option("--sigma", type=float, default=None, help="Lipschitz bound (>= empirical constant).")
@click.option("--modulus", default=None,
              help="Modulus spec: linear:S | hoelder:S:A | pwl:t1,v1;t2,v2;...")
@click.option("--side", default="lower", show_default=True,
              type=click.Choice(["lower", "upper", "midpoint", "both"]))
@_metric_option
@_tol_option
@_out_option
def cmd_extend(samples_csv, queries_csv, sigma, modulus, side, metric, tol, out):
    """Evaluate the extension of SAMPLES_CSV at QUERIES_CSV points."""
    config = RunConfig(
        "extend", samples_path=samples_csv, queries_path=queries_csv, sigma=sigma,
        modulus=modulus, side=side, metric=metric, tol=tol, out=out,
    )
    sys.exit(execute(config))


@main.command("density")
@click.option("--function", required=True,
              help="sqrt | abs | sin | poly:c0,c1,... | csv:PATH (with --omega/--bound)")
@click.option("--interval", default="0:1", show_default=True, help="Domain a:b.")
@click.option("--grid", type=int, default=201, show_default=True, help="Grid points.")
@click.option("--epsilon", type=float, required=True, help="Target accuracy (> 0).")
@click.option("--omega", default=None, help="Modulus of uniform continuity: linear:C | power:C:K.")
@click.option("--bound", type=float, default=None, help="Bound M with |f| <= M.")
@_tol_option
@_out_option
def cmd_density(function, interval, grid, epsilon, omega, bound, tol, out):
    """Bracket a uniformly continuous function between Lipschitz approximants."""
    try:
        a_text, _, b_text = interval.partition(":")
        iv = (float(a_text), float(b_text))
    except ValueError:
        click.echo(f"error: bad interval {interval!r}", err=True)
        sys.exit(EXIT_PARSE)
    config = RunConfig(
        "density", function=function, interval=iv, grid=grid, epsilon=epsilon,
        omega=omega, bound=bound, tol=tol, out=out,
    )
    sys.exit(execute(config))


@main.command("approx-extend")
@click.argument("problem_json", type=click.Path())
@click.argument("queries_csv", type=click.Path())
@click.option("--epsilon", type=float, required=True, help="Stretch factor (> 0).")
@click.option("--resolution", type=int, default=65, show_default=True,
              help="Grid steps per subspace axis.")
@_tol_option
@_out_option
def cmd_approx_extend(problem_json, queries_csv, epsilon, resolution, tol, out):
    """Approximately extend a subspace problem at query points."""
    config = RunConfig(
        "approx-extend", problem_path=problem_json, queries_path=queries_csv,
        epsilon=epsilon, resolution=resolution, tol=tol, out=out,
    )
    sys.exit(execute(config))


@main.command("check")
@click.option("--seed", type=int, default=42, show_default=True)
@click.option("--profile", default="default", show_default=True,
              type=click.Choice(sorted(PROFILES)))
@click.option("--override", "overrides", multiple=True, metavar="NAME=TOL",
              help="Replace a check's tolerance (repeatable).")
@_out_option
def cmd_check(seed, profile, overrides, out):
    """Run the property-check suite; nonzero exit if any check fails."""
    parsed = {}
    for item in overrides:
        name, sep, value = item.partition("=")
        if not sep:
            click.echo(f"error: override must look like NAME=TOL, got {item!r}", err=True)
            sys.exit(EXIT_PARSE)
        try:
            parsed[name.strip()] = float(value)
        except ValueError:
            click.echo(f"error: bad tolerance in override {item!r}", err=True)
            sys.exit(EXIT_PARSE)
    config = RunConfig("check", seed=seed, profile=profile, overrides=parsed, out=out)
    sys.exit(execute(config))


if __name__ == "__main__":
    main()
