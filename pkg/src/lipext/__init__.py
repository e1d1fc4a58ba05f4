"""Extremal Lipschitz extension machinery for finite samples.

Core surface: build a :class:`SampleSet`, measure its empirical Lipschitz
constant, and evaluate the extremal lower/upper extensions anywhere —
plus Hoelder/modulus variants, Lipschitz sandwiches of uniformly
continuous functions, approximate extensions from subspaces of normed
spaces, and a property-check suite tying it together.
"""

from .analysis import RatioReport, is_lipschitz, lipschitz_constant, pairwise_ratio
from .checks import CheckReport, brute_force_extension_oracle, check_names, run_suite
from .density import (
    UCFunction,
    builtin_function,
    density_sigma,
    empirical_modulus,
    extremality_check,
    lipschitz_approximate,
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
from .estimators import McShaneWhitneyRegressor
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
from .metrics import (
    MetricDescriptor,
    SampleSet,
    dedup_check,
    diameter,
    distance,
    cross_distance,
    parse_metric,
)
from .modulus import (
    HoelderModulus,
    LinearModulus,
    ModulusOfContinuity,
    PiecewiseLinearModulus,
    is_nu_continuous,
    nu_extend_batch,
    nu_extend_lower,
    nu_extend_upper,
    parse_modulus,
    validate_modulus,
)
from .normed import (
    ApproxExtensionResult,
    HahnBanachReport,
    NormedSpace,
    SubspaceProblem,
    approx_mcshane,
    approx_radius,
    approx_whitney,
    convexity_check,
    hahn_banach_like,
    load_problem,
    tail_bound_check,
)

__version__ = "0.1.0"

__all__ = [
    "ApproxExtensionResult",
    "BoundViolationError",
    "CheckReport",
    "DataConflictError",
    "DegenerateInputError",
    "DimensionMismatchError",
    "ExtensionSpec",
    "HahnBanachReport",
    "HoelderModulus",
    "LinearModulus",
    "LipextError",
    "McShaneWhitneyRegressor",
    "MetricDescriptor",
    "ModulusOfContinuity",
    "NormedSpace",
    "ParseError",
    "PiecewiseLinearModulus",
    "RatioReport",
    "SampleSet",
    "SigmaTooSmallError",
    "SubspaceProblem",
    "UCFunction",
    "approx_mcshane",
    "approx_radius",
    "approx_whitney",
    "brute_force_extension_oracle",
    "builtin_function",
    "check_names",
    "convexity_check",
    "cross_distance",
    "dedup_check",
    "density_sigma",
    "diameter",
    "dist_to_set",
    "distance",
    "empirical_modulus",
    "extend_batch",
    "extension_sum_bound_check",
    "extremality_check",
    "hahn_banach_like",
    "is_lipschitz",
    "is_nu_continuous",
    "lipschitz_approximate",
    "lipschitz_constant",
    "load_problem",
    "mcshane_extend",
    "nu_extend_batch",
    "nu_extend_lower",
    "nu_extend_upper",
    "pairwise_ratio",
    "parse_metric",
    "parse_modulus",
    "run_suite",
    "sandwich_margins",
    "scale_extension",
    "step_extend",
    "tail_bound_check",
    "validate_modulus",
    "whitney_extend",
]
