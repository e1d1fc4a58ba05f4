"""Scikit-learn estimator front end for the extension kernels.

``McShaneWhitneyRegressor`` interpolates training targets exactly and
predicts with a controlled Lipschitz (or modulus-of-continuity) bound, so
it drops into pipelines, grid searches, and cross-validation like any
other regressor.
"""
from __future__ import annotations

from sklearn.base import BaseEstimator, RegressorMixin
from sklearn.utils.validation import check_array, check_is_fitted, check_X_y

from .analysis import lipschitz_constant
from .errors import DataConflictError, DegenerateInputError, SigmaTooSmallError
from .extension import ExtensionSpec, extend_batch
from .metrics import SampleSet, dedup_check, parse_metric
from .modulus import ModulusOfContinuity, is_nu_continuous, nu_extend_batch


class McShaneWhitneyRegressor(BaseEstimator, RegressorMixin):
    """Extremal Lipschitz interpolation as a fit/predict estimator.

    Parameters
    ----------
    metric : str
        Distance spec: ``euclidean``, ``manhattan``, ``chebyshev``,
        ``discrete``, or ``pnorm:P``.
    sigma : float or None
        Lipschitz bound. ``None`` fits the empirical constant of the
        training data (the least valid bound). Values below the empirical
        constant are rejected at fit time.
    modulus : ModulusOfContinuity or None
        Generalized continuity bound; mutually exclusive with ``sigma``.
        Training data must satisfy |dy| <= modulus(d) on every pair.
    side : str
        ``lower``, ``upper``, or ``midpoint``. The two extremes bracket
        every admissible extension; midpoint is the practical predictor.
    tol : float
        Absolute tolerance for the fit-time admissibility checks.
    """

    def __init__(self, metric="euclidean", sigma=None, modulus=None, side="midpoint", tol=1e-9):
        self.metric = metric
        self.sigma = sigma
        self.modulus = modulus
        self.side = side
        self.tol = tol

    def fit(self, X, y):
        X, y = check_X_y(X, y, y_numeric=True)
        if self.sigma is not None and self.modulus is not None:
            raise DegenerateInputError("give sigma or modulus, not both")
        if self.modulus is not None and not isinstance(self.modulus, ModulusOfContinuity):
            raise DegenerateInputError("modulus must be a ModulusOfContinuity")
        descriptor = parse_metric(self.metric, X.shape[1])
        samples = SampleSet(descriptor, X, y.astype(float))
        report = dedup_check(samples, self.tol)
        if not report.ok:
            raise DataConflictError(
                "coincident training points carry different targets:\n" + report.summary(),
                conflicts=report.conflicts,
            )
        self.n_features_in_ = X.shape[1]
        self.sample_set_ = samples
        if self.modulus is not None:
            if not is_nu_continuous(samples, self.modulus, self.tol):
                raise SigmaTooSmallError("training data violates the modulus bound")
            self.spec_ = None
            self.sigma_ = None
        else:
            self.ratio_report_ = lipschitz_constant(samples) if samples.n > 1 else None
            empirical = self.ratio_report_.max_ratio if self.ratio_report_ else 0.0
            self.lipschitz_constant_ = empirical
            self.sigma_ = float(self.sigma) if self.sigma is not None else empirical
            # raises SigmaTooSmallError when sigma undercuts the data
            self.spec_ = ExtensionSpec(samples, self.sigma_, self.side, self.tol)
        return self

    def predict(self, X):
        check_is_fitted(self, "sample_set_")
        X = check_array(X)
        if X.shape[1] != self.n_features_in_:
            raise DegenerateInputError(
                f"X has {X.shape[1]} features; the estimator was fitted with {self.n_features_in_}"
            )
        if self.modulus is not None:
            return nu_extend_batch(self.sample_set_, self.modulus, X, self.side, self.tol,
                                   check=False)
        return extend_batch(self.spec_, X)

    def predict_interval(self, X):
        """(lower, upper) envelope: every admissible extension lies between them."""
        check_is_fitted(self, "sample_set_")
        X = check_array(X)
        if self.modulus is not None:
            lo = nu_extend_batch(self.sample_set_, self.modulus, X, "lower", self.tol, check=False)
            hi = nu_extend_batch(self.sample_set_, self.modulus, X, "upper", self.tol, check=False)
            return lo, hi
        base = self.spec_
        lo = extend_batch(ExtensionSpec(base.samples, base.sigma, "lower", check=False), X)
        hi = extend_batch(ExtensionSpec(base.samples, base.sigma, "upper", check=False), X)
        return lo, hi
