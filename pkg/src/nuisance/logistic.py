"""Logistic regression by iteratively reweighted least squares."""

import logging

import numpy as np
from scipy.special import expit

from src.errors import ArgumentError, DivergedError
from src.nuisance.models import LogisticModel

logger = logging.getLogger(__name__)

DEFAULT_RIDGE = 1e-8
MAX_ITERATIONS = 100
TOLERANCE = 1e-10
MAX_HALVINGS = 30


def design_matrix(x: np.ndarray) -> np.ndarray:
    """Prepend an intercept column."""
    x = np.asarray(x, dtype=float)
    if x.ndim == 1:
        x = x.reshape(-1, 1)
    return np.column_stack([np.ones(x.shape[0]), x])


def penalized_log_likelihood(
    coefficients: np.ndarray, z: np.ndarray, t: np.ndarray, ridge: float
) -> float:
    """Bernoulli log-likelihood minus (ridge/2)*||coefficients||^2."""
    eta = z @ coefficients
    ll = np.sum(t * eta - np.logaddexp(0.0, eta))
    return float(ll - 0.5 * ridge * coefficients @ coefficients)


def fit_logistic(
    x: np.ndarray,
    t: np.ndarray,
    ridge: float = DEFAULT_RIDGE,
    max_iter: int = MAX_ITERATIONS,
    tol: float = TOLERANCE,
) -> LogisticModel:
    """Fit a main-effects logistic model by Newton-Raphson (IRLS).

    The ridge penalty applies to every coefficient including the intercept,
    so a constant target still has a finite solution when ridge > 0. A step
    that lowers the penalized log-likelihood is halved until it does not.

    Args:
        x: n x p covariates (intercept added here)
        t: n binary targets
        ridge: L2 penalty weight
        max_iter: Iteration cap
        tol: Stop once the log-likelihood changes by less than this

    Returns:
        LogisticModel with intercept first

    Raises:
        DivergedError: no convergence within max_iter, or constant target with ridge 0
    """
    z = design_matrix(x)
    t = np.asarray(t, dtype=float).ravel()
    n, k = z.shape

    if n < 1:
        raise ArgumentError("fit_logistic needs at least one row")
    if t.shape[0] != n:
        raise ArgumentError(f"x has {n} rows but t has {t.shape[0]}")
    if not np.isfinite(z).all():
        raise ArgumentError("Covariates must be finite")
    if ridge < 0:
        raise ArgumentError(f"ridge must be >= 0, got {ridge}")

    beta = np.zeros(k)
    if ridge == 0.0 and (t.min() == t.max()):
        raise DivergedError(
            "Targets are all 0 or all 1; the unpenalized MLE does not exist", beta
        )

    penalty = ridge * np.eye(k)
    ll = penalized_log_likelihood(beta, z, t, ridge)

    for iteration in range(1, max_iter + 1):
        p = expit(z @ beta)
        w = p * (1.0 - p)
        gradient = z.T @ (t - p) - ridge * beta
        hessian = (z * w[:, None]).T @ z + penalty

        try:
            step = np.linalg.solve(hessian, gradient)
        except np.linalg.LinAlgError:
            step = np.linalg.lstsq(hessian, gradient, rcond=None)[0]

        candidate = beta + step
        ll_new = penalized_log_likelihood(candidate, z, t, ridge)
        halvings = 0
        while ll_new < ll and halvings < MAX_HALVINGS:
            step = step / 2.0
            candidate = beta + step
            ll_new = penalized_log_likelihood(candidate, z, t, ridge)
            halvings += 1

        if ll_new < ll:
            # No ascent direction left at machine precision
            return LogisticModel(beta, True, iteration, ll)

        change = ll_new - ll
        beta, ll = candidate, ll_new
        if change < tol:
            return LogisticModel(beta, True, iteration, ll)

    logger.debug(f"IRLS stopped after {max_iter} iterations, log-likelihood {ll:.6f}")
    raise DivergedError(f"IRLS did not converge in {max_iter} iterations", beta)
