"""L1-penalized logistic regression by cyclic coordinate descent.

The objective on standardized columns is

    -(1/n) * loglik(b0, beta) + lam * ||beta||_1

with the intercept unpenalized. Each outer step replaces the log-likelihood
by its weighted least-squares approximation at the current fit, and an inner
loop of soft-thresholded coordinate updates solves that approximation.
"""

import logging
from typing import List, Optional, Tuple

import numpy as np
from scipy.special import expit, logit

from src.errors import ArgumentError, DegenerateTargetError
from src.nuisance.models import LassoLogisticModel
from src.nuisance.streams import SeedKey, Stage, stream

logger = logging.getLogger(__name__)

N_LAMBDAS = 100
LAMBDA_MIN_RATIO = 1e-3
CV_FOLDS = 5

MAX_OUTER = 100
MAX_SWEEPS = 1000
OUTER_TOL = 1e-7
INNER_TOL = 1e-9
MIN_WEIGHT = 1e-5


def soft_threshold(value: float, threshold: float) -> float:
    if value > threshold:
        return value - threshold
    if value < -threshold:
        return value + threshold
    return 0.0


def binomial_deviance(t: np.ndarray, p: np.ndarray) -> float:
    """Mean binomial deviance of predictions p for targets t."""
    p = np.clip(p, 1e-15, 1.0 - 1e-15)
    return float(-2.0 * np.mean(t * np.log(p) + (1.0 - t) * np.log(1.0 - p)))


def lambda_max(z: np.ndarray, t: np.ndarray) -> float:
    """Smallest penalty at which every standardized coefficient is zero."""
    if z.shape[1] == 0:
        return 0.0
    return float(np.max(np.abs(z.T @ (t - t.mean()))) / z.shape[0])


def lambda_grid(lam_max: float, n_lambdas: int, min_ratio: float = LAMBDA_MIN_RATIO) -> np.ndarray:
    """Log-spaced grid from lam_max down to min_ratio * lam_max."""
    if lam_max <= 0.0:
        return np.zeros(1)
    return lam_max * np.logspace(0.0, np.log10(min_ratio), n_lambdas)


def _solve(
    z: np.ndarray,
    t: np.ndarray,
    lam: float,
    b0: float,
    beta: np.ndarray,
) -> Tuple[float, np.ndarray]:
    """Coordinate descent at one penalty, warm-started from (b0, beta)."""
    n, p = z.shape
    beta = beta.copy()

    for _ in range(MAX_OUTER):
        b0_old, beta_old = b0, beta.copy()

        eta = b0 + z @ beta
        prob = expit(eta)
        w = np.maximum(prob * (1.0 - prob), MIN_WEIGHT)
        res = (t - prob) / w  # working residual r - eta
        w_sum = w.sum()
        wz2 = (w[:, None] * z * z).sum(axis=0) / n

        for _ in range(MAX_SWEEPS):
            max_change = 0.0

            delta = float(w @ res) / w_sum
            b0 += delta
            res -= delta
            max_change = max(max_change, abs(delta))

            for j in range(p):
                if wz2[j] == 0.0:
                    continue
                z_j = z[:, j]
                rho = float((w * z_j) @ res) / n + wz2[j] * beta[j]
                new = soft_threshold(rho, lam) / wz2[j]
                diff = new - beta[j]
                if diff != 0.0:
                    res -= diff * z_j
                    beta[j] = new
                    max_change = max(max_change, abs(diff) * np.sqrt(wz2[j]))

            if max_change < INNER_TOL:
                break

        outer_change = max(abs(b0 - b0_old), float(np.max(np.abs(beta - beta_old), initial=0.0)))
        if outer_change < OUTER_TOL:
            break

    return b0, beta


def _solve_path(
    z: np.ndarray, t: np.ndarray, lambdas: np.ndarray
) -> List[Tuple[float, np.ndarray]]:
    """Solutions along a decreasing penalty path with warm starts."""
    t_bar = float(np.clip(t.mean(), 1e-12, 1.0 - 1e-12))
    b0, beta = float(logit(t_bar)), np.zeros(z.shape[1])
    lam_top = lambda_max(z, t)

    path = []
    for lam in lambdas:
        if lam >= lam_top:
            b0, beta = float(logit(t_bar)), np.zeros(z.shape[1])
        else:
            b0, beta = _solve(z, t, float(lam), b0, beta)
        path.append((b0, beta.copy()))
    return path


def _cv_curve(
    z: np.ndarray,
    t: np.ndarray,
    lambdas: np.ndarray,
    cv_folds: int,
    seed: SeedKey,
) -> np.ndarray:
    """Mean held-out deviance per grid point."""
    n = z.shape[0]
    order = stream(seed, Stage.LASSO_CV).permutation(n)
    folds = np.empty(n, dtype=int)
    folds[order] = np.arange(n) % cv_folds

    deviances = np.zeros((cv_folds, len(lambdas)))
    for k in range(cv_folds):
        train, test = folds != k, folds == k
        t_train = t[train]
        if t_train.min() == t_train.max():
            # Constant training target: every penalty predicts the same constant
            p_const = np.clip(t_train.mean(), 1e-6, 1.0 - 1e-6)
            deviances[k] = binomial_deviance(t[test], np.full(test.sum(), p_const))
            continue
        path = _solve_path(z[train], t_train, lambdas)
        for index, (b0, beta) in enumerate(path):
            deviances[k, index] = binomial_deviance(t[test], expit(b0 + z[test] @ beta))

    return deviances.mean(axis=0)


def fit_lasso_logistic(
    x: np.ndarray,
    t: np.ndarray,
    n_lambdas: int = N_LAMBDAS,
    cv_folds: int = CV_FOLDS,
    lam: Optional[float] = None,
    seed: SeedKey = 0,
) -> LassoLogisticModel:
    """Fit an L1-penalized logistic model, choosing the penalty by K-fold CV.

    Args:
        x: n x p covariates
        t: n binary targets
        n_lambdas: Grid size from lambda_max down to 1e-3 * lambda_max
        cv_folds: CV folds used to pick lambda
        lam: Fixed penalty on the standardized scale; skips CV when given
        seed: Stream key for the CV fold shuffle

    Returns:
        LassoLogisticModel with coefficients on the original scale
    """
    x = np.asarray(x, dtype=float)
    if x.ndim == 1:
        x = x.reshape(-1, 1)
    t = np.asarray(t, dtype=float).ravel()
    n, p = x.shape

    if t.shape[0] != n:
        raise ArgumentError(f"x has {n} rows but t has {t.shape[0]}")
    if lam is None and not n >= cv_folds >= 2:
        raise ArgumentError(f"Need n >= cv_folds >= 2, got n={n}, cv_folds={cv_folds}")
    if lam is not None and lam < 0:
        raise ArgumentError(f"lam must be >= 0, got {lam}")
    if t.min() == t.max():
        raise DegenerateTargetError(f"Target is constant ({t[0]:.0f}) for all {n} rows")

    means = x.mean(axis=0)
    scales = x.std(axis=0)
    keep = scales > 1e-12 * np.maximum(1.0, np.abs(means))
    dropped = tuple(int(j) for j in np.flatnonzero(~keep))
    if dropped:
        logger.warning(f"Dropping {len(dropped)} constant columns from LASSO fit: {list(dropped)}")

    z = (x[:, keep] - means[keep]) / scales[keep]
    grid = lambda_grid(lambda_max(z, t), n_lambdas)

    cv_curve: List[Tuple[float, float]] = []
    if lam is None:
        mean_deviance = _cv_curve(z, t, grid, cv_folds, seed)
        # Grid is decreasing, so argmin returns the largest lambda among ties
        chosen = float(grid[int(np.argmin(mean_deviance))])
        cv_curve = [(float(g), float(d)) for g, d in zip(grid, mean_deviance)]
    else:
        chosen = float(lam)

    path_lambdas = np.append(grid[grid > chosen], chosen)
    b0, beta_std = _solve_path(z, t, path_lambdas)[-1]

    coefficients = np.zeros(p + 1)
    coefficients[1:][keep] = beta_std / scales[keep]
    coefficients[0] = b0 - float(np.sum(beta_std * means[keep] / scales[keep]))

    full_scales = np.where(keep, scales, 0.0)
    logger.debug(f"LASSO chose lambda={chosen:.3g} with {int(np.count_nonzero(beta_std))} active columns")

    return LassoLogisticModel(
        coefficients=coefficients,
        lam=chosen,
        cv_curve=cv_curve,
        scales=full_scales,
        dropped_columns=dropped,
    )
