"""K-fold cross-fitting of the propensity score and arm-specific outcome models."""

import logging
from typing import List, Optional, Set, Tuple

import numpy as np

from src.config import config
from src.data.models import Dataset
from src.errors import (
    ArgumentError,
    DegenerateTargetError,
    DivergedError,
    UnestimableArmError,
)
from src.estimation.types import Flag, PropensitySource
from src.nuisance.lasso import fit_lasso_logistic
from src.nuisance.logistic import fit_logistic
from src.nuisance.models import ConstantModel, LogisticModel, NuisanceFit, NuisanceModel
from src.nuisance.streams import SeedKey, Stage, as_key, stream

logger = logging.getLogger(__name__)

# Sub-stream ids for the three nuisance targets
TARGET_E, TARGET_MU0, TARGET_MU1 = 0, 1, 2


def assign_folds(n: int, k: int, seed: SeedKey) -> np.ndarray:
    """Seeded uniform shuffle dealt round-robin into k folds.

    Fold sizes differ by at most one and the n % k larger folds are the
    lowest fold ids.
    """
    order = stream(seed, Stage.FOLDS).permutation(n)
    fold_id = np.empty(n, dtype=int)
    fold_id[order] = np.arange(n) % k
    return fold_id


def training_indices(fold_id: np.ndarray, fold: int) -> np.ndarray:
    """Units used to train the models that predict fold `fold`."""
    return np.flatnonzero(np.asarray(fold_id) != fold)


def _fit_target(
    x: np.ndarray,
    t: np.ndarray,
    model: NuisanceModel,
    seed: Tuple[int, ...],
    flags: Set[Flag],
):
    """Fit one nuisance target, degrading to a usable model on separation."""
    try:
        if model == NuisanceModel.LASSO:
            return fit_lasso_logistic(x, t, seed=seed)
        return fit_logistic(x, t)
    except DegenerateTargetError:
        flags.add(Flag.CONSTANT_TARGET)
        return ConstantModel(float(t[0]))
    except DivergedError as e:
        logger.debug(f"Using last IRLS iterate after: {e.message}")
        flags.add(Flag.SEPARATION)
        return LogisticModel(e.coefficients, False, 0, float("nan"))


def cross_fit(
    d: Dataset,
    k: int = 5,
    model: NuisanceModel = NuisanceModel.LOGISTIC,
    known_e: Optional[np.ndarray] = None,
    seed: SeedKey = 0,
    clip_eps: Optional[float] = None,
) -> NuisanceFit:
    """Cross-fitted predictions of e(X), mu0(X) and mu1(X).

    For each fold the three models are trained on the other folds (mu0 on
    units with A=0, mu1 on units with A=1) and predict the held-out fold.
    When a training complement lacks one arm, that arm's model is fitted on
    every unit of the arm in the data and ARM_FALLBACK is flagged.

    Args:
        d: Observed data
        k: Number of folds
        model: Learner for all three targets
        known_e: Caller-supplied propensities; replaces the propensity model
        seed: Stream key for the fold shuffle and LASSO CV
        clip_eps: Clip estimated propensities to [eps, 1 - eps]

    Returns:
        NuisanceFit with predictions assembled in unit order
    """
    eps = config.clip_eps if clip_eps is None else clip_eps
    n = d.n

    if k < 2:
        raise ArgumentError(f"Cross-fitting needs k >= 2, got {k}")
    if n < 2 * k:
        raise ArgumentError(f"Cross-fitting with k={k} needs n >= {2 * k}, got {n}")
    if not 0.0 < eps < 0.5:
        raise ArgumentError(f"clip_eps must lie in (0, 0.5), got {eps}")

    if known_e is not None:
        known_e = np.asarray(known_e, dtype=float).ravel()
        if known_e.shape[0] != n:
            raise ArgumentError(f"known_e has {known_e.shape[0]} entries, expected {n}")
        if not np.all((known_e > 0.0) & (known_e < 1.0)):
            raise ArgumentError("Known propensities must lie strictly inside (0, 1)")

    for arm in (0, 1):
        if not np.any(d.a == arm):
            raise UnestimableArmError(f"No units with A={arm}; mu{arm}(X) cannot be fitted")

    key = as_key(seed)
    fold_id = assign_folds(n, k, key)
    flags: Set[Flag] = set()

    e_hat = np.empty(n)
    mu_hat = {0: np.empty(n), 1: np.empty(n)}

    for fold in range(k):
        test = fold_id == fold
        train = ~test
        x_train = d.x[train]

        if known_e is None:
            e_model = _fit_target(
                x_train, d.a[train], model, key + (fold, TARGET_E), flags
            )
            e_hat[test] = e_model.predict(d.x[test])

        for arm, target in ((0, TARGET_MU0), (1, TARGET_MU1)):
            in_arm = train & (d.a == arm)
            if not in_arm.any():
                logger.warning(
                    f"Fold {fold}: training complement has no A={arm} units, "
                    f"fitting mu{arm} on all A={arm} units"
                )
                flags.add(Flag.ARM_FALLBACK)
                in_arm = d.a == arm
            mu_model = _fit_target(
                d.x[in_arm], d.y[in_arm], model, key + (fold, target), flags
            )
            mu_hat[arm][test] = mu_model.predict(d.x[test])

    if known_e is None:
        e_hat = np.clip(e_hat, eps, 1.0 - eps)
        source = PropensitySource.ESTIMATED
    else:
        e_hat = known_e
        source = PropensitySource.KNOWN

    return NuisanceFit(
        e_hat=e_hat,
        mu0_hat=np.clip(mu_hat[0], 0.0, 1.0),
        mu1_hat=np.clip(mu_hat[1], 0.0, 1.0),
        propensity_source=source,
        fold_id=fold_id,
        warnings=tuple(sorted(flags, key=lambda f: f.value)),
    )


def fold_sizes(nf: NuisanceFit) -> List[int]:
    return np.bincount(nf.fold_id).tolist()
