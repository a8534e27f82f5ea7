"""Counter-based random streams keyed by integer tuples.

Every random draw in the package comes from a Philox generator whose
SeedSequence entropy is (seed, ..., stage). Two different keys give
independent streams, and the same key gives the same stream on every
platform, so adding an estimator or a worker never perturbs a data draw.
"""

from enum import IntEnum
from typing import Sequence, Tuple, Union

import numpy as np

SeedKey = Union[int, Sequence[int]]


class Stage(IntEnum):
    """Last key component: which part of a run consumes the stream."""

    DATA = 0
    FOLDS = 1
    LASSO_CV = 2
    BOOTSTRAP = 3
    TRUTH = 4
    SYNTHETIC = 5


def as_key(seed: SeedKey) -> Tuple[int, ...]:
    """Normalize an integer or integer sequence to a key tuple."""
    if isinstance(seed, (int, np.integer)):
        key = (int(seed),)
    else:
        key = tuple(int(s) for s in seed)
    if any(k < 0 for k in key):
        raise ValueError(f"Stream keys must be non-negative, got {key}")
    return key


def stream(seed: SeedKey, *extra: int) -> np.random.Generator:
    """Generator for the key (seed..., extra...)."""
    key = as_key(seed) + tuple(int(e) for e in extra)
    return np.random.Generator(np.random.Philox(np.random.SeedSequence(key)))
