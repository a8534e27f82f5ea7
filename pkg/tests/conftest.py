"""Shared fixtures; test-wide environment is set before the package is imported."""

import os
import tempfile

# Keep the truth cache and worker pools out of the developer's environment
os.environ.setdefault("ATTRIB_CACHE_DIR", tempfile.mkdtemp(prefix="attrib-cache-"))
os.environ.setdefault("ATTRIB_WORKERS", "1")

import hypothesis
import numpy as np
import pytest

from tests.helpers import DATA_DIR

hypothesis.settings.register_profile("attrib", max_examples=100, deadline=None)
hypothesis.settings.register_profile("fast", max_examples=10, deadline=None)
hypothesis.settings.load_profile(os.getenv("HYPOTHESIS_PROFILE", "attrib"))


@pytest.fixture
def tiny_csv():
    return DATA_DIR / "tiny.csv"


@pytest.fixture
def rng():
    return np.random.default_rng(20240101)
