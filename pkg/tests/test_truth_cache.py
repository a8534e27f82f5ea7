"""SQLite truth cache."""

import pytest

from src.estimation.types import Estimand
from src.simulation import truth_cache
from src.simulation.registry import get_case
from src.simulation.truth_cache import TruthCache, cached_true_value


@pytest.fixture
def cache(tmp_path):
    with TruthCache(tmp_path / "truth.db") as c:
        yield c


def test_miss_then_hit(cache):
    assert cache.get("1", Estimand.PN, 1000, 7) is None
    cache.put("1", Estimand.PN, 1000, 7, 0.625)
    assert cache.get("1", Estimand.PN, 1000, 7) == 0.625


def test_key_includes_every_component(cache):
    cache.put("1", Estimand.PN, 1000, (7, 1), 0.5)
    assert cache.get("1", Estimand.PS, 1000, (7, 1)) is None
    assert cache.get("1", Estimand.PN, 2000, (7, 1)) is None
    assert cache.get("1", Estimand.PN, 1000, 7) is None
    assert cache.get("8-two-dim", Estimand.PN, 1000, (7, 1)) is None


def test_values_persist_across_connections(tmp_path):
    path = tmp_path / "nested" / "truth.db"
    with TruthCache(path) as cache:
        cache.put("3", Estimand.PS, 500, 1, 0.25)
    with TruthCache(path) as cache:
        assert cache.get("3", Estimand.PS, 500, 1) == 0.25
        assert cache.entries() == [
            {"case_key": "3", "estimand": "ps", "samples": 500, "seed": "1", "value": 0.25}
        ]


def test_cached_true_value_computes_once(cache, monkeypatch):
    calls = []
    original = truth_cache.true_value

    def counting(*args):
        calls.append(args)
        return original(*args)

    monkeypatch.setattr(truth_cache, "true_value", counting)
    spec = get_case(1)

    first = cached_true_value(spec, Estimand.PN, 10_000, 3, cache)
    second = cached_true_value(spec, Estimand.PN, 10_000, 3, cache)

    assert first == second
    assert len(calls) == 1


def test_without_cache_matches_cached_value(cache):
    spec = get_case(2)
    assert cached_true_value(spec, Estimand.PN, 10_000, 4) == cached_true_value(
        spec, Estimand.PN, 10_000, 4, cache
    )
