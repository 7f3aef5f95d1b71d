"""
Tests for the shared memo cache.
"""
from concurrent.futures import ThreadPoolExecutor

import pytest

from virnorm.repositories.memo import MemoCache


@pytest.mark.unit
class TestMemoCache:
    def test_hit_and_miss_counters(self):
        cache = MemoCache("squares")
        assert cache.get_or_compute(3, lambda: 9) == 9
        assert cache.get_or_compute(3, lambda: pytest.fail("recomputed a cached key")) == 9
        assert 3 in cache
        assert len(cache) == 1
        assert cache.stats() == {"entries": 1, "hits": 1, "misses": 1}

    def test_clear(self):
        cache = MemoCache("squares")
        cache.get_or_compute(1, lambda: 1)
        cache.clear()
        assert len(cache) == 0
        assert cache.stats() == {"entries": 0, "hits": 0, "misses": 0}

    def test_recursive_computation_reenters_the_cache(self):
        """A value built from smaller cached values must not block on its own lookup."""
        cache = MemoCache("factorial")

        def factorial(n: int) -> int:
            return cache.get_or_compute(n, lambda: 1 if n == 0 else n * factorial(n - 1))

        assert factorial(12) == 479001600
        assert len(cache) == 13
        assert factorial(5) == 120
        assert cache.stats()["hits"] == 1

    def test_concurrent_readers_share_one_value(self):
        cache = MemoCache("shared")
        keys = [i % 4 for i in range(64)]

        def read(key: int) -> object:
            return cache.get_or_compute(key, lambda: [key])

        with ThreadPoolExecutor(max_workers=8) as pool:
            results = list(pool.map(read, keys))

        stats = cache.stats()
        assert stats["entries"] == 4
        assert stats["hits"] + stats["misses"] == len(keys)
        for key, value in zip(keys, results):
            assert value is cache.get_or_compute(key, lambda: None)
            assert value == [key]
