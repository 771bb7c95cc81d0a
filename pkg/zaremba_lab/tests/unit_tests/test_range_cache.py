#!/usr/bin/env python
# -*- coding: utf-8 -*-
# type: ignore[no-untyped-def]
"""
Tests for the resumable verification cache.
"""
import pytest

from model.continued_fractions.zaremba import verify_range
from model.storage.range_cache import HEADER_PREFIX, RangeCache
from model.utilities.exceptions import CacheCorruptionException, ConfigHashMismatchException


@pytest.fixture(name="cache_path")
def cache_path_fixture(tmp_path):
    return tmp_path.joinpath("cache", "verify.cache")


class TestRangeCache:
    """
    Appending, loading and checksums.
    """

    def test_checksum(self):
        """Sum of the fields modulo 9973."""
        assert RangeCache.checksum(10, 3, 7) == 20
        assert RangeCache.checksum(9970, 2, 1) == 0
        assert RangeCache.format_line(6, 5, 5) == "6,5,5,16\n"

    def test_append_and_load(self, cache_path):
        """Rows survive a reload and finalize sorts them."""
        cache = RangeCache(cache_path, "abc")
        cache.append([(7, 2, 5), (6, 5, 5)])
        assert 7 in cache and len(cache) == 2

        assert RangeCache(cache_path, "abc").load() == {6: (5, 5), 7: (2, 5)}
        cache.finalize()
        lines = cache_path.read_text(encoding="UTF-8").splitlines()
        assert lines == [f"{HEADER_PREFIX}abc", "6,5,5,16", "7,2,5,14"]

    def test_memory_cache(self):
        """Without a path the rows stay in memory."""
        cache = RangeCache()
        cache.append([(2, 2, 1)])
        cache.finalize()
        assert cache.load() == {2: (2, 1)}

    def test_checksum_mismatch(self, cache_path):
        """A tampered row is detected."""
        RangeCache(cache_path, "abc").append([(6, 5, 5)])
        with open(cache_path, "a", encoding="UTF-8") as file:
            file.write("7,2,5,15\n")
        with pytest.raises(CacheCorruptionException):
            RangeCache(cache_path, "abc").load()

    def test_malformed_row(self, cache_path):
        """A truncated row is detected."""
        RangeCache(cache_path, "abc").append([(6, 5, 5)])
        with open(cache_path, "a", encoding="UTF-8") as file:
            file.write("7,2\n")
        with pytest.raises(CacheCorruptionException):
            verify_range(2, 10, 5, cache=RangeCache(cache_path, "abc"))

    def test_config_hash_mismatch(self, cache_path):
        """A cache written under another config is refused."""
        RangeCache(cache_path, "abc").append([(6, 5, 5)])
        with pytest.raises(ConfigHashMismatchException):
            RangeCache(cache_path, "xyz").load()
        assert RangeCache(cache_path).load() == {6: (5, 5)}

    def test_partial_cache_is_completed(self, cache_path):
        """verify_range only computes the missing denominators."""
        cache = RangeCache(cache_path, "abc")
        cache.append([(6, 5, 5), (7, 2, 5)])
        report = verify_range(2, 20, 5, cache=RangeCache(cache_path, "abc"))
        assert report.cached == 2
        assert report.computed == 17
        assert len(RangeCache(cache_path, "abc").load()) == 19
