#!/usr/bin/env python
# -*- coding: utf-8 -*-
"""
Append-only text cache for minimal-M scans. Every data line reads "q,M_min,witness,checksum" with
checksum = (q + M_min + witness) mod 9973. The first line carries the config hash the cache was written with.

Classes:
    - RangeCache
"""
import logging
import os
from pathlib import Path
from typing import Dict, Iterable, Optional, Tuple, Union

from model.utilities.exceptions import CacheCorruptionException, ConfigHashMismatchException

CHECKSUM_MODULUS = 9973
HEADER_PREFIX = "# config_hash: "


class RangeCache:
    """
    Resumable cache of (q, M_min, witness) rows. The process that owns the cache is its only writer; workers hand
    their rows back and the owner appends them. finalize() rewrites the file sorted by q.

    A cache without path keeps its rows in memory only.
    """

    def __init__(self, path: Optional[Union[str, Path]] = None, config_hash: Optional[str] = None):
        """
        @param path: Location of the cache file, None for an in-memory cache.
        @param config_hash: Hash of the config the rows belong to. A file written under another hash is refused.
        """
        self.path = Path(path) if path is not None else None
        self.config_hash = config_hash
        self._rows: Dict[int, Tuple[int, int]] = dict()

    @staticmethod
    def checksum(q: int, m_min: int, witness: int) -> int:
        """
        @return: The decimal sum of the fields modulo 9973.
        """
        return (q + m_min + witness) % CHECKSUM_MODULUS

    @staticmethod
    def format_line(q: int, m_min: int, witness: int) -> str:
        """
        @return: One cache line including its trailing newline.
        """
        return f"{q},{m_min},{witness},{RangeCache.checksum(q, m_min, witness)}\n"

    def _parse_line(self, line: str, line_number: int) -> Tuple[int, int, int]:
        fields = line.strip().split(",")
        try:
            q, m_min, witness, checksum = (int(field) for field in fields)
        except ValueError as error:
            raise CacheCorruptionException(self.path, line_number, line) from error

        if checksum != RangeCache.checksum(q, m_min, witness):
            raise CacheCorruptionException(self.path, line_number, line)
        return q, m_min, witness

    def load(self) -> Dict[int, Tuple[int, int]]:
        """
        Reads the cache.

        @return: Dict q -> (M_min, witness).
        @raise CacheCorruptionException: On malformed lines or checksum mismatch.
        @raise ConfigHashMismatchException: If the file was written with another config hash.
        """
        if self.path is None or not self.path.exists():
            return dict(self._rows)

        rows: Dict[int, Tuple[int, int]] = dict()
        with open(self.path, "r", encoding="UTF-8") as file:
            for line_number, line in enumerate(file, start=1):
                if not line.strip():
                    continue
                if line.startswith(HEADER_PREFIX):
                    found = line[len(HEADER_PREFIX):].strip()
                    if self.config_hash and found != self.config_hash:
                        raise ConfigHashMismatchException(self.path, self.config_hash, found)
                    continue
                if line.startswith("#"):
                    continue
                q, m_min, witness = self._parse_line(line, line_number)
                rows[q] = (m_min, witness)

        logging.info("Loaded %s cached rows from %s.", len(rows), self.path)
        self._rows = rows
        return dict(rows)

    def append(self, rows: Iterable[Tuple[int, int, int]]) -> None:
        """
        Appends (q, M_min, witness) rows and flushes them to disk.
        """
        rows = list(rows)
        for q, m_min, witness in rows:
            self._rows[q] = (m_min, witness)

        if self.path is None or not rows:
            return

        is_new = not self.path.exists() or os.path.getsize(self.path) == 0
        if is_new and self.path.parent:
            os.makedirs(self.path.parent, exist_ok=True)
        with open(self.path, "a", encoding="UTF-8") as file:
            if is_new:
                file.write(f"{HEADER_PREFIX}{self.config_hash or ''}\n")
            file.writelines(RangeCache.format_line(q, m_min, witness) for q, m_min, witness in rows)
            file.flush()

    def finalize(self) -> None:
        """
        Rewrites the cache sorted by q, dropping duplicate rows.
        """
        if self.path is None:
            return

        rows = self.load()
        with open(self.path, "w", encoding="UTF-8") as file:
            file.write(f"{HEADER_PREFIX}{self.config_hash or ''}\n")
            file.writelines(RangeCache.format_line(q, *rows[q]) for q in sorted(rows))

    def __contains__(self, q: int) -> bool:
        return q in self._rows

    def __len__(self) -> int:
        return len(self._rows)
