#!/usr/bin/env python
# -*- coding: utf-8 -*-
"""
Clock access for manifests, log file names and optional runtime fields.

Classes:
- TimeHelper
"""

import time
from datetime import datetime, timezone

LOG_STAMP_FORMAT = "%Y-%m-%d_%H-%M-%S"


class TimeHelper:
    """
    Wall clock readings are timezone aware (UTC+0) and truncated to milliseconds. Runtimes are measured with the
    monotonic performance counter, so they never go backwards.
    """

    @staticmethod
    def now() -> datetime:
        """
        @return: The current datetime (UTC+0).
        @rtype: datetime
        """
        now = datetime.now(tz=timezone.utc)
        return now.replace(microsecond=now.microsecond - now.microsecond % 1000)

    @staticmethod
    def now_iso() -> str:
        return TimeHelper.now().isoformat()

    @staticmethod
    def log_stamp() -> str:
        """
        @return: The current datetime in a form usable as file name.
        """
        return TimeHelper.now().strftime(LOG_STAMP_FORMAT)

    @staticmethod
    def counter() -> float:
        return time.perf_counter()

    @staticmethod
    def elapsed_ms(start: float) -> int:
        """
        @param start: A reading of counter().
        @return: Milliseconds since start, rounded.
        """
        return int(round((time.perf_counter() - start) * 1000))
