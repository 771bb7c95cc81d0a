#!/usr/bin/env python
# -*- coding: utf-8 -*-
"""
Process wide switch telling the WorkerPool to stop submitting shards.

Classes:
  - KillSwitch: Singleton Class.
"""

from __future__ import annotations

import logging
import threading
from typing import Any, Optional


class KillSwitch:
    """
    Every KillSwitch() call returns the same instance. The WorkerPool consults the switch before every shard
    submission; shards already finished are still merged and cached, so an interrupted scan resumes where it stopped.
    """
    __instance: Optional[KillSwitch] = None

    def __new__(cls) -> KillSwitch:
        if cls.__instance is None:
            instance = super().__new__(cls)
            instance._killed = threading.Event()
            instance._timer = None
            cls.__instance = instance
        return cls.__instance

    @property
    def stay_alive(self) -> bool:
        return not self._killed.is_set()

    def kill(self) -> None:
        if self.stay_alive:
            logging.info("Kill switch flipped, no further shards are submitted.")
        self._killed.set()

    def reset(self) -> None:
        """
        Re-arms the switch and cancels a pending timer.
        """
        if self._timer is not None:
            self._timer.cancel()
            self._timer = None
        self._killed.clear()

    def set_timer(self, seconds: float) -> None:
        """
        Flips the switch after the given number of seconds.
        """
        self._timer = threading.Timer(seconds, self.kill)
        self._timer.daemon = True
        self._timer.start()

    def __enter__(self) -> KillSwitch:
        return self

    def __exit__(self, exc_type: Any, exc_val: Any, exc_tb: Any) -> None:
        self.reset()
