#!/usr/bin/env python
# -*- coding: utf-8 -*-
"""
Progress line for long scans, written to stderr so stdout and the result files stay untouched. A disabled loader
counts but prints nothing.

Classes:
  - Loader
"""
import sys
from shutil import get_terminal_size
from typing import Any, Optional, TextIO

from colorama import Fore, Style, init

init()

SPINNER = "|/-\\"
COLORS = {"default": "", "red": Fore.RED, "green": Style.BRIGHT + Fore.GREEN}


class Loader:
    """
    Redraws "<desc> <done>/<total> (<percent> %)" whenever the counter moves. Without a total only the spinner turns.
    """

    def __init__(self,
                 desc: str = "Working...",
                 end: str = "Done",
                 max_counter: Optional[int] = None,
                 enabled: bool = True,
                 stream: TextIO = sys.stderr):
        """
        @param desc: Description in front of the progress.
        @param end: Final message.
        @param max_counter: Number of work items, e.g. the bounds M of a dimension run.
        @param enabled: False suppresses all output.
        @param stream: Output stream.
        """
        self.desc = desc
        self.end = end
        self.counter = 0
        self.max_count = max_counter if max_counter and max_counter > 0 else None
        self.enabled = enabled
        self.stream = stream

    def _line(self) -> str:
        step = SPINNER[self.counter % len(SPINNER)]
        if self.max_count:
            percent = min(self.counter / self.max_count, 1.0) * 100
            return f"{self.desc} {self.counter}/{self.max_count} ({percent:.1f} %) {step}"
        return f"{self.desc} {step}"

    def _draw(self) -> None:
        if self.enabled:
            self.stream.write(f"\r{self._line()}")
            self.stream.flush()

    def start(self) -> "Loader":
        self._draw()
        return self

    def increment(self, step_size: int = 1) -> None:
        self.counter += step_size
        self._draw()

    def stop(self, color: str = "green") -> None:
        """
        Clears the progress line and prints the final message.

        @param color: One of "default", "red" or "green".
        """
        if not self.enabled:
            return
        cols = get_terminal_size((80, 20)).columns
        self.stream.write("\r" + " " * cols)
        self.stream.write(COLORS[color] + f"\r{self.end}\n" + Style.RESET_ALL)
        self.stream.flush()

    def __enter__(self) -> "Loader":
        return self.start()

    def __exit__(self, exc_type: Any, exc_value: Any, traceback: Any) -> None:
        self.stop("red" if exc_type else "green")
