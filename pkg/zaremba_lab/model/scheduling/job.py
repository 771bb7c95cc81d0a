#!/usr/bin/env python
# -*- coding: utf-8 -*-
"""
Module providing a job, i.e. one shard of shardable work.

Classes:
    - Job
"""
from typing import Any, Callable, Dict, Optional, Sequence, Tuple


class Job:
    """
    Represents one shard that is executed by the WorkerPool. A job only holds the information for its task:
    a module level function (so that it can be sent to a worker process), its positional arguments and the
    key that orders its result in the deterministic merge.
    """

    def __init__(self,
                 name: str,
                 function: Callable[..., Any],
                 args: Sequence[Any] = (),
                 key: Optional[Tuple[Any, ...]] = None,
                 kwargs: Optional[Dict[str, Any]] = None):
        """
        Initializer of a job.

        @param name: Name of the job, used in logs.
        @type name: str
        @param function: Picklable callable doing the work.
        @param args: Positional arguments for the function.
        @param key: Merge key; defaults to the name.
        @param kwargs: Keyword arguments for the function.
        """
        self.name = name
        self.function = function
        self.args = tuple(args)
        self.kwargs = kwargs or dict()
        self.key = key if key is not None else (name,)

    def __len__(self) -> int:
        """
        @return: The size of the first argument if it is a sequence, which is the shard size for sharded scans.
        """
        try:
            return len(self.args[0])
        except (IndexError, TypeError):
            return 1

    def execute(self) -> Any:
        """
        Runs the job in the current process.
        """
        return self.function(*self.args, **self.kwargs)

    def __repr__(self) -> str:
        return f"Job({self.name!r}, key={self.key!r})"
