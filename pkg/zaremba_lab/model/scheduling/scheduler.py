#!/usr/bin/env python
# -*- coding: utf-8 -*-
"""
Module to run shardable work. The pool receives a job list, drops empty jobs, executes the remaining ones either
in-process or on a process pool and merges the results ordered by job key, so that the output never depends on the
schedule. The KillSwitch is checked before every submission.

Classes:
    - WorkerPool

Functions:
    - shard: Splits a sequence into contiguous chunks.
    - resolve_shards: Applies the ZLAB_THREADS override.
"""
import logging
import os
from concurrent.futures import ProcessPoolExecutor, as_completed
from typing import Any, Callable, List, Optional, Sequence, Tuple

from model.scheduling.job import Job
from model.utilities.kill_switch import KillSwitch

ENV_THREADS = "ZLAB_THREADS"


def resolve_shards(shards: int = 1) -> int:
    """
    @param shards: Configured shard count.
    @return: The value of ZLAB_THREADS if it is set to a positive integer, the configured count otherwise.
    """
    override = os.environ.get(ENV_THREADS)
    if override:
        try:
            value = int(override)
            if value >= 1:
                return value
        except ValueError:
            logging.warning("Ignoring invalid %s=%s.", ENV_THREADS, override)
    return max(1, int(shards))


def shard(items: Sequence[Any], count: int) -> List[List[Any]]:
    """
    Splits items into at most count contiguous, nonempty chunks of nearly equal size.
    """
    items = list(items)
    count = max(1, min(count, len(items)))
    size, remainder = divmod(len(items), count)
    chunks, start = list(), 0
    for index in range(count):
        stop = start + size + (1 if index < remainder else 0)
        if stop > start:
            chunks.append(items[start:stop])
        start = stop
    return chunks


class WorkerPool:
    """
    The pool is in charge of executing jobs and merging their results. With a single shard, or a single job,
    everything runs in-process; otherwise jobs are spread over a ProcessPoolExecutor.
    """

    def __init__(self, shards: int = 1):
        """
        Initializer for a WorkerPool.

        @param shards: Number of worker processes. ZLAB_THREADS overrides it.
        @type shards: int
        """
        self.shards = resolve_shards(shards)
        self.interrupted = False

    @staticmethod
    def remove_empty_jobs(jobs: List[Job]) -> List[Job]:
        """
        @return: The jobs whose shard is nonempty.
        """
        kept = [job for job in jobs if len(job) > 0]
        if len(kept) != len(jobs):
            logging.info("Removed %s empty job(s).", len(jobs) - len(kept))
        return kept

    def run(self,
            jobs: List[Job],
            on_result: Optional[Callable[[Job, Any], None]] = None) -> List[Tuple[Job, Any]]:
        """
        Executes all jobs.

        @param jobs: The jobs to run.
        @param on_result: Called in the owning process for each finished job, in completion order.
        @return: (job, result) pairs sorted by job key.
        """
        jobs = self.remove_empty_jobs(jobs)
        results: List[Tuple[Job, Any]] = list()

        if self.shards == 1 or len(jobs) <= 1:
            for job in jobs:
                if not KillSwitch().stay_alive:
                    self._terminate()
                    break
                result = job.execute()
                results.append((job, result))
                if on_result:
                    on_result(job, result)
        else:
            logging.info("Running %s job(s) on %s worker(s).", len(jobs), self.shards)
            with ProcessPoolExecutor(max_workers=self.shards) as executor:
                futures = dict()
                for job in jobs:
                    if not KillSwitch().stay_alive:
                        self._terminate()
                        break
                    futures[executor.submit(job.function, *job.args, **job.kwargs)] = job

                for future in as_completed(futures):
                    job = futures[future]
                    result = future.result()
                    results.append((job, result))
                    if on_result:
                        on_result(job, result)

        return sorted(results, key=lambda item: item[0].key)

    def map(self, jobs: List[Job]) -> List[Any]:
        """
        @return: The merged results only.
        """
        return [result for _, result in self.run(jobs)]

    def _terminate(self) -> None:
        self.interrupted = True
        print("\nTask got terminated.")
        logging.info("Task got terminated.")
