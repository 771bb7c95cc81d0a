#!/usr/bin/env python
# -*- coding: utf-8 -*-
"""
Search and verification of Zaremba numerators: the smallest numerator with bounded partial quotients for a
denominator, minimal-M records, the continuant tree of bounded fractions and resumable range scans.

Classes:
    - ZarembaWitness
    - MinimalMRecord
    - VerificationReport
    - KorobovFit

Functions:
    - find_numerator, minimal_M
    - continuant_tree, bounded_prefixes, predicted_nodes
    - verify_range, korobov_fit, coverage
"""
import logging
import math
from collections import Counter
from dataclasses import dataclass, field
from math import gcd
from typing import Dict, Iterator, List, NamedTuple, Optional, Set, Tuple

import numpy as np

from model.continued_fractions.contfrac import bounded_by
from model.scheduling.job import Job
from model.scheduling.scheduler import WorkerPool, shard
from model.storage.range_cache import RangeCache
from model.utilities.exceptions import DegenerateFitException, NodeCapExceededException, OutOfRangeException

DEFAULT_NODE_CAP = 5_000_000

# Hausdorff dimensions of reals with all quotients ≤ M, M = 2..5; larger M use 1 − 6/(π²M).
KNOWN_DIMENSIONS = {1: 0.0, 2: 0.531280506, 3: 0.705660971, 4: 0.788945557, 5: 0.836829443}


class ZarembaWitness(NamedTuple):
    """A numerator a < q with gcd(a, q) = 1 and all quotients of a/q at most M, or None."""
    q: int
    M: int
    a: Optional[int]

    @property
    def found(self) -> bool:
        return self.a is not None


class MinimalMRecord(NamedTuple):
    """Smallest achievable maximal quotient for q and the smallest numerator attaining it."""
    q: int
    M_min: int
    witness: int


@dataclass
class VerificationReport:
    """
    Outcome of verify_range. failures lists every q of the range with M_min > M.
    """
    q_lo: int
    q_hi: int
    M: int
    records: List[MinimalMRecord] = field(default_factory=list)
    failures: List[int] = field(default_factory=list)
    histogram: Dict[int, int] = field(default_factory=dict)
    computed: int = 0
    cached: int = 0
    interrupted: bool = False

    @property
    def holds(self) -> bool:
        return not self.failures and not self.interrupted


class KorobovFit(NamedTuple):
    """Least squares constant C of M_min ≈ C·log q and the largest observed ratio M_min/log q."""
    C: float
    max_ratio: float
    samples: int


def _require_q(q: int) -> None:
    if q < 2:
        raise OutOfRangeException("q", q, "q >= 2")


def find_numerator(q: int, M: int) -> ZarembaWitness:
    """
    Finds the smallest a coprime to q such that every partial quotient of a/q is at most M.

    The first quotient q // a is at most M only for a > q/(M+1), so the scan starts there; every smaller a fails
    and the result is still the smallest qualifying numerator.

    @param q: Denominator, q ≥ 2.
    @param M: Quotient bound, M ≥ 1.
    @return: The witness, with a = None if no numerator qualifies.
    """
    _require_q(q)
    if M < 1:
        raise OutOfRangeException("M", M, "M >= 1")

    for a in range(q // (M + 1) + 1, q):
        if gcd(a, q) == 1 and bounded_by(a, q, M):
            return ZarembaWitness(q, M, a)
    return ZarembaWitness(q, M, None)


def minimal_M(q: int) -> MinimalMRecord:
    """
    Iterative deepening over M = 2, 3, ...; M = 1 is impossible since a canonical expansion ends in a quotient ≥ 2.
    The witness is the smallest numerator attaining the minimum.

    @param q: Denominator, q ≥ 2.
    """
    _require_q(q)
    bound = 2
    while True:
        witness = find_numerator(q, bound)
        if witness.found:
            return MinimalMRecord(q, bound, witness.a)
        bound += 1


def estimated_dimension(M: int) -> float:
    """
    @return: The dimension w_M used to predict tree sizes.
    """
    if M in KNOWN_DIMENSIONS:
        return KNOWN_DIMENSIONS[M]
    return 1.0 - 6.0 / (math.pi ** 2 * M)


def predicted_nodes(M: int, bound: int) -> int:
    """
    @return: The predicted number bound^(2·w_M) of bounded fractions with denominator up to bound.
    """
    return int(math.ceil(bound ** (2 * estimated_dimension(M))))


def _walk_prefixes(M: int, bound: int, node_cap: int) -> Iterator[Tuple[int, int, int, int]]:
    """
    Depth first walk over nonempty quotient sequences with quotients ≤ M and continuant ≤ bound.

    @return: Iterator of (last quotient, numerator e, continuant f, depth).
    """
    stack: List[Tuple[int, int, int, int, int]] = [(0, 1, 1, 0, 0)]
    visited = 0
    while stack:
        numerator, previous_numerator, continuant, previous_continuant, depth = stack.pop()
        for quotient in range(M, 0, -1):
            next_continuant = quotient * continuant + previous_continuant
            if next_continuant > bound:
                continue
            next_numerator = quotient * numerator + previous_numerator
            visited += 1
            if visited > node_cap:
                raise NodeCapExceededException(visited, node_cap)
            yield quotient, next_numerator, next_continuant, depth + 1
            stack.append((next_numerator, numerator, next_continuant, continuant, depth + 1))


def continuant_tree(M: int, bound: int, node_cap: int = DEFAULT_NODE_CAP) -> Set[Tuple[int, int]]:
    """
    Generates all reduced fractions e/f in (0, 1) with f ≤ bound whose canonical expansion has all quotients ≤ M,
    by depth first extension of quotient sequences through the continuant recurrence. A sequence is reported iff its
    last quotient is at least 2, which makes it the canonical expansion of its value, so there are no duplicates.

    @param M: Quotient bound, M ≥ 1. M = 1 yields the empty set.
    @param bound: Largest denominator, bound ≥ 2.
    @param node_cap: Refuse trees predicted or found to be larger than this.
    @return: Set of (denominator f, numerator e).
    @raise NodeCapExceededException: If bound^(2·w_M) or the visited node count exceeds node_cap.
    """
    if M < 1:
        raise OutOfRangeException("M", M, "M >= 1")
    if bound < 2:
        raise OutOfRangeException("bound", bound, "bound >= 2")

    estimate = predicted_nodes(M, bound)
    if estimate > node_cap:
        raise NodeCapExceededException(estimate, node_cap)

    return {(continuant, numerator)
            for quotient, numerator, continuant, _ in _walk_prefixes(M, bound, node_cap)
            if quotient >= 2}


def bounded_prefixes(M: int, bound: int, node_cap: int = DEFAULT_NODE_CAP) -> List[Tuple[Tuple[int, ...], int]]:
    """
    Enumerates quotient sequences (not fractions) with quotients ≤ M and continuant ≤ bound, ordered by continuant
    and then lexicographically. With M = 1 the continuants are the Fibonacci numbers.

    @return: List of (quotients, continuant).
    """
    result = list()

    def extend(prefix: Tuple[int, ...], continuant: int, previous_continuant: int) -> None:
        for quotient in range(1, M + 1):
            next_continuant = quotient * continuant + previous_continuant
            if next_continuant > bound:
                break
            result.append((prefix + (quotient,), next_continuant))
            if len(result) > node_cap:
                raise NodeCapExceededException(len(result), node_cap)
            extend(prefix + (quotient,), next_continuant, continuant)

    extend(tuple(), 1, 0)
    return sorted(result, key=lambda item: (item[1], item[0]))


def _minimal_records(qs: List[int], known: Dict[int, int]) -> List[Tuple[int, int, int]]:
    """
    Worker function: minimal-M rows for a shard of denominators. known maps q to the smallest M = 2 numerator.
    """
    rows = list()
    for q in qs:
        if q in known:
            rows.append((q, 2, known[q]))
            continue
        bound = 3
        while True:
            witness = find_numerator(q, bound)
            if witness.found:
                rows.append((q, bound, witness.a))
                break
            bound += 1
    return rows


def _smallest_two_bounded(q_hi: int, node_cap: int) -> Dict[int, int]:
    smallest: Dict[int, int] = dict()
    for denominator, numerator in continuant_tree(2, q_hi, node_cap):
        if numerator < smallest.get(denominator, denominator):
            smallest[denominator] = numerator
    return smallest


def verify_range(q_lo: int,
                 q_hi: int,
                 M: int,
                 cache: Optional[RangeCache] = None,
                 pool: Optional[WorkerPool] = None,
                 node_cap: int = DEFAULT_NODE_CAP,
                 chunk_size: int = 2000) -> VerificationReport:
    """
    Computes minimal-M records for every q in [q_lo, q_hi] that is not cached yet and reports the q with M_min > M.
    Denominators with a numerator bounded by 2 are read off the M = 2 continuant tree when that is cheaper than
    scanning; all others are found by iterative deepening from M = 3.

    @param q_lo: First denominator, q_lo ≥ 2.
    @param q_hi: Last denominator, q_hi ≥ q_lo.
    @param M: The quotient bound to verify.
    @param cache: Resumable cache; results are appended as shards finish.
    @param pool: Worker pool for the shards.
    @param node_cap: Cap for the M = 2 tree.
    @param chunk_size: Denominators per shard.
    @return: The report.
    @raise CacheCorruptionException: If the cache fails its checksums.
    """
    if q_lo < 2:
        raise OutOfRangeException("q_lo", q_lo, "q_lo >= 2")
    if q_hi < q_lo:
        raise OutOfRangeException("q_hi", q_hi, f"q_hi >= q_lo = {q_lo}")

    cache = cache if cache is not None else RangeCache()
    pool = pool if pool is not None else WorkerPool()
    cached_rows = cache.load()

    pending = [q for q in range(q_lo, q_hi + 1) if q not in cached_rows]
    known: Dict[int, int] = dict()
    if pending and predicted_nodes(2, q_hi) <= min(node_cap, 64 * len(pending)):
        known = _smallest_two_bounded(q_hi, node_cap)
    logging.info("Verifying %s denominators in [%s, %s], %s cached, %s with a 2-bounded numerator.",
                 len(pending), q_lo, q_hi, q_hi - q_lo + 1 - len(pending), len(known))

    chunks = shard(pending, max(pool.shards, math.ceil(len(pending) / chunk_size))) if pending else []
    jobs = [Job(f"verify_{chunk[0]}_{chunk[-1]}",
                _minimal_records,
                (chunk, {q: known[q] for q in chunk if q in known}),
                key=(chunk[0],))
            for chunk in chunks]

    computed = list()
    for _, rows in pool.run(jobs, on_result=lambda job, rows: cache.append(rows)):
        computed.extend(rows)
    cache.finalize()

    rows = {q: (m_min, witness) for q, (m_min, witness) in cached_rows.items() if q_lo <= q <= q_hi}
    rows.update({q: (m_min, witness) for q, m_min, witness in computed})
    records = [MinimalMRecord(q, *rows[q]) for q in sorted(rows)]

    report = VerificationReport(q_lo=q_lo, q_hi=q_hi, M=M, records=records,
                                failures=[record.q for record in records if record.M_min > M],
                                histogram=dict(sorted(Counter(record.M_min for record in records).items())),
                                computed=len(computed),
                                cached=len(records) - len(computed),
                                interrupted=pool.interrupted)
    if report.failures:
        logging.warning("Bound M = %s fails for %s denominator(s), first %s.", M, len(report.failures),
                        report.failures[:10])
    return report


def korobov_fit(records: List[MinimalMRecord]) -> KorobovFit:
    """
    Fits M_min ≈ C·log q through the origin. The constant is reported, never asserted.

    @raise DegenerateFitException: Without any record of q ≥ 2.
    """
    logs = np.array([math.log(record.q) for record in records if record.q >= 2], dtype=float)
    values = np.array([record.M_min for record in records if record.q >= 2], dtype=float)
    if logs.size == 0 or not np.any(logs > 0):
        raise DegenerateFitException("no denominators to fit")
    constant = float(np.dot(logs, values) / np.dot(logs, logs))
    return KorobovFit(C=constant, max_ratio=float(np.max(values / logs)), samples=int(logs.size))


def coverage(records: List[MinimalMRecord], M: int) -> int:
    """
    @return: The largest X such that every q in [2, X] has a record with M_min ≤ M; 1 if q = 2 is not covered.
    """
    by_q = {record.q: record.M_min for record in records}
    limit = 1
    while by_q.get(limit + 1, M + 1) <= M:
        limit += 1
    return limit
