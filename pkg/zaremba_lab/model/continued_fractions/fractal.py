#!/usr/bin/env python
# -*- coding: utf-8 -*-
"""
Cantor-type sets of bounded continued fractions: the cylinder intervals Q_M(t), the numerator sets Z_M(t) mod q,
direct sums Λ ∔ [1, N] and a box-counting estimate of the dimension w_M.

An interval of Q_M(t) belongs to every quotient prefix P = (c_1, ..., c_ν) with all c_i ≤ M, continuant f_ν < t and
f_ν + f_{ν−1} ≥ t (every one-step extension reaches t). It holds the reals whose canonical expansion starts with P,
i.e. the values between [P] and [P, 1].

Classes:
    - ZRule: Membership rule of build_ZM.
    - FractalInterval
    - FractalIntervalSet
    - DimensionEstimate
    - DiophProfile
    - SumSet

Functions:
    - build_QM, build_ZM, in_ZM, build_ZM_from_intervals
    - direct_sum_check, sumset_from_intervals
    - estimate_dimension, dioph_profile, refined_set
"""
import logging
import math
from bisect import bisect_left, bisect_right
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from math import gcd
from typing import Iterable, Iterator, List, NamedTuple, Optional, Sequence, Set, Tuple

import numpy as np
import pandas as pd

from model.continued_fractions.contfrac import convergents, expand, largest_continuant_below, qdist
from model.continued_fractions.zaremba import DEFAULT_NODE_CAP, predicted_nodes
from model.scheduling.job import Job
from model.scheduling.scheduler import WorkerPool
from model.utilities.exceptions import (DegenerateFitException, NodeCapExceededException, NotADirectSumException,
                                        OutOfRangeException)
from model.utilities.utilities import fraction_str

# (prefix, e_ν, f_ν, e_{ν−1}, f_{ν−1})
CylinderState = Tuple[Tuple[int, ...], int, int, int, int]


class ZRule(Enum):
    """
    LEAF admits a iff a/q lies in an interval of Q_M(t). PREFIX only asks the quotients up to the largest
    continuant below t to be at most M.
    """
    LEAF = "leaf"
    PREFIX = "prefix"


class FractalInterval(NamedTuple):
    """
    Cylinder of one quotient prefix. Exactly one endpoint is [P]; it is closed iff the last quotient of P is at
    least 2, since only then [P] has P as its canonical expansion. The endpoint [P, 1] is always open.
    """
    left: Fraction
    length: Fraction
    prefix: Tuple[int, ...]
    left_closed: bool
    right_closed: bool

    @property
    def right(self) -> Fraction:
        return self.left + self.length

    def __contains__(self, x: Fraction) -> bool:
        if x == self.left:
            return self.left_closed
        if x == self.right:
            return self.right_closed
        return self.left < x < self.right


def _interval_of(state: CylinderState) -> FractalInterval:
    prefix, numerator, continuant, previous_numerator, previous_continuant = state
    exact = Fraction(numerator, continuant)
    extended = Fraction(numerator + previous_numerator, continuant + previous_continuant)
    closed = prefix[-1] >= 2
    length = Fraction(1, continuant * (continuant + previous_continuant))
    if exact < extended:
        return FractalInterval(exact, length, prefix, closed, False)
    return FractalInterval(extended, length, prefix, False, closed)


@dataclass
class FractalIntervalSet:
    """
    The intervals of Q_M(t), pairwise disjoint and sorted by left endpoint.
    """
    t: int
    M: int
    intervals: List[FractalInterval] = field(default_factory=list)

    def __post_init__(self) -> None:
        self.intervals = sorted(self.intervals, key=lambda interval: interval.left)
        self._lefts = [interval.left for interval in self.intervals]

    @property
    def count(self) -> int:
        return len(self.intervals)

    def contains(self, x: Fraction) -> bool:
        """
        Exact membership test. An endpoint shared by two neighbours belongs to at most one of them, so the two
        nearest candidates are checked.
        """
        index = bisect_right(self._lefts, x)
        return any(x in self.intervals[candidate] for candidate in (index - 1, index - 2) if candidate >= 0)

    def length_band(self) -> Tuple[Fraction, Fraction]:
        """
        @return: Smallest and largest interval length.
        """
        lengths = [interval.length for interval in self.intervals]
        return min(lengths), max(lengths)

    def to_frame(self) -> pd.DataFrame:
        """
        @return: One row per interval with exact endpoints as "p/q" strings.
        """
        return pd.DataFrame([{"left": fraction_str(interval.left),
                              "right": fraction_str(interval.right),
                              "length": fraction_str(interval.length),
                              "left_closed": interval.left_closed,
                              "right_closed": interval.right_closed,
                              "prefix": " ".join(str(quotient) for quotient in interval.prefix)}
                             for interval in self.intervals],
                            columns=["left", "right", "length", "left_closed", "right_closed", "prefix"])


@dataclass
class DimensionEstimate:
    """
    Box-counting estimate of w_M: the slope of log(count) against 2·log(t). ratios are count / t^(2·w_hat), the
    measured constants of count ≍ t^(2·w_M).
    """
    M: int
    t_samples: Tuple[int, ...]
    counts: Tuple[int, ...]
    w_hat: float
    intercept: float
    residual: float
    degenerate: bool = False
    ratios: Tuple[float, ...] = tuple()

    @property
    def hensley_gap(self) -> float:
        """M·(1 − w_hat), which stays bounded as M grows."""
        return self.M * (1.0 - self.w_hat)


class DiophProfile(NamedTuple):
    """
    For members a of Z_M(t): how many satisfy x·|ax|_q > q/(4M), resp. > q/M, for every 1 ≤ x ≤ t.
    """
    q: int
    t: int
    M: int
    members: int
    quarter_holds: int
    full_holds: int
    quarter_failures: Tuple[int, ...]
    full_failures: Tuple[int, ...]


def _require_t_m(t: int, M: int) -> None:
    if t < 2:
        raise OutOfRangeException("t", t, "t >= 2")
    if M < 1:
        raise OutOfRangeException("M", M, "M >= 1")


def _cylinders(first: int, t: int, M: int, node_cap: int) -> List[CylinderState]:
    """
    Worker function: all leaf prefixes starting with the quotient first, depth first.
    """
    leaves: List[CylinderState] = list()
    stack = [((first,), 1, first, 0, 1)]
    visited = 0
    while stack:
        prefix, numerator, continuant, previous_numerator, previous_continuant = stack.pop()
        visited += 1
        if visited > node_cap:
            raise NodeCapExceededException(visited, node_cap)
        if continuant + previous_continuant >= t:
            leaves.append((prefix, numerator, continuant, previous_numerator, previous_continuant))
            continue
        for quotient in range(M, 0, -1):
            next_continuant = quotient * continuant + previous_continuant
            if next_continuant >= t:
                continue
            stack.append((prefix + (quotient,),
                          quotient * numerator + previous_numerator,
                          next_continuant,
                          numerator,
                          continuant))
    return leaves


def build_QM(t: int,
             M: int,
             node_cap: int = DEFAULT_NODE_CAP,
             pool: Optional[WorkerPool] = None) -> FractalIntervalSet:
    """
    Builds Q_M(t). Subtrees below distinct first quotients are independent jobs; the intervals are merged by left
    endpoint.

    @param t: Continuant threshold, t ≥ 2.
    @type t: int
    @param M: Quotient bound, M ≥ 1.
    @type M: int
    @param node_cap: Largest admissible prefix tree.
    @param pool: Optional worker pool for the subtrees.
    @return: The interval set; exactly one interval for M = 1.
    @rtype: FractalIntervalSet
    @raise NodeCapExceededException: If the predicted or visited tree is larger than node_cap.
    """
    _require_t_m(t, M)
    estimate = predicted_nodes(M, t)
    if estimate > node_cap:
        raise NodeCapExceededException(estimate, node_cap)

    pool = pool if pool is not None else WorkerPool()
    jobs = [Job(f"cylinders_{first}", _cylinders, (first, t, M, node_cap), key=(first,))
            for first in range(1, min(M, t - 1) + 1)]
    intervals = [_interval_of(state) for leaves in pool.map(jobs) for state in leaves]
    logging.info("Q_%s(%s) consists of %s intervals.", M, t, len(intervals))
    return FractalIntervalSet(t, M, intervals)


def _require_modulus(q: int, t: int, M: int) -> None:
    if q < 2:
        raise OutOfRangeException("q", q, "q >= 2")
    _require_t_m(t, M)
    if t * t >= q:
        logging.warning("t = %s is not below sqrt(q) for q = %s; Z_M(t) loses its fractal structure.", t, q)


def in_ZM(a: int, q: int, t: int, M: int, rule: ZRule = ZRule.LEAF) -> bool:
    """
    Membership of a in Z_M(t), read off the convergents of a/q. ν is the index of the largest continuant
    f_ν < t; c_1..c_ν must be at most M, and for the LEAF rule f_ν + f_{ν−1} ≥ t as well.
    """
    sequence = convergents(expand(a, q))
    index = largest_continuant_below(sequence, t)
    if any(quotient > M for quotient in sequence.quotients[:index]):
        return False
    if rule is ZRule.PREFIX:
        return True
    return sequence.continuants[index] + sequence.previous_continuant(index) >= t


def build_ZM(q: int, t: int, M: int, rule: ZRule = ZRule.LEAF) -> Set[int]:
    """
    Collects the numerators of Z_M(t) modulo q. Only a coprime to q are admitted.

    @param q: The modulus.
    @param t: Continuant threshold; t < √q is expected and a warning is logged otherwise.
    @param M: Quotient bound.
    @param rule: Membership rule, LEAF by default.
    @return: Set of numerators a in [1, q).
    """
    _require_modulus(q, t, M)
    return {a for a in range(1, q) if gcd(a, q) == 1 and in_ZM(a, q, t, M, rule)}


def build_ZM_from_intervals(q: int, t: int, M: int, intervals: Optional[FractalIntervalSet] = None) -> Set[int]:
    """
    The LEAF set Z_M(t) obtained by exact interval containment of a/q in Q_M(t).
    """
    _require_modulus(q, t, M)
    intervals = intervals if intervals is not None else build_QM(t, M)
    return {a for a in range(1, q) if gcd(a, q) == 1 and intervals.contains(Fraction(a, q))}


def direct_sum_check(base: Iterable[int], N: int, q: int) -> bool:
    """
    Decides whether the sums λ + j, λ ∈ Λ, j ∈ [1, N], are pairwise distinct modulo q. That is the case iff
    N ≤ q and any two distinct base points are at circular distance at least N.

    @param base: The base points Λ as residues.
    @param N: Interval length, N ≥ 1.
    @param q: The modulus.
    @return: True iff the sum is direct.
    """
    if N < 1:
        raise OutOfRangeException("N", N, "N >= 1")
    if q < 1:
        raise OutOfRangeException("q", q, "q >= 1")

    points = sorted({point % q for point in base})
    if N > q or len(points) * N > q:
        return False
    if len(points) < 2:
        return True

    gaps = [following - point for point, following in zip(points, points[1:])]
    gaps.append(q - points[-1] + points[0])
    return min(gaps) >= N


@dataclass(frozen=True)
class SumSet:
    """
    The direct sum Λ ∔ [1, N] ⊂ ℤ/qℤ. The base is stored sorted; construction fails unless every element has a
    unique representation λ + j.
    """
    q: int
    base: Tuple[int, ...]
    N: int

    def __post_init__(self) -> None:
        object.__setattr__(self, "base", tuple(sorted({point % self.q for point in self.base})))
        if not direct_sum_check(self.base, self.N, self.q):
            raise NotADirectSumException(self.q, self.N)

    def __len__(self) -> int:
        return len(self.base) * self.N

    def __contains__(self, x: int) -> bool:
        x %= self.q
        low, high = x - self.N, x - 1
        if low >= 0:
            return self._points_between(low, high)
        if high < 0:
            return self._points_between(low + self.q, high + self.q)
        # The window [x − N, x − 1] wraps around 0.
        return self._points_between(0, high) or self._points_between(low + self.q, self.q - 1)

    def _points_between(self, low: int, high: int) -> bool:
        return bisect_right(self.base, high) > bisect_left(self.base, low)

    def __iter__(self) -> Iterator[int]:
        return iter(self.elements())

    def blocks(self) -> List[Tuple[int, int]]:
        """
        @return: (λ + 1, λ + N) per base point, reduced modulo q.
        """
        return [((point + 1) % self.q, (point + self.N) % self.q) for point in self.base]

    def elements(self) -> List[int]:
        """
        @return: The |Λ|·N elements in increasing order.
        """
        return sorted((point + offset) % self.q for point in self.base for offset in range(1, self.N + 1))

    def negate(self) -> "SumSet":
        """
        −(Λ ∔ [1, N]) = (−Λ − N − 1) ∔ [1, N].
        """
        return SumSet(self.q, tuple((-point - self.N - 1) % self.q for point in self.base), self.N)

    def to_frame(self) -> pd.DataFrame:
        return pd.DataFrame([{"element": element, "fraction": fraction_str(Fraction(element, self.q))}
                             for element in self.elements()],
                            columns=["element", "fraction"])


def _runs(values: Sequence[int]) -> List[Tuple[int, int]]:
    runs: List[Tuple[int, int]] = list()
    for value in values:
        if runs and runs[-1][1] + 1 == value:
            runs[-1] = (runs[-1][0], value)
        else:
            runs.append((value, value))
    return runs


def sumset_from_intervals(q: int, t: int, M: int, N: int, members: Optional[Set[int]] = None) -> SumSet:
    """
    Carves a direct sum Λ ∔ [1, N] out of Z_M(t): maximal runs of consecutive members are cut into blocks of N,
    λ = start − 1 + k·N. Blocks never wrap around q, so the sum is direct.

    @param members: Precomputed Z_M(t), LEAF rule.
    """
    if N < 1:
        raise OutOfRangeException("N", N, "N >= 1")
    members = members if members is not None else build_ZM(q, t, M)
    base = list()
    for start, stop in _runs(sorted(members)):
        for block in range((stop - start + 1) // N):
            base.append(start - 1 + block * N)
    logging.info("Sum set for q = %s, t = %s, M = %s, N = %s has %s base points.", q, t, M, N, len(base))
    return SumSet(q, tuple(base), N)


def estimate_dimension(M: int,
                       t_samples: Sequence[int],
                       node_cap: int = DEFAULT_NODE_CAP,
                       pool: Optional[WorkerPool] = None) -> DimensionEstimate:
    """
    Fits log(#Q_M(t)) = 2·w·log(t) + c by unweighted least squares with natural logs.

    @param M: Quotient bound.
    @param t_samples: At least three increasing thresholds ≥ 2.
    @return: The estimate. Constant counts (M = 1) give w_hat = 0 and are flagged degenerate.
    @raise DegenerateFitException: If the thresholds carry no variance.
    """
    samples = tuple(int(t) for t in t_samples)
    if len(samples) < 3:
        raise OutOfRangeException("t_samples", list(samples), "at least 3 values")
    if any(following <= sample for sample, following in zip(samples, samples[1:])):
        raise OutOfRangeException("t_samples", list(samples), "strictly increasing values")
    if samples[0] < 2:
        raise OutOfRangeException("t_samples", list(samples), "values >= 2")

    counts = tuple(build_QM(t, M, node_cap, pool).count for t in samples)
    x = 2.0 * np.log(np.array(samples, dtype=float))
    y = np.log(np.array(counts, dtype=float))
    if np.var(x) == 0:
        raise DegenerateFitException("the thresholds have no variance")

    if np.var(y) == 0:
        logging.warning("Interval counts for M = %s are constant; the slope is 0.", M)
        return DimensionEstimate(M, samples, counts, 0.0, float(y[0]), 0.0, True,
                                 tuple(float(count) for count in counts))

    slope, intercept = np.polyfit(x, y, 1)
    residual = float(np.sqrt(np.mean((y - (slope * x + intercept)) ** 2)))
    ratios = tuple(float(count / math.exp(slope * value)) for count, value in zip(counts, x))
    return DimensionEstimate(M, samples, counts, float(slope), float(intercept), residual, False, ratios)


def dioph_profile(q: int, t: int, M: int, members: Optional[Iterable[int]] = None) -> DiophProfile:
    """
    Evaluates min_{1≤x≤t} x·|ax|_q for every member and compares it with q/(4M) and q/M.

    @param members: Numerators to profile, Z_M(t) (LEAF) by default.
    """
    members = sorted(members) if members is not None else sorted(build_ZM(q, t, M))
    vectorized = q < 2 ** 31
    x = np.arange(1, t + 1, dtype=np.int64) if vectorized else None
    quarter_failures, full_failures = list(), list()
    for a in members:
        if not vectorized:
            smallest = min(value * qdist(a * value, q) for value in range(1, t + 1))
        else:
            residues = a * x % q
            smallest = int(np.min(x * np.minimum(residues, q - residues)))
        if 4 * M * smallest <= q:
            quarter_failures.append(a)
        if M * smallest <= q:
            full_failures.append(a)

    return DiophProfile(q=q, t=t, M=M, members=len(members),
                        quarter_holds=len(members) - len(quarter_failures),
                        full_holds=len(members) - len(full_failures),
                        quarter_failures=tuple(quarter_failures),
                        full_failures=tuple(full_failures))


def refined_set(q: int, t: int, M: int, M_star: int, H: float) -> Set[int]:
    """
    Z_M(t) ∩ Z_{M*}(tH): bounded by M up to t and by M* up to the larger threshold round(t·H).
    """
    if M_star < M:
        raise OutOfRangeException("M_star", M_star, f"M_star >= M = {M}")
    larger = max(t, int(round(t * H)))
    coarse = build_ZM(q, t, M)
    return {a for a in coarse if in_ZM(a, q, larger, M_star)}
