#!/usr/bin/env python
# -*- coding: utf-8 -*-
"""
Instance checkers for the pieces of the counting argument: N*-good intervals, the window of critical
denominators, small triple relations |m₁bx′ + m₂by + m₃bz|_q and repelling triples. Each checker evaluates its
predicate on concrete numbers only.

Classes:
    - GoodIntervalReport
    - TripleRelation / TripleScan
    - CriticalWindow
    - ProbeMagnitudes

Functions:
    - invert_set
    - nstar_good
    - small_triple_scan / pigeonhole_guaranteed
    - repelling_check
    - critical_window_check
    - probe_magnitudes / find_repelling_continuant
    - run_probes
"""
import logging
from bisect import bisect_left
from fractions import Fraction
from itertools import product
from math import gcd
from typing import Any, Dict, Iterable, List, NamedTuple, Optional, Sequence, Set, Tuple

from model.arithmetic.number_theory import batch_inverse, mod_inverse
from model.continued_fractions.contfrac import convergents, critical_denominators, expand, qdist
from model.continued_fractions.fractal import SumSet, in_ZM
from model.experiments.report import ExperimentConfig
from model.utilities.exceptions import OutOfRangeException


def invert_set(A: Iterable[int], q: int) -> Set[int]:
    """
    @return: {a⁻¹ mod q : a ∈ A}.
    @raise NonUnitException: If an element is not a unit.
    """
    elements = sorted({element % q for element in A})
    if not elements:
        return set()
    return set(batch_inverse(elements, q))


class GoodIntervalReport(NamedTuple):
    """Share of the length-N* subintervals of [start, start + length) that meet the target set."""
    start: int
    length: int
    Nstar: int
    subintervals: int
    hits: int
    hit_fraction: Fraction
    threshold: float
    good: bool


def _meets(target: Sequence[int], low: int, high: int, q: int) -> bool:
    """Whether the sorted residues in target meet [low, high) taken modulo q."""
    if high - low >= q:
        return bool(target)
    low, high = low % q, high % q
    if low < high:
        position = bisect_left(target, low)
        return position < len(target) and target[position] < high
    return bisect_left(target, high) > 0 or bisect_left(target, low) < len(target)


def _subintervals(start: int, length: int, Nstar: int) -> List[Tuple[int, int]]:
    full, rest = divmod(length, Nstar)
    subintervals = [(start + index * Nstar, start + (index + 1) * Nstar) for index in range(full)]
    # A ragged tail counts when it is at least half as long as the others.
    if rest and 2 * rest >= Nstar:
        subintervals.append((start + full * Nstar, start + length))
    return subintervals


def nstar_good(intervals: Iterable[Tuple[int, int]],
               target: Iterable[int],
               Nstar: int,
               eta: float,
               q: int) -> List[GoodIntervalReport]:
    """
    @param intervals: (start, length) pairs, start in [0, q), length ≤ q.
    @param target: Residues, e.g. A⁻¹.
    @param Nstar: Subinterval length, N* ≥ 1.
    @param eta: Good means a hit fraction of at least 1 − N*^{−η/2}.
    @return: One report per interval, in input order.
    """
    if Nstar < 1:
        raise OutOfRangeException("Nstar", Nstar, "Nstar >= 1")
    residues = sorted({element % q for element in target})
    threshold = 1.0 - Nstar ** (-eta / 2)
    reports = list()
    for start, length in intervals:
        if not 0 <= start < q or not 0 <= length <= q:
            raise OutOfRangeException("interval", (start, length), f"start in [0, {q}), length in [0, {q}]")
        subintervals = _subintervals(start, length, Nstar)
        hits = sum(1 for low, high in subintervals if _meets(residues, low, high, q))
        fraction = Fraction(hits, len(subintervals)) if subintervals else Fraction(0)
        reports.append(GoodIntervalReport(start, length, Nstar, len(subintervals), hits, fraction, threshold,
                                          bool(subintervals) and fraction >= threshold))
    return reports


class TripleRelation(NamedTuple):
    """(m₁, m₂, m₃) ≠ 0 and value = |b(m₁x′ + m₂y + m₃z)|_q."""
    m1: int
    m2: int
    m3: int
    value: int


class TripleScan(NamedTuple):
    relation: Optional[TripleRelation]
    zero_relation: Optional[TripleRelation]

    @property
    def found(self) -> bool:
        return self.relation is not None

    @property
    def degenerate(self) -> bool:
        """A coefficient vector hit the value 0."""
        return self.zero_relation is not None


def pigeonhole_guaranteed(q: int, t: int, m_bound: int) -> bool:
    """
    (m + 1)³ > ⌈q/t⌉ forces two vectors of [0, m]³ into one arc of length t, so a relation with value < t exists.
    """
    return (m_bound + 1) ** 3 > -(-q // t)


def small_triple_scan(b: int, xprime: int, y: int, z: int, q: int, m_bound: int, t: int) -> TripleScan:
    """
    Scans [−m_bound, m_bound]³ lexicographically.

    @return: The first nonzero vector with value < t and the first one with value 0, each possibly absent.
    """
    if m_bound < 1:
        raise OutOfRangeException("m_bound", m_bound, "m_bound >= 1")
    relation, zero_relation = None, None
    coefficients = range(-m_bound, m_bound + 1)
    for m1, m2, m3 in product(coefficients, repeat=3):
        if m1 == m2 == m3 == 0:
            continue
        value = qdist(b * (m1 * xprime + m2 * y + m3 * z), q)
        if value < t and relation is None:
            relation = TripleRelation(m1, m2, m3, value)
        if value == 0:
            zero_relation = TripleRelation(m1, m2, m3, value)
            break
    return TripleScan(relation, zero_relation)


def repelling_check(xprime: int, y: int, z: int, bound: int) -> bool:
    """
    @return: True iff αx′ + βy + γz = 0 over ℤ has no nonzero solution with |α|, |β|, |γ| ≤ bound.
    """
    if bound < 1:
        raise OutOfRangeException("bound", bound, "bound >= 1")
    coefficients = range(-bound, bound + 1)
    for alpha, beta, gamma in product(coefficients, repeat=3):
        if (alpha, beta, gamma) != (0, 0, 0) and alpha * xprime + beta * y + gamma * z == 0:
            return False
    return True


class CriticalWindow(NamedTuple):
    """
    Mtilde-critical denominators of a/q against [t, q/(4tM)]. violations lists those outside the window while
    a and a⁻¹ both lie in Z_M(t), which must not happen.
    """
    a: int
    q: int
    window: Tuple[int, Fraction]
    criticals: List[int]
    criticals_in_window: List[int]
    premise: bool
    violations: List[int]


def critical_window_check(a: int, q: int, t: int, M: int, Mtilde: Optional[int] = None) -> CriticalWindow:
    """
    @param Mtilde: Critical bound, defaults to M.
    """
    if t < 2:
        raise OutOfRangeException("t", t, "t >= 2")
    Mtilde = Mtilde if Mtilde is not None else M
    window = (t, Fraction(q, 4 * t * M))
    criticals = [critical.continuant for critical in critical_denominators(a, q, Mtilde)]
    inside = [continuant for continuant in criticals if window[0] <= continuant <= window[1]]
    premise = in_ZM(a, q, t, M) and in_ZM(mod_inverse(a, q), q, t, M)
    violations = [continuant for continuant in criticals if continuant not in inside] if premise else list()
    if violations:
        logging.warning("Critical denominators %s of %s/%s lie outside [%s, %s].", violations, a, q, *window)
    return CriticalWindow(a, q, window, criticals, inside, premise, violations)


class ProbeMagnitudes(NamedTuple):
    """H = N^H_exponent, N* = N^Nstar_exponent and the interval width N^interval_exponent."""
    N: int
    H: float
    Nstar: int
    width: int


def probe_magnitudes(N: int, config: Optional[ExperimentConfig] = None) -> ProbeMagnitudes:
    config = config or ExperimentConfig()
    return ProbeMagnitudes(N=N,
                           H=N ** config.H_exponent,
                           Nstar=max(1, round(N ** config.Nstar_exponent)),
                           width=max(1, round(N ** config.interval_exponent)))


def find_repelling_continuant(a: int,
                              q: int,
                              t: int,
                              N: int,
                              low_exponent: float = 0.55,
                              high_exponent: float = 0.75) -> Optional[int]:
    """
    @return: The smallest continuant x′ of a/q in [t·N^low_exponent, t·N^high_exponent], None if there is none.
    """
    low, high = t * N ** low_exponent, t * N ** high_exponent
    for continuant in convergents(expand(a, q)).continuants:
        if low <= continuant <= high:
            return continuant
        if continuant > high:
            break
    return None


def run_probes(q: int, t: int, M: int, N: int, A: SumSet, config: Optional[ExperimentConfig] = None) -> Dict[str, Any]:
    """
    Evaluates the critical window, N*-goodness of the blocks of A against A⁻¹ and the continuant search on the
    first sampler_budget units of A.

    @return: Summary dict for the JSON report.
    """
    config = config or ExperimentConfig()
    magnitudes = probe_magnitudes(N, config)
    budget = config.cap("sampler_budget")
    units = [a for a in A.elements() if gcd(a, q) == 1]
    sample = units[:budget]

    windows = [critical_window_check(a, q, t, M, config.Mtilde) for a in sample]
    premises = [window for window in windows if window.premise]

    blocks = [((point + 1) % q, N) for point in A.base[:budget]]
    goodness = nstar_good(blocks, invert_set(units, q), magnitudes.Nstar, config.eta, q)
    fractions = [report.hit_fraction for report in goodness]

    continuants = [find_repelling_continuant(a, q, t, N) for a in sample]

    summary = {"magnitudes": magnitudes._asdict(),
               "sample_size": len(sample),
               "critical_window": {"premise": len(premises),
                                   "violations": sum(len(window.violations) for window in premises),
                                   "criticals_in_window": sum(len(window.criticals_in_window) for window in premises)},
               "nstar_good": {"intervals": len(goodness),
                              "good": sum(1 for report in goodness if report.good),
                              "mean_hit_fraction": float(sum(fractions) / len(fractions)) if fractions else None},
               "continuants": {"found": sum(1 for continuant in continuants if continuant is not None),
                               "absent": sum(1 for continuant in continuants if continuant is None)}}
    logging.info("Probes for q = %s: %s.", q, summary)
    return summary
