#!/usr/bin/env python
# -*- coding: utf-8 -*-
"""
The counting experiment: exact number of (j, a, b) ∈ [1, N] × A × B with (a + 2j)(b + 2j) ≡ 1 (mod q), the
φ(q)/q² main term, the ν_Q divisor identities behind it and error statistics over sweeps.

Classes:
    - CountingInstance
    - MainTermIdentity
    - TruncatedSum
    - ExperimentCell
    - ErrorExponentFit

Functions:
    - count_solutions / count_solutions_bruteforce / count_action_form
    - main_term / prime_heuristic_term
    - nu_Q / main_term_identity / truncated_main_sum
    - control_sets / run_experiment / sweep
    - fit_error_exponent
"""
import logging
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import AbstractSet, Iterable, List, NamedTuple, Optional, Sequence, Tuple, Union

import numpy as np

from model.arithmetic.number_theory import divisors_of, euler_phi, factorize, inverse_table, is_squarefree, omega
from model.continued_fractions.fractal import SumSet, sumset_from_intervals
from model.experiments.report import ExperimentConfig, ExperimentReport
from model.group.sl2 import act, affine, generator, p1_size
from model.scheduling.job import Job
from model.scheduling.scheduler import WorkerPool
from model.utilities.exceptions import (DegenerateFitException, InconsistentParametersException,
                                        OutOfRangeException)
from model.utilities.time_helper import TimeHelper

ResidueSet = Union[SumSet, AbstractSet[int]]

CONTROLS = ("full", "fractal", "random")


@dataclass(frozen=True)
class CountingInstance:
    """
    A, B ⊆ ℤ/qℤ as sum sets or explicit residue sets; N ≥ 1.
    """
    q: int
    A: ResidueSet
    B: ResidueSet
    N: int

    def __post_init__(self) -> None:
        if self.q < 2:
            raise OutOfRangeException("q", self.q, "q >= 2")
        if self.N < 1:
            raise OutOfRangeException("N", self.N, "N >= 1")
        for name, residues in (("A", self.A), ("B", self.B)):
            if isinstance(residues, SumSet):
                if residues.q != self.q:
                    raise OutOfRangeException(f"{name}.q", residues.q, f"equal to q = {self.q}")
            elif any(not 0 <= element < self.q for element in residues):
                raise OutOfRangeException(name, sorted(residues)[:5], f"residues in [0, {self.q})")

    @property
    def size_A(self) -> int:
        return len(self.A)

    @property
    def size_B(self) -> int:
        return len(self.B)


def negate_set(residues: ResidueSet, q: int) -> ResidueSet:
    """
    @return: −X modulo q, keeping the sum set structure where there is one.
    """
    if isinstance(residues, SumSet):
        return residues.negate()
    return frozenset((-element) % q for element in residues)


def count_solutions(inst: CountingInstance) -> int:
    """
    Counts in O(N·|A|): b is forced to (a + 2j)⁻¹ − 2j, non-unit a + 2j contribute nothing. Sum set membership is
    a binary search on Λ.

    @return: #{(j, a, b) ∈ [1, N] × A × B : (a + 2j)(b + 2j) ≡ 1 (mod q)}.
    """
    q = inst.q
    inverses = inverse_table(q)
    count = 0
    for j in range(1, inst.N + 1):
        shift = 2 * j
        for a in inst.A:
            inverse = inverses[(a + shift) % q]
            if inverse and (inverse - shift) % q in inst.B:
                count += 1
    return count


def count_solutions_bruteforce(inst: CountingInstance) -> int:
    """
    Triple loop oracle for count_solutions.
    """
    q = inst.q
    return sum(1
               for j in range(1, inst.N + 1)
               for a in inst.A
               for b in inst.B
               if (a + 2 * j) * (b + 2 * j) % q == 1 % q)


def count_action_form(A: ResidueSet, B: ResidueSet, N: int, q: int) -> int:
    """
    Counts (j, a, b) with g_j·(a : 1) = (−b : 1) in ℙ¹(ℤ/qℤ). The image of (a : 1) is affine exactly when
    2j − a is a unit, and then the equation reads (a − 2j)(b − 2j) ≡ 1, so the result is count_solutions(−A, −B).
    """
    count = 0
    for j in range(1, N + 1):
        g = generator(j, q)
        for a in A:
            image = act(g, affine(a, q))
            if image.y == 1 and (-image.x) % q in B:
                count += 1
    return count


def main_term(inst: CountingInstance) -> Fraction:
    """
    @return: φ(q)·|A|·|B|·N / q².
    """
    return Fraction(euler_phi(inst.q) * inst.size_A * inst.size_B * inst.N, inst.q ** 2)


def prime_heuristic_term(inst: CountingInstance) -> Fraction:
    """
    @return: |A|·|B|·N / q, the heuristic that is only right for prime q up to a factor (1 − 1/q).
    """
    return Fraction(inst.size_A * inst.size_B * inst.N, inst.q)


def nu_Q(Q: int) -> Fraction:
    """
    @return: (−1)^ω(Q) / Q² for squarefree Q, 0 otherwise.
    """
    if Q < 1:
        raise OutOfRangeException("Q", Q, "Q >= 1")
    if not is_squarefree(Q):
        return Fraction(0)
    return Fraction((-1) ** omega(Q), Q * Q)


class MainTermIdentity(NamedTuple):
    """Σ_{Q|q} ν_Q against ∏_{p|q}(1 − p⁻²), and (Σ ν_Q)/|ℙ¹| against φ(q)/q²."""
    q: int
    nu_sum: Fraction
    euler_product: Fraction
    lhs: Fraction
    rhs: Fraction
    equal: bool


def main_term_identity(q: int) -> MainTermIdentity:
    if q < 2:
        raise OutOfRangeException("q", q, "q >= 2")
    nu_sum = sum((nu_Q(divisor) for divisor in divisors_of(q)), Fraction(0))
    euler_product = Fraction(1)
    for prime in factorize(q):
        euler_product *= 1 - Fraction(1, prime * prime)
    lhs = nu_sum / p1_size(q)
    rhs = Fraction(euler_phi(q), q * q)
    return MainTermIdentity(q, nu_sum, euler_product, lhs, rhs, nu_sum == euler_product and lhs == rhs)


class TruncatedSum(NamedTuple):
    """Partial divisor sum over Q < cutoff and the bound Σ 1/Q² on what it misses."""
    q: int
    cutoff: float
    value: Fraction
    full: Fraction
    tail_bound: Fraction


def truncated_main_sum(q: int, cutoff: float) -> TruncatedSum:
    """
    @param cutoff: Divisors Q < cutoff are summed, e.g. cutoff = √N.
    """
    if cutoff <= 0:
        raise OutOfRangeException("cutoff", cutoff, "cutoff > 0")
    value, full, tail = Fraction(0), Fraction(0), Fraction(0)
    for divisor in divisors_of(q):
        term = nu_Q(divisor)
        full += term
        if divisor < cutoff:
            value += term
        elif term:
            tail += Fraction(1, divisor * divisor)
    return TruncatedSum(q, cutoff, value, full, tail)


def check_consistency(q: int, t: int, N: int) -> None:
    """
    @raise InconsistentParametersException: Unless q/2 ≤ t²N ≤ 2q.
    """
    if not q <= 2 * t * t * N <= 4 * q:
        raise InconsistentParametersException(q, t, N)


def derive_parameters(q: int, tau: float, N: Optional[int] = None) -> Tuple[int, int]:
    """
    t ≈ q^{1/2 − τ} and N ≈ q^{2τ}; with N given, t is chosen so that t²N ≈ q.

    @return: (t, N), both at least 1, t at least 2.
    """
    if N is None:
        t = max(2, round(q ** (0.5 - tau)))
        N = max(1, round(q / (t * t)))
    else:
        t = max(2, round(math.sqrt(q / N)))
    return t, N


def _random_sumset(q: int, N: int, rng: np.random.Generator) -> SumSet:
    slots = q // N
    chosen = rng.choice(slots, size=max(1, slots // 4), replace=False)
    return SumSet(q, tuple(int(slot) * N for slot in sorted(chosen)), N)


def control_sets(q: int, t: int, M: int, N: int, seed: int, control: str) -> Tuple[ResidueSet, ResidueSet]:
    """
    @param control: "full" (A = B = ℤ/q), "fractal" (A = B = the Z_M(t) sum set) or "random" (two seeded direct
        sums with block starts on multiples of N, a quarter of the slots each).
    @return: (A, B).
    """
    if control == "full":
        everything = frozenset(range(q))
        return everything, everything
    if control == "fractal":
        sumset = sumset_from_intervals(q, t, M, N)
        return sumset, sumset
    if control == "random":
        rng = np.random.default_rng([seed, q, N])
        return _random_sumset(q, N, rng), _random_sumset(q, N, rng)
    raise OutOfRangeException("control", control, " | ".join(CONTROLS))


def run_experiment(q: int,
                   t: int,
                   M: int,
                   N: int,
                   seed: int = 0,
                   control: str = "fractal",
                   config: Optional[ExperimentConfig] = None,
                   sets: Optional[Tuple[ResidueSet, ResidueSet]] = None) -> ExperimentReport:
    """
    Builds A and B (unless supplied), counts exactly and compares with the main term.

    @param sets: Explicit (A, B); the consistency check is skipped then, as for the full control.
    @return: The report; an empty A or B gives main = 0 and degenerate = True.
    """
    config = config or ExperimentConfig()
    if sets is None and control != "full":
        check_consistency(q, t, N)
    start = TimeHelper.counter()

    A, B = sets if sets is not None else control_sets(q, t, M, N, seed, control)
    inst = CountingInstance(q, A, B, N)
    lhs = count_solutions(inst)
    main = main_term(inst)

    error = abs(lhs - main)
    degenerate = main == 0
    relative_error = None if degenerate else float(error / main)
    scale = math.sqrt(inst.size_A * inst.size_B) * N
    normalized_error = float(error) / scale if scale > 0 else None
    runtime_ms = TimeHelper.elapsed_ms(start) if config.record_timing else 0

    if degenerate:
        logging.warning("Degenerate counting run q = %s, N = %s: A or B is empty.", q, N)
    logging.info("Counting run q = %s, t = %s, M = %s, N = %s, control %s: lhs = %s, main = %s.",
                 q, t, M, N, control, lhs, main)
    return ExperimentReport(q=q, t=t, M=M, N=N, control=control, seed=seed,
                            size_A=inst.size_A, size_B=inst.size_B,
                            lhs=lhs, main=main, prime_main=prime_heuristic_term(inst),
                            relative_error=relative_error, normalized_error=normalized_error,
                            degenerate=degenerate, runtime_ms=runtime_ms, config_hash=config.hash)


class ExperimentCell(NamedTuple):
    """One sweep cell."""
    q: int
    t: int
    M: int
    N: int
    seed: int = 0
    control: str = "fractal"


def _run_cells(cells: Sequence[ExperimentCell], config: ExperimentConfig) -> List[ExperimentReport]:
    return [run_experiment(cell.q, cell.t, cell.M, cell.N, cell.seed, cell.control, config) for cell in cells]


def sweep(cells: Iterable[ExperimentCell],
          pool: Optional[WorkerPool] = None,
          config: Optional[ExperimentConfig] = None) -> List[ExperimentReport]:
    """
    Runs every cell, one job per cell.

    @return: Reports sorted by (q, N, M).
    """
    config = config or ExperimentConfig()
    pool = pool or WorkerPool(config.shards)
    jobs = [Job(f"cell_{cell.q}_{cell.N}_{cell.M}_{cell.control}", _run_cells, ([cell], config),
                key=(cell.q, cell.N, cell.M, cell.control, cell.seed))
            for cell in cells]
    reports = [report for result in pool.map(jobs) for report in result]
    return sorted(reports, key=lambda report: (report.key, report.control, report.seed))


class ErrorExponentFit(NamedTuple):
    """log|lhs − main| ≈ slope·log N + intercept; eta = 1 − slope is empirical only."""
    eta: float
    slope: float
    intercept: float
    samples: int


def fit_error_exponent(reports: Sequence[ExperimentReport]) -> ErrorExponentFit:
    """
    @raise DegenerateFitException: With fewer than two distinct N carrying a nonzero error.
    """
    points = [(math.log(report.N), math.log(float(report.error))) for report in reports if report.error > 0]
    if len({x for x, _ in points}) < 2:
        raise DegenerateFitException("error exponent: fewer than two distinct N with nonzero error")
    x, y = np.array(points).T
    slope, intercept = np.polyfit(x, y, 1)
    return ErrorExponentFit(1.0 - float(slope), float(slope), float(intercept), len(points))
