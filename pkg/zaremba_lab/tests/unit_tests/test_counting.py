#!/usr/bin/env python
# -*- coding: utf-8 -*-
# type: ignore[no-untyped-def]
"""
Tests for the counting experiment and its main term.
"""
import math
from fractions import Fraction

import numpy as np
import pytest

from model.continued_fractions.fractal import SumSet
from model.experiments.counting import (CountingInstance, ExperimentCell, check_consistency, control_sets,
                                        count_action_form, count_solutions, count_solutions_bruteforce,
                                        derive_parameters, fit_error_exponent, main_term, main_term_identity,
                                        negate_set, nu_Q, prime_heuristic_term, run_experiment, sweep,
                                        truncated_main_sum)
from model.experiments.report import ExperimentConfig, ExperimentReport
from model.scheduling.scheduler import WorkerPool
from model.utilities.exceptions import (DegenerateFitException, InconsistentParametersException,
                                        OutOfRangeException)


def random_residues(q, size, seed):
    rng = np.random.default_rng(seed)
    return frozenset(int(value) for value in rng.choice(q, size=size, replace=False))


def report_with_error(N, error):
    """A report whose |lhs − main| equals error."""
    return ExperimentReport(q=101, t=2, M=5, N=N, control="fractal", seed=0, size_A=1, size_B=1,
                            lhs=error, main=Fraction(0), prime_main=Fraction(0), relative_error=None,
                            normalized_error=None)


class TestCounting:
    """
    count_solutions against the oracles.
    """

    def test_full_sets(self):
        """With A = B = ℤ/5 and N = 3 every unit a + 2j gives one b."""
        everything = frozenset(range(5))
        inst = CountingInstance(5, everything, everything, 3)
        assert count_solutions(inst) == 12
        assert main_term(inst) == 12
        assert prime_heuristic_term(inst) == 15

    def test_singletons(self):
        """(1 + 2)² ≢ 1 mod 5."""
        inst = CountingInstance(5, {1}, {1}, 1)
        assert count_solutions(inst) == 0
        assert main_term(inst) == Fraction(4, 25)

    def test_bruteforce_agreement(self):
        """Fast count equals the triple loop on random sets."""
        for q, N, seed in ((101, 5, 0), (120, 7, 1), (97, 12, 2), (64, 3, 3)):
            inst = CountingInstance(q, random_residues(q, q // 3, seed), random_residues(q, q // 2, seed + 10), N)
            assert count_solutions(inst) == count_solutions_bruteforce(inst)

    def test_sum_set_membership(self):
        """Sum sets and their explicit elements count the same."""
        A = SumSet(101, (0, 20, 50), 6)
        B = SumSet(101, (10, 70), 6)
        explicit = CountingInstance(101, frozenset(A), frozenset(B), 6)
        assert count_solutions(CountingInstance(101, A, B, 6)) == count_solutions(explicit)

    def test_symmetry(self):
        """Swapping A and B does not change the count."""
        A, B = random_residues(89, 30, 4), random_residues(89, 40, 5)
        assert count_solutions(CountingInstance(89, A, B, 9)) == count_solutions(CountingInstance(89, B, A, 9))

    def test_action_form(self):
        """The projective form counts −A and −B."""
        for q in (31, 60):
            A, B = random_residues(q, q // 2, 6), random_residues(q, q // 3, 7)
            negated = CountingInstance(q, negate_set(A, q), negate_set(B, q), 5)
            assert count_action_form(A, B, 5, q) == count_solutions(negated)

    def test_instance_validation(self):
        """Residues must lie in [0, q) and N must be positive."""
        with pytest.raises(OutOfRangeException):
            CountingInstance(5, {5}, {1}, 1)
        with pytest.raises(OutOfRangeException):
            CountingInstance(5, {1}, {1}, 0)
        with pytest.raises(OutOfRangeException):
            CountingInstance(7, SumSet(5, (0,), 2), {1}, 1)


class TestMainTerm:
    """
    ν_Q and the divisor identities.
    """

    def test_nu_Q(self):
        """(−1)^ω(Q)/Q² on squarefree Q."""
        assert nu_Q(1) == 1
        assert nu_Q(6) == Fraction(1, 36)
        assert nu_Q(5) == Fraction(-1, 25)
        assert nu_Q(4) == 0

    def test_identity(self):
        """Σ ν_Q = ∏(1 − p⁻²) and the quotient by |ℙ¹| is φ(q)/q²."""
        identity = main_term_identity(12)
        assert identity.nu_sum == Fraction(2, 3)
        assert identity.lhs == Fraction(1, 36)
        assert identity.equal
        assert all(main_term_identity(q).equal for q in range(2, 300))

    def test_truncated_sum(self):
        """The truncation misses at most Σ 1/Q² over the dropped squarefree divisors."""
        truncated = truncated_main_sum(30, 7)
        assert truncated.full == Fraction(16, 25)
        assert truncated.tail_bound == Fraction(1, 100) + Fraction(1, 225) + Fraction(1, 900)
        assert abs(truncated.full - truncated.value) <= truncated.tail_bound
        assert truncated_main_sum(30, 1.5).value == 1

        with pytest.raises(OutOfRangeException):
            truncated_main_sum(30, 0)


class TestExperiment:
    """
    Parameters, controls, runs and sweeps.
    """

    def test_consistency(self):
        """q/2 ≤ t²N ≤ 2q."""
        check_consistency(1009, 11, 8)
        with pytest.raises(InconsistentParametersException):
            check_consistency(1009, 11, 100)
        with pytest.raises(InconsistentParametersException):
            check_consistency(1009, 2, 1)

    def test_derived_parameters_are_consistent(self):
        """t and N derived from τ pass the consistency check."""
        for q in (1009, 10007, 100003):
            t, N = derive_parameters(q, 0.15)
            check_consistency(q, t, N)
            assert t >= 2 and N >= 1
        assert derive_parameters(1009, 0.15, N=9) == (11, 9)

    def test_full_control_is_exact(self):
        """For A = B = ℤ/q the count equals the main term."""
        report = run_experiment(101, 3, 5, 7, control="full")
        assert report.lhs == 7 * 100
        assert report.relative_error == 0
        assert not report.degenerate
        assert report.runtime_ms == 0

    def test_random_control_is_seeded(self):
        """Equal seeds give equal sets, and the sets are direct sums on multiples of N."""
        first = control_sets(1009, 11, 5, 8, 3, "random")
        second = control_sets(1009, 11, 5, 8, 3, "random")
        assert first == second
        assert all(point % 8 == 0 for point in first[0].base)
        assert run_experiment(1009, 11, 5, 8, seed=3, control="random").lhs == \
            run_experiment(1009, 11, 5, 8, seed=3, control="random").lhs

        with pytest.raises(OutOfRangeException):
            control_sets(1009, 11, 5, 8, 3, "other")

    def test_fractal_control(self):
        """The fractal run counts A = B = the sum set carved from Z_M(t)."""
        A, B = control_sets(1009, 11, 5, 8, 0, "fractal")
        report = run_experiment(1009, 11, 5, 8)
        assert A == B
        assert report.size_A == len(A)
        assert report.lhs == count_solutions_bruteforce(CountingInstance(1009, frozenset(A), frozenset(B), 8))

    def test_degenerate_run(self):
        """Empty sets give main = 0 and no relative error."""
        report = run_experiment(101, 3, 5, 7, sets=(frozenset(), frozenset({1})))
        assert report.degenerate
        assert report.relative_error is None
        assert report.main == 0

    def test_inconsistent_run(self):
        """A fractal run outside the magnitudes is refused."""
        with pytest.raises(InconsistentParametersException):
            run_experiment(1009, 2, 5, 1)

    def test_sweep(self):
        """Reports come back ordered by (q, N, M) whatever the cell order."""
        cells = [ExperimentCell(101, 3, 5, 7, control="full"), ExperimentCell(53, 3, 5, 2, control="full")]
        reports = sweep(cells, pool=WorkerPool(1), config=ExperimentConfig())
        assert [report.q for report in reports] == [53, 101]
        assert all(report.relative_error == 0 for report in reports)

    def test_error_exponent(self):
        """log error against log N."""
        fit = fit_error_exponent([report_with_error(N, 3 * N) for N in (2, 4, 8, 16)])
        assert fit.slope == pytest.approx(1.0)
        assert fit.eta == pytest.approx(0.0, abs=1e-9)
        assert fit.intercept == pytest.approx(math.log(3))
        assert fit.samples == 4

        with pytest.raises(DegenerateFitException):
            fit_error_exponent([report_with_error(4, 1), report_with_error(4, 2)])
