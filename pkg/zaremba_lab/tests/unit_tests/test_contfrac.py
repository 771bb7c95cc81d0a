#!/usr/bin/env python
# -*- coding: utf-8 -*-
# type: ignore[no-untyped-def]
"""
Tests for continued fraction expansions, convergents and the Diophantine characterization.
"""
from fractions import Fraction
from math import gcd

import pytest

from model.continued_fractions.contfrac import (CFExpansion, CriticalDenominator, bounded_by, check_dioph,
                                                 convergents, critical_denominators, evaluate, evaluate_prefix,
                                                 expand, largest_continuant_below, max_quotient, qdist)
from model.utilities.exceptions import InvalidExpansionException, NotCoprimeException, OutOfRangeException


class TestExpansion:
    """
    expand and evaluate.
    """

    def test_expand(self):
        """Euclidean algorithm on small fractions."""
        assert expand(1, 2).quotients == (2,)
        assert expand(4, 7).quotients == (1, 1, 3)
        assert expand(5, 6).quotients == (1, 5)
        assert expand(5, 7).quotients == (1, 2, 2)

    def test_expand_preconditions(self):
        """Numerators outside (0, q) and non-coprime pairs are rejected."""
        with pytest.raises(NotCoprimeException):
            expand(2, 4)
        with pytest.raises(OutOfRangeException):
            expand(0, 5)
        with pytest.raises(OutOfRangeException):
            expand(5, 5)

    def test_canonical_form_is_enforced(self):
        """A trailing quotient 1 or a nonpositive quotient is not canonical."""
        with pytest.raises(InvalidExpansionException):
            CFExpansion((2, 1))
        with pytest.raises(InvalidExpansionException):
            CFExpansion((0, 2))
        with pytest.raises(InvalidExpansionException):
            CFExpansion(tuple())

    def test_evaluate(self):
        """Nested evaluation of a few expansions."""
        assert evaluate(CFExpansion((2,))) == Fraction(1, 2)
        assert evaluate(CFExpansion((1, 1, 3))) == Fraction(4, 7)
        assert evaluate(CFExpansion((2, 3))) == Fraction(3, 7)

    def test_round_trip(self):
        """evaluate(expand(a, q)) = a/q for all coprime pairs with q ≤ 150."""
        for q in range(2, 151):
            for a in range(1, q):
                if gcd(a, q) == 1:
                    assert evaluate(expand(a, q)) == Fraction(a, q)

    def test_evaluate_prefix(self):
        """Continuant state of arbitrary, also non-canonical, prefixes."""
        assert evaluate_prefix([]) == (0, 1, 1, 0)
        assert evaluate_prefix([1, 1, 3]) == (4, 7, 1, 2)
        assert evaluate_prefix([2, 1]) == (1, 3, 1, 2)


class TestConvergents:
    """
    Convergents, continuants and quotient bounds.
    """

    def test_convergents(self):
        """Continuants follow the recurrence and the last convergent is the value."""
        sequence = convergents(expand(4, 7))
        assert sequence.continuants == (1, 1, 2, 7)
        assert sequence.fractions() == [Fraction(1, 1), Fraction(1, 2), Fraction(4, 7)]
        assert sequence.previous_continuant(0) == 0
        assert sequence.previous_continuant(3) == 2

        with pytest.raises(OutOfRangeException):
            sequence.convergent(0)

    def test_fibonacci_continuants(self):
        """All quotients 1 up to the final 2 give Fibonacci continuants."""
        assert convergents(CFExpansion((1, 1, 1, 1, 2))).continuants == (1, 1, 2, 3, 5, 13)
        assert convergents(CFExpansion((1, 1, 1, 1, 1, 2))).continuants[:6] == (1, 1, 2, 3, 5, 8)

    def test_max_quotient_and_bounded_by(self):
        """bounded_by agrees with max_quotient on all fractions with q ≤ 60."""
        assert max_quotient(CFExpansion((2,))) == 2
        assert max_quotient(expand(5, 6)) == 5
        assert max_quotient(expand(5, 7)) == 2
        for q in range(2, 61):
            for a in range(1, q):
                if gcd(a, q) == 1:
                    for M in (1, 2, 3, 5):
                        assert bounded_by(a, q, M) == (max_quotient(expand(a, q)) <= M)

    def test_largest_continuant_below(self):
        """Index of the largest continuant below t."""
        sequence = convergents(expand(4, 7))
        assert largest_continuant_below(sequence, 1) == 0
        assert largest_continuant_below(sequence, 2) == 1
        assert largest_continuant_below(sequence, 3) == 2
        assert largest_continuant_below(sequence, 100) == 3


class TestDiophantine:
    """
    qdist, check_dioph and critical denominators.
    """

    def test_qdist(self):
        """Distance to the nearest multiple of q."""
        assert qdist(7, 10) == 3
        assert qdist(0, 10) == 0
        assert qdist(26, 10) == 4
        assert qdist(-3, 10) == 3

    def test_small_numerator_fails(self):
        """x = 1 already violates the bound for a = 1 and q > 8M."""
        check = check_dioph(1, 50, 5)
        assert not check.holds
        assert (check.worst_x, check.worst_value) == (1, 1)

    def test_forward_implication(self):
        """Quotients ≤ M imply x|ax|_q > q/(4M) for every x."""
        for q in range(2, 120):
            for a in range(1, q):
                if gcd(a, q) == 1:
                    M = max_quotient(expand(a, q))
                    assert check_dioph(a, q, M).holds

    def test_converse_constant(self):
        """x|ax|_q > q/M forces the quotients to be at most M."""
        for q in range(2, 80):
            for a in range(1, q):
                if gcd(a, q) != 1:
                    continue
                for M in (2, 3, 4):
                    if check_dioph(a, q, M, constant=1).holds:
                        assert max_quotient(expand(a, q)) <= M

    def test_critical_denominators(self):
        """Continuants followed by a quotient above the critical bound."""
        assert critical_denominators(1, 2, 5) == []
        assert critical_denominators(1, 6, 5) == [CriticalDenominator(1, 6)]
        assert critical_denominators(4, 7, 2) == [CriticalDenominator(2, 3)]
