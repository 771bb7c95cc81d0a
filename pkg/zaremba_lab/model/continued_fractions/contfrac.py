#!/usr/bin/env python
# -*- coding: utf-8 -*-
"""
Exact continued fraction expansions of rationals a/q in (0, 1), their convergents and continuants, and the
Diophantine characterization of bounded partial quotients. No floating point arithmetic is used.

Classes:
    - CFExpansion: Canonical partial quotient sequence [a_1, ..., a_s].
    - ConvergentSeq: Numerators e_ν and continuants f_ν, ν = 0..s.
    - DiophantineCheck: Result of check_dioph.
    - CriticalDenominator: A continuant followed by a large quotient.

Functions:
    - expand, evaluate, convergents, max_quotient, bounded_by
    - qdist, check_dioph, critical_denominators
    - evaluate_prefix, largest_continuant_below
"""
from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import Iterable, List, NamedTuple, Sequence, Tuple

import numpy as np

from model.utilities.exceptions import InvalidExpansionException, NotCoprimeException, OutOfRangeException

# Above this modulus a·x no longer fits into int64 and the scan falls back to Python integers.
_NUMPY_SCAN_LIMIT = 2 ** 31


@dataclass(frozen=True)
class CFExpansion:
    """
    Canonical continued fraction [a_1, ..., a_s] of a rational in (0, 1): every quotient is at least 1 and the
    last one is at least 2. The canonical form makes expand and evaluate mutually inverse.
    """
    quotients: Tuple[int, ...]

    def __post_init__(self) -> None:
        quotients = tuple(int(quotient) for quotient in self.quotients)
        object.__setattr__(self, "quotients", quotients)
        if not quotients:
            raise InvalidExpansionException(quotients, "at least one quotient is required")
        if any(quotient < 1 for quotient in quotients):
            raise InvalidExpansionException(quotients, "quotients must be positive")
        if quotients[-1] < 2:
            raise InvalidExpansionException(quotients, "the last quotient must be at least 2")

    def __len__(self) -> int:
        return len(self.quotients)

    def __iter__(self):
        return iter(self.quotients)


@dataclass(frozen=True)
class ConvergentSeq:
    """
    Convergents e_ν/f_ν = [c_1, ..., c_ν] for ν = 0..s, stored with e_0 = 0, f_0 = 1 so that the recurrence
    f_ν = c_ν·f_{ν−1} + f_{ν−2} (f_{−1} = 0) is total. Index ν of the tuples is the convergent index.
    """
    quotients: Tuple[int, ...]
    numerators: Tuple[int, ...]
    continuants: Tuple[int, ...]

    def convergent(self, index: int) -> Fraction:
        """
        @param index: Convergent index ν, 1 ≤ ν ≤ s.
        @return: e_ν / f_ν.
        """
        if not 1 <= index < len(self.continuants):
            raise OutOfRangeException("index", index, f"1 <= index <= {len(self.continuants) - 1}")
        return Fraction(self.numerators[index], self.continuants[index])

    def fractions(self) -> List[Fraction]:
        """@return: All convergents e_1/f_1, ..., e_s/f_s."""
        return [self.convergent(index) for index in range(1, len(self.continuants))]

    def previous_continuant(self, index: int) -> int:
        """@return: f_{ν−1} with f_{−1} = 0."""
        return self.continuants[index - 1] if index >= 1 else 0


class DiophantineCheck(NamedTuple):
    """Result of check_dioph. The bound is q/(constant·M)."""
    holds: bool
    worst_x: int
    worst_value: int
    constant: int
    M: int


class CriticalDenominator(NamedTuple):
    """A continuant f_ν whose successor quotient c_{ν+1} is larger than the critical bound."""
    continuant: int
    quotient: int


def _require_fraction(a: int, q: int) -> None:
    if q < 2:
        raise OutOfRangeException("q", q, "q >= 2")
    if not 1 <= a < q:
        raise OutOfRangeException("a", a, f"1 <= a < {q}")
    if gcd(a, q) != 1:
        raise NotCoprimeException(a, q)


def expand(a: int, q: int) -> CFExpansion:
    """
    Expands a/q with the Euclidean algorithm. The result is canonical: for s ≥ 2 the last quotient is a
    remainder divided by 1 and therefore at least 2.

    @param a: Numerator, 1 ≤ a < q.
    @param q: Denominator, coprime to a.
    @return: The canonical expansion.
    @raise OutOfRangeException, NotCoprimeException: On violated preconditions.
    """
    _require_fraction(a, q)
    quotients = []
    numerator, denominator = a, q
    while numerator:
        quotients.append(denominator // numerator)
        numerator, denominator = denominator % numerator, numerator
    return CFExpansion(tuple(quotients))


def evaluate_prefix(quotients: Sequence[int]) -> Tuple[int, int, int, int]:
    """
    Runs the continuant recurrence over an arbitrary quotient sequence (canonical or not).

    @param quotients: Sequence c_1, ..., c_ν of positive integers, possibly empty.
    @return: (e_ν, f_ν, e_{ν−1}, f_{ν−1}); the empty prefix gives (0, 1, 1, 0).
    """
    numerator, previous_numerator = 0, 1
    continuant, previous_continuant = 1, 0
    for quotient in quotients:
        numerator, previous_numerator = quotient * numerator + previous_numerator, numerator
        continuant, previous_continuant = quotient * continuant + previous_continuant, continuant
    return numerator, continuant, previous_numerator, previous_continuant


def evaluate(cf: CFExpansion) -> Fraction:
    """
    @return: The exact value of the expansion, a reduced fraction in (0, 1).
    """
    numerator, continuant, _, _ = evaluate_prefix(cf.quotients)
    return Fraction(numerator, continuant)


def convergents(cf: CFExpansion) -> ConvergentSeq:
    """
    @return: All convergents and continuants of the expansion; the last convergent equals evaluate(cf).
    """
    numerators, continuants = [0], [1]
    previous_numerator, previous_continuant = 1, 0
    for quotient in cf.quotients:
        numerator = quotient * numerators[-1] + previous_numerator
        continuant = quotient * continuants[-1] + previous_continuant
        previous_numerator, previous_continuant = numerators[-1], continuants[-1]
        numerators.append(numerator)
        continuants.append(continuant)
    return ConvergentSeq(cf.quotients, tuple(numerators), tuple(continuants))


def max_quotient(cf: CFExpansion) -> int:
    """@return: The largest partial quotient."""
    return max(cf.quotients)


def bounded_by(a: int, q: int, M: int) -> bool:
    """
    Early exit test max_quotient(expand(a, q)) ≤ M without building the expansion. Assumes 1 ≤ a < q coprime.
    """
    numerator, denominator = a, q
    while numerator:
        if denominator // numerator > M:
            return False
        numerator, denominator = denominator % numerator, numerator
    return True


def qdist(x: int, q: int) -> int:
    """
    Distance |x|_q from x to the nearest multiple of q.

    @return: A value in [0, q/2].
    """
    if q < 2:
        raise OutOfRangeException("q", q, "q >= 2")
    residue = x % q
    return min(residue, q - residue)


def _products(a: int, q: int) -> Iterable[int]:
    for x in range(1, q):
        yield x * qdist(a * x, q)


def check_dioph(a: int, q: int, M: int, constant: int = 4) -> DiophantineCheck:
    """
    Exhaustive check of x·|ax|_q > q/(constant·M) for all 1 ≤ x < q. With constant 4 this is the consequence of
    bounded quotients; with constant 1 it is the hypothesis of the converse.

    @param a: Numerator coprime to q.
    @param q: Modulus.
    @param M: Quotient bound, M ≥ 1.
    @param constant: Denominator constant of the bound.
    @return: Whether the bound holds together with the minimizing x (smallest on ties) and its value.
    """
    if q < 2:
        raise OutOfRangeException("q", q, "q >= 2")
    if M < 1:
        raise OutOfRangeException("M", M, "M >= 1")
    if gcd(a, q) != 1:
        raise NotCoprimeException(a, q)

    a %= q
    if q < _NUMPY_SCAN_LIMIT:
        x = np.arange(1, q, dtype=np.int64)
        residues = a * x % q
        values = x * np.minimum(residues, q - residues)
        index = int(np.argmin(values))
        worst_x, worst_value = index + 1, int(values[index])
    else:
        worst_x, worst_value = 0, q * q
        for x, value in enumerate(_products(a, q), start=1):
            if value < worst_value:
                worst_x, worst_value = x, value

    return DiophantineCheck(holds=constant * M * worst_value > q,
                            worst_x=worst_x,
                            worst_value=worst_value,
                            constant=constant,
                            M=M)


def critical_denominators(a: int, q: int, Mtilde: int) -> List[CriticalDenominator]:
    """
    Lists the continuants f_ν of a/q whose next quotient c_{ν+1} exceeds Mtilde, with f_0 = 1 included.

    @return: Pairs (f_ν, c_{ν+1}) in increasing order of f_ν; empty iff all quotients are ≤ Mtilde.
    """
    sequence = convergents(expand(a, q))
    return [CriticalDenominator(sequence.continuants[index], quotient)
            for index, quotient in enumerate(sequence.quotients)
            if quotient > Mtilde]


def largest_continuant_below(sequence: ConvergentSeq, t: int) -> int:
    """
    @return: The index ν of the largest continuant f_ν < t (0 when only f_0 = 1 qualifies).
    """
    index = 0
    for position, continuant in enumerate(sequence.continuants):
        if continuant < t:
            index = position
        else:
            break
    return index
