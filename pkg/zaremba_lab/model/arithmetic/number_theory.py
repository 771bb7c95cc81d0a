#!/usr/bin/env python
# -*- coding: utf-8 -*-
"""
Elementary arithmetic modulo q shared by all modules.

Functions:
    - factorize: Prime factorization as an ordered dict {p: n}.
    - divisors_of: Sorted divisors of q.
    - euler_phi: Euler's totient.
    - omega: Number of distinct prime factors.
    - is_squarefree / squarefree_part
    - mod_inverse: Inverse of a unit via the extended Euclidean algorithm.
    - batch_inverse: Inverses of many units with a single modular inversion.
    - inverse_table: Inverse of every residue modulo q (0 for non-units).
    - solve_linear_congruence: All solutions x of a·x ≡ b (mod q).
    - crt_combine: Chinese remainder combination of residues.
"""
from functools import lru_cache
from math import gcd, prod
from typing import Dict, List, Sequence, Tuple

from sympy import divisors, factorint, totient
from sympy.ntheory.modular import crt

from model.utilities.exceptions import NonUnitException, OutOfRangeException


@lru_cache(maxsize=4096)
def _factor_items(q: int) -> Tuple[Tuple[int, int], ...]:
    return tuple(sorted(factorint(q).items()))


def factorize(q: int) -> Dict[int, int]:
    """
    Factorizes q into prime powers.

    @param q: A positive integer.
    @type q: int
    @return: Dict mapping each prime to its exponent, ordered by prime. Empty for q = 1.
    @rtype: Dict[int, int]
    """
    if q < 1:
        raise OutOfRangeException("q", q, "q >= 1")
    return dict(_factor_items(q))


def prime_powers(q: int) -> List[int]:
    """
    @return: The prime power factors p^n || q in increasing order of p.
    """
    return [p ** n for p, n in factorize(q).items()]


@lru_cache(maxsize=4096)
def _divisors(q: int) -> Tuple[int, ...]:
    return tuple(divisors(q))


def divisors_of(q: int) -> List[int]:
    """
    @return: All positive divisors of q in increasing order.
    """
    if q < 1:
        raise OutOfRangeException("q", q, "q >= 1")
    return list(_divisors(q))


def euler_phi(q: int) -> int:
    """Euler's totient φ(q)."""
    return int(totient(q))


def omega(q: int) -> int:
    """Number of distinct prime factors ω(q)."""
    return len(factorize(q))


def is_squarefree(q: int) -> bool:
    """True iff no square of a prime divides q."""
    return all(n == 1 for n in factorize(q).values())


def squarefree_part(q: int) -> int:
    """The largest squarefree divisor of q (its radical)."""
    return prod(factorize(q).keys())


def mod_inverse(a: int, q: int) -> int:
    """
    Returns the inverse of a modulo q.

    @param a: The residue to invert.
    @param q: The modulus.
    @raise NonUnitException: If gcd(a, q) != 1.
    """
    try:
        return pow(a % q, -1, q)
    except ValueError as error:
        raise NonUnitException(a % q, q) from error


def batch_inverse(values: Sequence[int], q: int) -> List[int]:
    """
    Inverts all values with one modular inversion (prefix products, then a backward sweep).

    @param values: Units modulo q.
    @type values: Sequence[int]
    @param q: The modulus.
    @type q: int
    @return: The inverses in input order.
    @rtype: List[int]
    @raise NonUnitException: If any value is not a unit.
    """
    if not values:
        return []

    prefix = [1] * len(values)
    running = 1
    for index, value in enumerate(values):
        if gcd(value, q) != 1:
            raise NonUnitException(value % q, q)
        prefix[index] = running
        running = running * value % q

    inverse_running = mod_inverse(running, q)
    result = [0] * len(values)
    for index in range(len(values) - 1, -1, -1):
        result[index] = inverse_running * prefix[index] % q
        inverse_running = inverse_running * values[index] % q
    return result


def inverse_table(q: int) -> List[int]:
    """
    Inverse of every residue modulo q; entries for non-units are 0 (q = 1 aside, 0 is never an inverse).

    @param q: The modulus, q >= 2.
    @return: List of length q.
    """
    units = [u for u in range(1, q) if gcd(u, q) == 1]
    table = [0] * q
    for unit, inverse in zip(units, batch_inverse(units, q)):
        table[unit] = inverse
    return table


def solve_linear_congruence(a: int, b: int, q: int) -> List[int]:
    """
    Solves a·x ≡ b (mod q).

    @return: All solutions in [0, q) in increasing order, empty if there is none.
    """
    a, b = a % q, b % q
    divisor = gcd(a, q)
    if b % divisor:
        return []
    step = q // divisor
    if step == 1:
        return list(range(q))
    base = (b // divisor) * mod_inverse(a // divisor, step) % step
    return [base + k * step for k in range(divisor)]


def crt_combine(residues: Sequence[int], moduli: Sequence[int]) -> int:
    """
    Combines residues modulo pairwise coprime moduli.

    @return: The unique residue modulo the product of the moduli.
    """
    if len(moduli) == 1:
        return residues[0] % moduli[0]
    value, _ = crt(list(moduli), list(residues))
    return int(value)
