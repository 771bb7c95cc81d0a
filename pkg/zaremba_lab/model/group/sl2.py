#!/usr/bin/env python
# -*- coding: utf-8 -*-
"""
Exact arithmetic in SL2(Z/qZ) and Mat2(Z/qZ), the projective line P¹(Z/qZ) with its linear fractional action,
reductions to divisors of q and congruence cosets Γ(Q)/Γ(q).

Every element carries its modulus; combining elements of different moduli raises ModulusMismatchException.

Classes:
    - MatElement: 2x2 matrix over Z/qZ.
    - GroupElement: Element of SL2(Z/qZ).
    - ProjPoint: Point of P¹(Z/qZ) in canonical form.

Functions:
    - identity, mul, inv, mat_mul, adjugate
    - generator, mobius, generator_set
    - act, affine, projective_line, orbit
    - project, enumerate_group, random_element, congruence_coset
    - group_order, p1_size, trace
"""
from collections import deque
from dataclasses import dataclass
from functools import lru_cache
from itertools import product
from math import gcd
from typing import Iterable, Iterator, List, Set, Tuple, Union

import numpy as np

from model.arithmetic.number_theory import (crt_combine, factorize, mod_inverse, prime_powers,
                                            solve_linear_congruence)
from model.utilities.exceptions import (CapExceededException, DeterminantException, GroupCapExceededException,
                                        ModulusMismatchException, NotADivisorException, OutOfRangeException)

DEFAULT_GROUP_CAP = 20_000_000


@dataclass(frozen=True)
class MatElement:
    """
    Matrix [[a, b], [c, d]] with entries reduced into [0, q).
    """
    a: int
    b: int
    c: int
    d: int
    q: int

    def __post_init__(self) -> None:
        if self.q < 2:
            raise OutOfRangeException("q", self.q, "q >= 2")
        for name in ("a", "b", "c", "d"):
            object.__setattr__(self, name, getattr(self, name) % self.q)

    @property
    def entries(self) -> Tuple[int, int, int, int]:
        return self.a, self.b, self.c, self.d

    def determinant(self) -> int:
        return (self.a * self.d - self.b * self.c) % self.q

    def nonzero_mod_every_p(self) -> bool:
        """
        @return: True iff the reduction modulo every prime p | q is not the zero matrix.
        """
        return all(any(entry % p for entry in self.entries) for p in factorize(self.q))

    def encode(self) -> int:
        """
        @return: a + b·q + c·q² + d·q³, a bijection onto [0, q⁴).
        """
        return self.a + self.q * (self.b + self.q * (self.c + self.q * self.d))

    @classmethod
    def decode(cls, code: int, q: int) -> "MatElement":
        """
        Inverse of encode, for both matrices and group elements.
        """
        code, a = divmod(code, q)
        code, b = divmod(code, q)
        d, c = divmod(code, q)
        return cls(a, b, c, d, q)

    def __repr__(self) -> str:
        return f"{type(self).__name__}([[{self.a}, {self.b}], [{self.c}, {self.d}]] mod {self.q})"


@dataclass(frozen=True, repr=False)
class GroupElement(MatElement):
    """
    Element of SL2(Z/qZ): a matrix with ad − bc ≡ 1 (mod q).
    """

    def __post_init__(self) -> None:
        super().__post_init__()
        if self.determinant() != 1 % self.q:
            raise DeterminantException(self.determinant(), self.q)

    def __mul__(self, other: "GroupElement") -> "GroupElement":
        return mul(self, other)


class ProjPoint:
    """
    Point (x : y) of P¹(Z/qZ), i.e. gcd(x, y, q) = 1 up to unit scaling.

    Normal form: for each prime power p^k || q the local point is written as (x : 1) if y is a unit mod p and as
    (1 : y·x⁻¹) with p | y·x⁻¹ otherwise. The local coordinates are glued by the Chinese remainder theorem. Two pairs
    give the same point iff their normal forms agree.
    """
    __slots__ = ("x", "y", "q")

    def __init__(self, x: int, y: int, q: int):
        """
        @raise OutOfRangeException: If gcd(x, y, q) != 1.
        """
        if q < 2:
            raise OutOfRangeException("q", q, "q >= 2")
        if gcd(gcd(x, y), q) != 1:
            raise OutOfRangeException("point", (x % q, y % q), f"gcd(x, y, {q}) = 1")
        self.x, self.y = _normal_form(x, y, q)
        self.q = q

    def __eq__(self, other: object) -> bool:
        return isinstance(other, ProjPoint) and (self.x, self.y, self.q) == (other.x, other.y, other.q)

    def __hash__(self) -> int:
        return hash((self.x, self.y, self.q))

    def __lt__(self, other: "ProjPoint") -> bool:
        return (self.y, self.x) < (other.y, other.x)

    def __repr__(self) -> str:
        return f"ProjPoint({self.x} : {self.y} mod {self.q})"


@lru_cache(maxsize=1024)
def _idempotents(q: int) -> Tuple[Tuple[int, int, int], ...]:
    """
    @return: (p, p^k, e) per prime power with e ≡ 1 mod p^k and e ≡ 0 modulo the other prime powers.
    """
    powers = prime_powers(q)
    primes = list(factorize(q))
    result = list()
    for index, power in enumerate(powers):
        residues = [1 if other == index else 0 for other in range(len(powers))]
        result.append((primes[index], power, crt_combine(residues, powers)))
    return tuple(result)


def _normal_form(x: int, y: int, q: int) -> Tuple[int, int]:
    x_global, y_global = 0, 0
    for p, power, idempotent in _idempotents(q):
        local_x, local_y = x % power, y % power
        if local_y % p:
            local_x, local_y = local_x * mod_inverse(local_y, power) % power, 1
        else:
            local_x, local_y = 1, local_y * mod_inverse(local_x, power) % power
        x_global += local_x * idempotent
        y_global += local_y * idempotent
    return x_global % q, y_global % q


def _same_modulus(first: MatElement, second: Union[MatElement, ProjPoint]) -> None:
    if first.q != second.q:
        raise ModulusMismatchException(first.q, second.q)


def identity(q: int) -> GroupElement:
    return GroupElement(1, 0, 0, 1, q)


def mat_mul(m: MatElement, n: MatElement) -> MatElement:
    """
    Product in Mat2(Z/qZ); the result is a GroupElement iff both factors are.
    """
    _same_modulus(m, n)
    cls = GroupElement if isinstance(m, GroupElement) and isinstance(n, GroupElement) else MatElement
    return cls(m.a * n.a + m.b * n.c,
               m.a * n.b + m.b * n.d,
               m.c * n.a + m.d * n.c,
               m.c * n.b + m.d * n.d,
               m.q)


def mul(g: GroupElement, h: GroupElement) -> GroupElement:
    """
    @raise ModulusMismatchException: If g and h live modulo different q.
    """
    return mat_mul(g, h)


def adjugate(m: MatElement) -> MatElement:
    """
    [[d, −b], [−c, a]]; the inverse of m when its determinant is 1.
    """
    cls = GroupElement if isinstance(m, GroupElement) else MatElement
    return cls(m.d, -m.b, -m.c, m.a, m.q)


def inv(g: GroupElement) -> GroupElement:
    return adjugate(g)


def trace(g: MatElement) -> int:
    return (g.a + g.d) % g.q


def generator(j: int, q: int) -> GroupElement:
    """
    g_j = [[2j, 1 − 4j²], [−1, 2j]], determinant 1 identically.
    """
    if j < 1:
        raise OutOfRangeException("j", j, "j >= 1")
    return GroupElement(2 * j, 1 - 4 * j * j, -1, 2 * j, q)


def mobius(j: int, q: int) -> MatElement:
    """
    [[−2j, 1 − 4j²], [1, 2j]] of determinant −1. It maps (a : 1) to (b : 1) iff (a + 2j)(b + 2j) ≡ 1 (mod q).
    """
    if j < 1:
        raise OutOfRangeException("j", j, "j >= 1")
    return MatElement(-2 * j, 1 - 4 * j * j, 1, 2 * j, q)


def generator_set(N: int, q: int) -> List[GroupElement]:
    """
    @return: g_1, ..., g_N reduced modulo q with repetitions removed, in order of j.
    """
    if N < 1:
        raise OutOfRangeException("N", N, "N >= 1")
    seen: Set[GroupElement] = set()
    generators = list()
    for j in range(1, N + 1):
        element = generator(j, q)
        if element not in seen:
            seen.add(element)
            generators.append(element)
    return generators


def affine(x: int, q: int) -> ProjPoint:
    """The point (x : 1)."""
    return ProjPoint(x, 1, q)


def act(g: MatElement, point: ProjPoint) -> ProjPoint:
    """
    Linear fractional action (x : y) ↦ (ax + by : cx + dy).

    @param g: A matrix whose determinant is a unit modulo q.
    @raise DeterminantException: If the determinant is not a unit.
    """
    _same_modulus(g, point)
    if gcd(g.determinant(), g.q) != 1:
        raise DeterminantException(g.determinant(), g.q, "a unit")
    return ProjPoint(g.a * point.x + g.b * point.y, g.c * point.x + g.d * point.y, g.q)


def projective_line(q: int) -> List[ProjPoint]:
    """
    Enumerates P¹(Z/qZ) from the local normal forms, sorted by (y, x).

    @return: p1_size(q) distinct points.
    """
    local_points = list()
    for p, power, idempotent in _idempotents(q):
        affine_chart = [(x, 1) for x in range(power)]
        at_infinity = [(1, y) for y in range(0, power, p)]
        local_points.append([(x * idempotent, y * idempotent) for x, y in affine_chart + at_infinity])

    points = list()
    for combination in product(*local_points):
        point = ProjPoint.__new__(ProjPoint)
        point.x = sum(x for x, _ in combination) % q
        point.y = sum(y for _, y in combination) % q
        point.q = q
        points.append(point)
    return sorted(points)


def orbit(point: ProjPoint, generators: Iterable[MatElement]) -> Set[ProjPoint]:
    """
    Breadth first orbit of a point under the monoid generated by the given matrices. For a finite group this is
    the orbit under the generated subgroup.
    """
    generators = list(generators)
    seen = {point}
    queue = deque([point])
    while queue:
        current = queue.popleft()
        for element in generators:
            image = act(element, current)
            if image not in seen:
                seen.add(image)
                queue.append(image)
    return seen


def project(g: MatElement, q1: int) -> MatElement:
    """
    Reduction Γ_q → Γ_{q1}.

    @raise NotADivisorException: If q1 does not divide q.
    """
    if q1 < 2:
        raise OutOfRangeException("q1", q1, "q1 >= 2")
    if g.q % q1:
        raise NotADivisorException(q1, g.q)
    return type(g)(g.a, g.b, g.c, g.d, q1)


def group_order(q: int) -> int:
    """|SL2(Z/qZ)| = ∏ p^(3k−2)·(p² − 1) over p^k || q."""
    order = 1
    for p, k in factorize(q).items():
        order *= p ** (3 * k - 2) * (p * p - 1)
    return order


def p1_size(q: int) -> int:
    """|P¹(Z/qZ)| = ∏ p^(k−1)·(p + 1) over p^k || q."""
    size = 1
    for p, k in factorize(q).items():
        size *= p ** (k - 1) * (p + 1)
    return size


def enumerate_group(q: int, cap: int = DEFAULT_GROUP_CAP) -> Iterator[GroupElement]:
    """
    Yields every element of SL2(Z/qZ) once, lexicographically in (a, b, c, d).

    @param q: The modulus.
    @param cap: Refuse moduli with q³ > cap.
    @raise GroupCapExceededException: If q³ exceeds the cap.
    """
    if q < 2:
        raise OutOfRangeException("q", q, "q >= 2")
    if q ** 3 > cap:
        raise GroupCapExceededException(q, cap)

    for a, b in product(range(q), repeat=2):
        if gcd(gcd(a, b), q) != 1:
            continue
        for c in range(q):
            for d in solve_linear_congruence(a, 1 + b * c, q):
                yield GroupElement(a, b, c, d, q)


def random_element(q: int, rng: np.random.Generator) -> GroupElement:
    """
    Draws (a, b, c) uniformly and completes them to an element when a·d ≡ 1 + b·c is solvable. The distribution is
    close to, but not exactly, uniform on SL2(Z/qZ).
    """
    while True:
        a, b, c = (int(value) for value in rng.integers(0, q, size=3))
        solutions = solve_linear_congruence(a, 1 + b * c, q)
        if solutions:
            return GroupElement(a, b, c, solutions[int(rng.integers(0, len(solutions)))], q)


def congruence_coset(Q: int, q: int, cap: int = DEFAULT_GROUP_CAP) -> Set[GroupElement]:
    """
    The elements of SL2(Z/qZ) congruent to the identity modulo Q, i.e. Γ(Q)/Γ(q).

    @param Q: Level, a divisor of q. Q = 1 gives the whole group.
    @raise NotADivisorException: If Q does not divide q.
    @raise CapExceededException: If |Γ_q|/|Γ_Q| exceeds the cap.
    """
    if Q < 1 or q % Q:
        raise NotADivisorException(Q, q)
    size = group_order(q) // group_order(Q)
    if size > cap:
        raise CapExceededException(f"Congruence coset Γ({Q})/Γ({q})", size, cap)

    lifts = range(0, q, Q)
    coset = set()
    for a_offset, b, c in product(lifts, repeat=3):
        a = 1 + a_offset
        for d in solve_linear_congruence(a, 1 + b * c, q):
            if (d - 1) % Q == 0:
                coset.add(GroupElement(a, b, c, d, q))
    return coset


def kernel_size(q: int, q1: int) -> int:
    """|ker(Γ_q → Γ_{q1})| = |Γ_q| / |Γ_{q1}|."""
    if q % q1:
        raise NotADivisorException(q1, q)
    return group_order(q) // group_order(q1)
