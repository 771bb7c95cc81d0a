#!/usr/bin/env python
# -*- coding: utf-8 -*-
"""
Measures on Γ_q = SL2(Z/qZ) with exact rational values: convolution, ℓ² norms, averaging over congruence classes
and the level decomposition μ = Σ_{Q|q} f_Q, plus empirical probes for non-concentration, product growth,
flattening and bounded generation.

Set products are computed on integer codes of the elements (see MatElement.encode): every shard of the left
factor is multiplied against the right factor with numpy and the codes are deduplicated by hashing.

Classes:
    - MeasureKind
    - GroupMeasure
    - DecompositionCoeffs
    - GSampler
    - NonConcentrationReport
    - TripleProduct, HelfgottProfile, FlatteningTrace, BoundedGeneration

Functions:
    - uniform_on, point_mass, convolve, average_mod, kernel_measure, kernel_convolution_identity
    - decomposition_coeffs, f_component, decompose, verify_decomposition, in_level_space
    - trace_hits, nonconcentration
    - product_set, triple_product, growth_profile, helfgott_profile, bounded_generation_probe
    - flattening_ratio, flattening_iteration, reflect, pushforward
"""
import logging
import math
from collections import defaultdict
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from itertools import product
from typing import Dict, Iterable, Iterator, List, NamedTuple, Optional, Sequence, Set, Tuple

import numpy as np

from model.arithmetic.number_theory import divisors_of, factorize
from model.group.sl2 import (DEFAULT_GROUP_CAP, GroupElement, MatElement, congruence_coset, enumerate_group,
                             identity, inv, mat_mul, project, trace)
from model.scheduling.job import Job
from model.scheduling.scheduler import WorkerPool, shard
from model.utilities.exceptions import (EmptySetException, GroupCapExceededException, ModulusMismatchException,
                                        NotADivisorException, OutOfRangeException, ProductCapExceededException,
                                        SamplerBudgetException)

DEFAULT_PRODUCT_CAP = 20_000_000
EXHAUSTIVE_LEVEL = 8
# Pairs multiplied per numpy block.
_BLOCK = 1 << 20
# Largest q whose element codes a + bq + cq² + dq³ fit into int64.
MAX_ENCODABLE_Q = math.isqrt(math.isqrt(np.iinfo(np.int64).max))


class MeasureKind(Enum):
    PROBABILITY = "probability"
    SIGNED = "signed"


@dataclass(eq=False)
class GroupMeasure:
    """
    Sparse function Γ_q → Q. Zero values are dropped. A probability measure is non-negative with mass 1.
    Two measures are equal iff they have the same modulus and the same values, whatever their kind.
    """
    q: int
    values: Dict[GroupElement, Fraction] = field(default_factory=dict)
    kind: MeasureKind = MeasureKind.SIGNED

    def __post_init__(self) -> None:
        values = dict()
        for element, value in self.values.items():
            if element.q != self.q:
                raise ModulusMismatchException(self.q, element.q)
            value = Fraction(value)
            if value:
                values[element] = value
        self.values = values

        if self.kind is MeasureKind.PROBABILITY:
            if any(value < 0 for value in values.values()):
                raise OutOfRangeException("values", "negative", "non-negative values for a probability measure")
            if self.mass() != 1:
                raise OutOfRangeException("mass", self.mass(), "mass 1 for a probability measure")

    def __getitem__(self, element: GroupElement) -> Fraction:
        return self.values.get(element, Fraction(0))

    def __eq__(self, other: object) -> bool:
        return isinstance(other, GroupMeasure) and self.q == other.q and self.values == other.values

    def __len__(self) -> int:
        return len(self.values)

    def __add__(self, other: "GroupMeasure") -> "GroupMeasure":
        _same_modulus(self, other)
        values = defaultdict(Fraction, self.values)
        for element, value in other.values.items():
            values[element] += value
        return GroupMeasure(self.q, dict(values))

    def __sub__(self, other: "GroupMeasure") -> "GroupMeasure":
        return self + other.scale(-1)

    def scale(self, factor: Fraction) -> "GroupMeasure":
        return GroupMeasure(self.q, {element: value * factor for element, value in self.values.items()})

    def support(self) -> Set[GroupElement]:
        return set(self.values)

    def mass(self) -> Fraction:
        return sum(self.values.values(), Fraction(0))

    def l2_norm_squared(self) -> Fraction:
        """Exact Σ μ(x)²."""
        return sum((value * value for value in self.values.values()), Fraction(0))

    def l2_norm(self) -> float:
        return math.sqrt(self.l2_norm_squared())


def _same_modulus(first: GroupMeasure, second: GroupMeasure) -> None:
    if first.q != second.q:
        raise ModulusMismatchException(first.q, second.q)


def _modulus_of(elements: Iterable[GroupElement]) -> int:
    moduli = {element.q for element in elements}
    if not moduli:
        raise EmptySetException("set")
    if len(moduli) > 1:
        first, second = sorted(moduli)[:2]
        raise ModulusMismatchException(first, second)
    return moduli.pop()


def uniform_on(elements: Iterable[GroupElement]) -> GroupMeasure:
    """
    @return: The probability measure with value 1/|A| on A.
    @raise EmptySetException: If A is empty.
    """
    elements = set(elements)
    q = _modulus_of(elements)
    weight = Fraction(1, len(elements))
    return GroupMeasure(q, {element: weight for element in elements}, MeasureKind.PROBABILITY)


def point_mass(element: GroupElement) -> GroupMeasure:
    return uniform_on([element])


def convolve(mu: GroupMeasure, nu: GroupMeasure, cap: int = DEFAULT_PRODUCT_CAP) -> GroupMeasure:
    """
    (μ∗ν)(x) = Σ_y μ(y)·ν(y⁻¹x), i.e. every pair (y, z) of the supports puts μ(y)·ν(z) on y·z.

    @raise ProductCapExceededException: If |supp μ|·|supp ν| exceeds the cap.
    """
    _same_modulus(mu, nu)
    pairs = len(mu) * len(nu)
    if pairs > cap:
        raise ProductCapExceededException(pairs, cap)

    q = mu.q
    values: Dict[Tuple[int, int, int, int], Fraction] = defaultdict(Fraction)
    right = [(element.entries, value) for element, value in nu.values.items()]
    for left, left_value in mu.values.items():
        a, b, c, d = left.entries
        for (e, f, g, h), right_value in right:
            key = ((a * e + b * g) % q, (a * f + b * h) % q, (c * e + d * g) % q, (c * f + d * h) % q)
            values[key] += left_value * right_value

    kind = MeasureKind.PROBABILITY if (mu.kind is nu.kind is MeasureKind.PROBABILITY) else MeasureKind.SIGNED
    return GroupMeasure(q, {GroupElement(*key, q): value for key, value in values.items()}, kind)


def _level_key(element: MatElement, Q: int) -> Tuple[int, int, int, int]:
    return tuple(entry % Q for entry in element.entries)


def _require_level(Q: int, q: int) -> None:
    if Q < 1 or q % Q:
        raise NotADivisorException(Q, q)


def average_mod(mu: GroupMeasure, Q: int, cap: int = DEFAULT_GROUP_CAP) -> GroupMeasure:
    """
    μ_Q(x) = mean of μ over {y ≡ x mod Q}, which is μ ∗ kernel_measure(Q, q). Classes are cosets x·Γ(Q).

    @raise NotADivisorException: If Q does not divide q.
    """
    _require_level(Q, mu.q)
    if Q == mu.q:
        return GroupMeasure(mu.q, dict(mu.values), mu.kind)

    sums: Dict[Tuple[int, int, int, int], Fraction] = defaultdict(Fraction)
    representatives: Dict[Tuple[int, int, int, int], GroupElement] = dict()
    for element, value in mu.values.items():
        key = _level_key(element, Q)
        sums[key] += value
        representatives.setdefault(key, element)

    kernel = congruence_coset(Q, mu.q, cap)
    values = dict()
    for key, total in sums.items():
        if total:
            share = total / len(kernel)
            for member in kernel:
                values[mat_mul(representatives[key], member)] = share
    return GroupMeasure(mu.q, values, mu.kind)


def kernel_measure(Q: int, q: int, cap: int = DEFAULT_GROUP_CAP) -> GroupMeasure:
    """Uniform probability on Γ(Q)/Γ(q)."""
    _require_level(Q, q)
    return uniform_on(congruence_coset(Q, q, cap))


def kernel_convolution_identity(q1: int, q2: int, q: int, cap: int = DEFAULT_PRODUCT_CAP) -> bool:
    """
    Checks μ_{q1} ∗ μ_{q2} = μ_g ∗ μ_g for the kernel measures, g = gcd(q1, q2).
    """
    level = math.gcd(q1, q2)
    left = convolve(kernel_measure(q1, q), kernel_measure(q2, q), cap)
    right = convolve(kernel_measure(level, q), kernel_measure(level, q), cap)
    return left == right


@dataclass
class DecompositionCoeffs:
    """
    m(q′) for every divisor q′ of Q: ±1 iff q′ = ∏ p^e with e ∈ {n, n − 1} for each p^n || Q, with sign
    (−1)^(number of e = n − 1), and 0 otherwise.
    """
    Q: int
    coeffs: Dict[int, int]

    def nonzero(self) -> Dict[int, int]:
        return {divisor: coefficient for divisor, coefficient in self.coeffs.items() if coefficient}

    def check(self) -> bool:
        """
        @return: Σ m(q′)·q′ = ∏ (p^n − p^(n−1)).
        """
        expected = math.prod(p ** n - p ** (n - 1) for p, n in factorize(self.Q).items())
        return sum(coefficient * divisor for divisor, coefficient in self.coeffs.items()) == expected


def decomposition_coeffs(Q: int) -> DecompositionCoeffs:
    if Q < 1:
        raise OutOfRangeException("Q", Q, "Q >= 1")
    coeffs = {divisor: 0 for divisor in divisors_of(Q)}
    factors = list(factorize(Q).items())
    for lowered in product((False, True), repeat=len(factors)):
        divisor = math.prod(p ** (n - 1 if lower else n) for (p, n), lower in zip(factors, lowered))
        coeffs[divisor] = (-1) ** sum(lowered)
    return DecompositionCoeffs(Q, coeffs)


def f_component(mu: GroupMeasure, Q: int, cap: int = DEFAULT_GROUP_CAP) -> GroupMeasure:
    """
    f_Q = Σ_{q′|Q} m(q′)·μ_{q′}, a signed function in H_Q.
    """
    _require_level(Q, mu.q)
    result = GroupMeasure(mu.q)
    for divisor, coefficient in decomposition_coeffs(Q).nonzero().items():
        result = result + average_mod(mu, divisor, cap).scale(coefficient)
    return result


def decompose(mu: GroupMeasure, cap: int = DEFAULT_GROUP_CAP) -> Dict[int, GroupMeasure]:
    """
    @return: f_Q for every divisor Q of q.
    """
    return {Q: f_component(mu, Q, cap) for Q in divisors_of(mu.q)}


def verify_decomposition(mu: GroupMeasure, cap: int = DEFAULT_GROUP_CAP) -> bool:
    """
    @return: True iff Σ_{Q|q} f_Q = μ exactly.
    """
    total = GroupMeasure(mu.q)
    for component in decompose(mu, cap).values():
        total = total + component
    return total == mu


def in_level_space(f: GroupMeasure, Q: int, cap: int = DEFAULT_GROUP_CAP) -> bool:
    """
    Membership in H_Q: f is constant on the classes mod Q and sums to 0 over every class mod a proper divisor q′ of
    Q. Both conditions range over the whole group, zeros included.
    """
    _require_level(Q, f.q)
    elements = list(enumerate_group(f.q, cap))

    class_values: Dict[Tuple[int, int, int, int], Set[Fraction]] = defaultdict(set)
    for element in elements:
        class_values[_level_key(element, Q)].add(f[element])
    if any(len(values) > 1 for values in class_values.values()):
        return False

    for divisor in divisors_of(Q):
        if divisor == Q:
            continue
        sums: Dict[Tuple[int, int, int, int], Fraction] = defaultdict(Fraction)
        for element, value in f.values.items():
            sums[_level_key(element, divisor)] += value
        if any(sums.values()):
            return False
    return True


@dataclass
class GSampler:
    """
    Source of test matrices g ∈ Mat2(Z/q₁Z) that are nonzero modulo every prime dividing q₁. Levels up to
    EXHAUSTIVE_LEVEL are scanned exhaustively, larger ones with budget draws from a seeded generator.
    """
    budget: int = 200
    seed: int = 0
    exhaustive_level: int = EXHAUSTIVE_LEVEL

    def __post_init__(self) -> None:
        if self.budget < 1:
            raise SamplerBudgetException(self.budget)

    def mode(self, q1: int) -> str:
        return "exhaustive" if q1 <= self.exhaustive_level else "random"

    def samples(self, q1: int) -> Iterator[MatElement]:
        if self.mode(q1) == "exhaustive":
            for entries in product(range(q1), repeat=4):
                matrix = MatElement(*entries, q1)
                if matrix.nonzero_mod_every_p():
                    yield matrix
            return

        rng = np.random.default_rng([self.seed, q1])
        drawn = 0
        while drawn < self.budget:
            matrix = MatElement(*(int(value) for value in rng.integers(0, q1, size=4)), q1)
            if matrix.nonzero_mod_every_p():
                drawn += 1
                yield matrix


class NonConcentrationReport(NamedTuple):
    """
    Worst concentration of traces Tr(gx) mod q₁ over x ∈ A, with the two normalizations q₁^(−κ) and q^(−κ).
    """
    q: int
    omega: float
    kappa: float
    set_size: int
    levels: Tuple[int, ...]
    worst_ratio: Fraction
    worst_g: Optional[MatElement]
    worst_t: Optional[int]
    worst_q1: Optional[int]
    level_ratios: Dict[int, Fraction]
    passes_level_bound: bool
    passes_global_bound: bool
    modes: Dict[int, str]
    seed: int
    budget: int


def trace_hits(A: Iterable[GroupElement], g: MatElement, t: int, q1: int) -> int:
    """
    @return: #{x ∈ A: Tr(g·x) ≡ t (mod q₁)}.
    """
    hits = 0
    for x in A:
        if (trace(mat_mul(g, MatElement(*x.entries, q1))) - t) % q1 == 0:
            hits += 1
    return hits


def nonconcentration(A: Iterable[GroupElement],
                     omega: float = 0.1,
                     kappa: float = 0.25,
                     sampler: Optional[GSampler] = None) -> NonConcentrationReport:
    """
    For every divisor q₁ > q^ω of q and every sampled g, finds the most frequent trace t of g·x mod q₁ over A.

    @param A: A nonempty set of group elements.
    @param omega: Level exponent.
    @param kappa: Decay exponent of the bounds.
    @param sampler: Source of the matrices g.
    @return: The report; a level passes iff its worst ratio is below the bound.
    """
    elements = sorted(set(A), key=lambda element: element.encode())
    q = _modulus_of(elements)
    sampler = sampler if sampler is not None else GSampler()
    levels = tuple(divisor for divisor in divisors_of(q) if divisor >= 2 and divisor > q ** omega)

    entries = np.array([element.entries for element in elements], dtype=np.int64)
    worst = (Fraction(0), None, None, None)
    level_ratios: Dict[int, Fraction] = dict()
    for q1 in levels:
        reduced = entries % q1
        level_worst = Fraction(0)
        for g in sampler.samples(q1):
            # Tr(g·x) = g.a·x.a + g.b·x.c + g.c·x.b + g.d·x.d
            traces = (g.a * reduced[:, 0] + g.b * reduced[:, 2] + g.c * reduced[:, 1] + g.d * reduced[:, 3]) % q1
            counts = np.bincount(traces, minlength=q1)
            t = int(np.argmax(counts))
            ratio = Fraction(int(counts[t]), len(elements))
            if ratio > level_worst:
                level_worst = ratio
            if ratio > worst[0]:
                worst = (ratio, g, t, q1)
        level_ratios[q1] = level_worst

    passes_level = all(ratio < q1 ** -kappa for q1, ratio in level_ratios.items())
    passes_global = all(ratio < q ** -kappa for ratio in level_ratios.values())
    logging.info("Non-concentration for q = %s over levels %s: worst ratio %s.", q, levels, worst[0])
    return NonConcentrationReport(q=q, omega=omega, kappa=kappa, set_size=len(elements), levels=levels,
                                  worst_ratio=worst[0], worst_g=worst[1], worst_t=worst[2], worst_q1=worst[3],
                                  level_ratios=level_ratios,
                                  passes_level_bound=passes_level,
                                  passes_global_bound=passes_global,
                                  modes={q1: sampler.mode(q1) for q1 in levels},
                                  seed=sampler.seed, budget=sampler.budget)


def _encode_all(elements: Iterable[GroupElement]) -> np.ndarray:
    """
    @raise GroupCapExceededException: If the modulus is too large for int64 codes.
    """
    elements = list(elements)
    if elements and elements[0].q > MAX_ENCODABLE_Q:
        raise GroupCapExceededException(elements[0].q, MAX_ENCODABLE_Q ** 3)
    return np.unique(np.fromiter((element.encode() for element in elements), dtype=np.int64, count=len(elements)))


def _decode_all(codes: np.ndarray, q: int) -> Set[GroupElement]:
    return {GroupElement.decode(int(code), q) for code in codes}


def _entries_of(codes: np.ndarray, q: int) -> np.ndarray:
    codes = codes.astype(np.int64)
    return np.stack([codes % q, codes // q % q, codes // (q * q) % q, codes // (q ** 3) % q], axis=1)


def _product_codes(left: np.ndarray, right: np.ndarray, q: int) -> np.ndarray:
    """
    Worker function: the distinct codes of x·y for x in left and y in right.
    """
    x = _entries_of(left, q)
    y = _entries_of(right, q)
    found = list()
    step = max(1, _BLOCK // max(1, len(right)))
    for start in range(0, len(x), step):
        block = x[start:start + step]
        a, b, c, d = (block[:, index][:, None] for index in range(4))
        e, f, g, h = (y[:, index][None, :] for index in range(4))
        codes = ((a * e + b * g) % q
                 + q * (((a * f + b * h) % q)
                        + q * (((c * e + d * g) % q)
                               + q * ((c * f + d * h) % q))))
        found.append(np.unique(codes))
    return np.unique(np.concatenate(found)) if found else np.empty(0, dtype=np.int64)


def _product_of_codes(left: np.ndarray,
                      right: np.ndarray,
                      q: int,
                      cap: int,
                      pool: Optional[WorkerPool] = None) -> np.ndarray:
    pairs = len(left) * len(right)
    if pairs > cap:
        raise ProductCapExceededException(pairs, cap)
    pool = pool if pool is not None else WorkerPool()
    chunks = shard(list(left), pool.shards) if len(left) else []
    jobs = [Job(f"product_{index}", _product_codes, (np.array(chunk, dtype=np.int64), right, q), key=(index,))
            for index, chunk in enumerate(chunks)]
    parts = pool.map(jobs)
    return np.unique(np.concatenate(parts)) if parts else np.empty(0, dtype=np.int64)


def product_set(X: Iterable[GroupElement],
                Y: Iterable[GroupElement],
                cap: int = DEFAULT_PRODUCT_CAP,
                pool: Optional[WorkerPool] = None) -> Set[GroupElement]:
    """
    X·Y = {x·y}. The left factor is sharded over the pool; shard results are merged as sets.

    @raise ProductCapExceededException: If |X|·|Y| exceeds the cap.
    """
    X, Y = set(X), set(Y)
    q = _modulus_of(X | Y)
    return _decode_all(_product_of_codes(_encode_all(X), _encode_all(Y), q, cap, pool), q)


class TripleProduct(NamedTuple):
    size: int
    size2: int
    size3: int
    ratio: Fraction


def triple_product(A: Iterable[GroupElement],
                   cap: int = DEFAULT_PRODUCT_CAP,
                   pool: Optional[WorkerPool] = None) -> TripleProduct:
    """
    |A·A·A| through two joins, A·A and then (A·A)·A.
    """
    A = set(A)
    q = _modulus_of(A)
    codes = _encode_all(A)
    square = _product_of_codes(codes, codes, q, cap, pool)
    cube = _product_of_codes(square, codes, q, cap, pool)
    return TripleProduct(len(codes), len(square), len(cube), Fraction(len(cube), len(codes)))


def growth_profile(A: Iterable[GroupElement],
                   k_max: int,
                   cap: int = DEFAULT_PRODUCT_CAP,
                   pool: Optional[WorkerPool] = None) -> List[int]:
    """
    @return: |(A ∪ {e})^k| for k = 1..k_max. Once the sets stop growing the size is repeated.
    """
    A = set(A)
    q = _modulus_of(A)
    base = _encode_all(A | {identity(q)})
    current = base
    sizes = [len(current)]
    while len(sizes) < k_max:
        following = _product_of_codes(current, base, q, cap, pool)
        if len(following) == len(current):
            sizes.extend([len(current)] * (k_max - len(sizes)))
            break
        current = following
        sizes.append(len(current))
    return sizes


class HelfgottProfile(NamedTuple):
    """
    For B = A ∪ A⁻¹: ratios |B^l|/|B| against the bounds (|B³|/|B|)^(l−2).
    """
    size: int
    ratios: Dict[int, Fraction]
    bounds: Dict[int, Fraction]
    holds: Dict[int, bool]


def helfgott_profile(A: Iterable[GroupElement],
                     ls: Sequence[int] = (4, 5),
                     symmetrize: bool = True,
                     cap: int = DEFAULT_PRODUCT_CAP,
                     pool: Optional[WorkerPool] = None) -> HelfgottProfile:
    """
    Evaluates the tripling inequality |B^l|/|B| ≤ (|B³|/|B|)^(l−2) for l in ls.
    """
    A = set(A)
    q = _modulus_of(A)
    B = A | {inv(element) for element in A} if symmetrize else A
    base = _encode_all(B)
    powers = {1: base}
    for exponent in range(2, max(max(ls), 3) + 1):
        powers[exponent] = _product_of_codes(powers[exponent - 1], base, q, cap, pool)

    tripling = Fraction(len(powers[3]), len(base))
    ratios = {l: Fraction(len(powers[l]), len(base)) for l in ls}
    bounds = {l: tripling ** (l - 2) for l in ls}
    return HelfgottProfile(len(base), ratios, bounds, {l: ratios[l] <= bounds[l] for l in ls})


def flattening_ratio(mu: GroupMeasure, cap: int = DEFAULT_PRODUCT_CAP) -> float:
    """
    ‖μ∗μ‖₂ / ‖μ‖₂.

    @raise EmptySetException: For the zero measure.
    """
    if not mu.values:
        raise EmptySetException("measure")
    return math.sqrt(convolve(mu, mu, cap).l2_norm_squared() / mu.l2_norm_squared())


@dataclass
class FlatteningTrace:
    """
    Norms and support sizes of μ, μ∗μ, (μ∗μ)∗(μ∗μ), ... until the target q^(−3/2+γ) is reached.
    """
    q: int
    gamma: float
    target: float
    norms: List[float] = field(default_factory=list)
    supports: List[int] = field(default_factory=list)
    rounds: int = 0
    reached: bool = False
    capped: bool = False


def flattening_iteration(mu: GroupMeasure,
                         gamma: float = 0.1,
                         max_rounds: int = 10,
                         cap: int = DEFAULT_PRODUCT_CAP) -> FlatteningTrace:
    """
    Iterates μ ← μ∗μ while ‖μ‖₂ > q^(−3/2+γ). A convolution beyond the product cap ends the iteration with
    capped set instead of failing.
    """
    if not mu.values:
        raise EmptySetException("measure")
    trace_record = FlatteningTrace(mu.q, gamma, mu.q ** (-1.5 + gamma))
    current = mu
    while True:
        trace_record.norms.append(current.l2_norm())
        trace_record.supports.append(len(current))
        if trace_record.norms[-1] <= trace_record.target:
            trace_record.reached = True
            break
        if trace_record.rounds >= max_rounds:
            break
        try:
            current = convolve(current, current, cap)
        except ProductCapExceededException as error:
            logging.warning("Flattening stopped after %s rounds: %s", trace_record.rounds, error)
            trace_record.capped = True
            break
        trace_record.rounds += 1
    return trace_record


def reflect(mu: GroupMeasure) -> GroupMeasure:
    """μ̂(s) = μ(s⁻¹)."""
    return GroupMeasure(mu.q, {inv(element): value for element, value in mu.values.items()}, mu.kind)


def pushforward(mu: GroupMeasure, q0: int) -> GroupMeasure:
    """
    Image of μ under the reduction Γ_q → Γ_{q0}.
    """
    values: Dict[GroupElement, Fraction] = defaultdict(Fraction)
    for element, value in mu.values.items():
        values[project(element, q0)] += value
    return GroupMeasure(q0, dict(values), mu.kind)


class BoundedGeneration(NamedTuple):
    """
    Least k ≤ K_max with Γ(Q)/Γ(q) ⊆ (A ∪ {e})^k for a proper divisor Q, and the smallest such Q.
    """
    k_cover: Optional[int]
    Q_found: Optional[int]
    sizes: Tuple[int, ...]


def bounded_generation_probe(A: Iterable[GroupElement],
                             K_max: int = 40,
                             cap: int = DEFAULT_PRODUCT_CAP,
                             group_cap: int = DEFAULT_GROUP_CAP,
                             pool: Optional[WorkerPool] = None) -> BoundedGeneration:
    """
    Grows (A ∪ {e})^k and tests the congruence cosets of all proper divisors Q < q in increasing order. The search
    ends early once the powers stop growing.
    """
    A = set(A)
    q = _modulus_of(A)
    if q ** 3 > group_cap:
        raise GroupCapExceededException(q, group_cap)
    cosets = [(Q, _encode_all(congruence_coset(Q, q, group_cap))) for Q in divisors_of(q) if Q < q]

    base = _encode_all(A | {identity(q)})
    current = base
    sizes = list()
    for k in range(1, K_max + 1):
        if k > 1:
            following = _product_of_codes(current, base, q, cap, pool)
            if len(following) == len(current):
                break
            current = following
        sizes.append(len(current))
        for Q, coset in cosets:
            if np.isin(coset, current, assume_unique=True).all():
                return BoundedGeneration(k, Q, tuple(sizes))
    return BoundedGeneration(None, None, tuple(sizes))
