#!/usr/bin/env python
# -*- coding: utf-8 -*-
# type: ignore[no-untyped-def]
"""
Tests for measures on SL2(Z/qZ), the level decomposition and the growth probes.
"""
from collections import deque
from fractions import Fraction

import numpy as np
import pytest

from model.group.measures import (MAX_ENCODABLE_Q, GroupMeasure, GSampler, MeasureKind, average_mod,
                                  bounded_generation_probe, convolve, decompose, decomposition_coeffs, f_component,
                                  flattening_iteration, flattening_ratio, growth_profile, helfgott_profile,
                                  in_level_space, kernel_convolution_identity, kernel_measure, nonconcentration,
                                  point_mass, product_set, pushforward, reflect, trace_hits, triple_product,
                                  uniform_on, verify_decomposition)
from model.group.sl2 import (GroupElement, MatElement, congruence_coset, enumerate_group, generator, generator_set,
                             group_order, identity, inv, mul, random_element)
from model.utilities.exceptions import (EmptySetException, GroupCapExceededException, ModulusMismatchException,
                                        OutOfRangeException, ProductCapExceededException, SamplerBudgetException)


def random_measure(q, size, rng):
    """A probability measure with random integer weights on random elements."""
    weights = dict()
    for _ in range(size):
        weights[random_element(q, rng)] = int(rng.integers(1, 10))
    total = sum(weights.values())
    return GroupMeasure(q, {element: Fraction(weight, total) for element, weight in weights.items()},
                        MeasureKind.PROBABILITY)


def cayley_radius(generators, q):
    """Largest word length in the generators needed to reach an element, and the number of elements reached."""
    distance = {identity(q): 0}
    queue = deque([identity(q)])
    while queue:
        element = queue.popleft()
        for g in generators:
            following = mul(element, g)
            if following not in distance:
                distance[following] = distance[element] + 1
                queue.append(following)
    return max(distance.values()), len(distance)


@pytest.fixture(name="generators")
def generators_fixture():
    """S and T modulo 4."""
    return {GroupElement(0, -1, 1, 0, 4), GroupElement(1, 1, 0, 1, 4)}


@pytest.fixture(name="subgroup")
def subgroup_fixture():
    """Γ(2)/Γ(4), a subgroup of order 8."""
    return congruence_coset(2, 4)


class TestMeasures:
    """
    Construction, convolution and averaging.
    """

    def test_uniform(self):
        """Mass 1 and ℓ² norm 1/|A|."""
        measure = uniform_on(generator(j, 7) for j in range(1, 4))
        assert measure.kind is MeasureKind.PROBABILITY
        assert measure.mass() == 1
        assert measure.l2_norm_squared() == Fraction(1, 3)

        with pytest.raises(EmptySetException):
            uniform_on([])

    def test_probability_constraints(self):
        """Negative values or a wrong mass are rejected for probability measures."""
        with pytest.raises(OutOfRangeException):
            GroupMeasure(5, {identity(5): Fraction(1, 2)}, MeasureKind.PROBABILITY)
        with pytest.raises(OutOfRangeException):
            GroupMeasure(5, {identity(5): Fraction(2), generator(1, 5): Fraction(-1)}, MeasureKind.PROBABILITY)

    def test_point_masses(self):
        """δ_g ∗ δ_h = δ_{gh}."""
        g, h = generator(2, 9), generator(5, 9)
        assert convolve(point_mass(g), point_mass(h)) == point_mass(g * h)

    def test_uniform_absorbs(self):
        """Uniform measure on the group absorbs every probability measure."""
        group = uniform_on(enumerate_group(3))
        measure = uniform_on([generator(1, 3), identity(3)])
        assert convolve(group, measure) == group
        assert convolve(measure, group) == group

    def test_modulus_mismatch(self):
        """Convolution needs a common modulus."""
        with pytest.raises(ModulusMismatchException):
            convolve(point_mass(identity(5)), point_mass(identity(7)))

    def test_product_cap(self):
        """Too many pairs are refused."""
        measure = uniform_on(generator(j, 7) for j in range(1, 4))
        with pytest.raises(ProductCapExceededException):
            convolve(measure, measure, cap=8)

    def test_average_mod(self):
        """Averaging a point mass spreads it over its class."""
        delta = point_mass(identity(4))
        assert average_mod(delta, 4) == delta
        assert average_mod(delta, 2) == kernel_measure(2, 4)
        assert average_mod(delta, 1) == uniform_on(enumerate_group(4))
        assert average_mod(delta, 2).mass() == 1

    def test_kernel_convolution_identity(self):
        """μ_{q1} ∗ μ_{q2} = μ_g ∗ μ_g with g = gcd(q1, q2)."""
        assert kernel_convolution_identity(2, 3, 6)
        assert kernel_convolution_identity(2, 4, 4)

    def test_reflect_and_pushforward(self):
        """Reflection inverts the support; the pushforward of uniform is uniform."""
        g = generator(3, 11)
        assert reflect(point_mass(g)) == point_mass(inv(g))
        assert pushforward(uniform_on(enumerate_group(6)), 3) == uniform_on(enumerate_group(3))


class TestDecomposition:
    """
    μ = Σ_{Q|q} f_Q.
    """

    def test_coefficients(self):
        """m(q′) for Q = 12 and Q = 1."""
        coeffs = decomposition_coeffs(12)
        assert coeffs.nonzero() == {2: 1, 4: -1, 6: -1, 12: 1}
        assert coeffs.coeffs[3] == 0
        assert coeffs.check()
        assert decomposition_coeffs(1).nonzero() == {1: 1}
        assert all(decomposition_coeffs(Q).check() for Q in range(1, 60))

    def test_decomposition_sums_to_measure(self):
        """The components add up exactly."""
        measure = uniform_on([generator(1, 6), generator(2, 6), identity(6)])
        assert verify_decomposition(measure)
        assert verify_decomposition(point_mass(identity(4)))

    def test_components_lie_in_level_spaces(self):
        """f_Q ∈ H_Q for every divisor Q."""
        measure = uniform_on([generator(1, 6), identity(6)])
        for Q in (1, 2, 3, 6):
            assert in_level_space(f_component(measure, Q), Q)

    def test_decomposition_of_the_generator_measure(self):
        """μ_S for N = 10 and q = 12: components add up and each lies in its level space."""
        measure = uniform_on(generator_set(10, 12))
        components = decompose(measure)
        assert set(components) == {1, 2, 3, 4, 6, 12}
        assert verify_decomposition(measure)
        for Q, component in components.items():
            assert in_level_space(component, Q)

    @pytest.mark.parametrize("q", [8, 12, 18, 20, 30])
    def test_decomposition_of_random_measures(self, q):
        """Seeded random probability measures decompose exactly."""
        rng = np.random.default_rng([11, q])
        for _ in range(3):
            measure = random_measure(q, 6, rng)
            assert verify_decomposition(measure)
        components = decompose(measure)
        assert all(in_level_space(component, Q) for Q, component in components.items())

    def test_decomposition_at_sixty(self):
        """The largest desk modulus, with the generator measure."""
        assert verify_decomposition(uniform_on(generator_set(10, 60)))

    def test_point_mass_is_not_primitive(self):
        """A point mass does not average to 0 over coarser classes."""
        assert not in_level_space(point_mass(identity(6)), 6)


class TestProbes:
    """
    Non-concentration, product growth, flattening and bounded generation.
    """

    def test_sampler(self):
        """Exhaustive for small levels, seeded draws above."""
        sampler = GSampler(budget=5, seed=3)
        assert sampler.mode(8) == "exhaustive"
        assert sampler.mode(9) == "random"
        assert len(list(sampler.samples(2))) == 15
        assert list(sampler.samples(9)) == list(GSampler(budget=5, seed=3).samples(9))
        assert len(list(sampler.samples(9))) == 5

        with pytest.raises(SamplerBudgetException):
            GSampler(budget=0)

    def test_trace_hits(self):
        """Tr(g·x) of the identity."""
        unit = MatElement(1, 0, 0, 1, 5)
        assert trace_hits([identity(5)], unit, 2, 5) == 1
        assert trace_hits([identity(5)], unit, 3, 5) == 0

    def test_nonconcentration(self):
        """A singleton concentrates completely, the whole group does not."""
        singleton = nonconcentration([identity(5)])
        assert singleton.worst_ratio == 1
        assert not singleton.passes_level_bound
        assert singleton.levels == (5,)
        assert singleton.modes == {5: "exhaustive"}

        group = nonconcentration(enumerate_group(5))
        assert 0 < group.worst_ratio < 1
        assert set(group.level_ratios) == {5}

    def test_products_of_a_subgroup(self, subgroup):
        """A subgroup does not grow."""
        assert product_set(subgroup, subgroup) == subgroup
        assert product_set([identity(4)], subgroup) == subgroup
        assert triple_product(subgroup).ratio == 1
        profile = helfgott_profile(subgroup)
        assert all(profile.holds.values())
        assert profile.ratios == {4: 1, 5: 1}

    def test_product_set_cap(self, subgroup):
        """|X|·|Y| beyond the cap is refused."""
        with pytest.raises(ProductCapExceededException):
            product_set(subgroup, subgroup, cap=10)

    def test_growth_profile(self, generators):
        """S and T reach the whole group and then stop growing."""
        sizes = growth_profile(generators, 60)
        assert len(sizes) == 60
        assert sizes == sorted(sizes)
        assert sizes[-1] == 48

    def test_flattening(self, generators):
        """Norms never increase; the uniform measure is already flat."""
        flat = flattening_iteration(uniform_on(enumerate_group(5)))
        assert flat.reached
        assert flat.rounds == 0
        assert flattening_ratio(uniform_on(enumerate_group(5))) == pytest.approx(1.0)

        trace_record = flattening_iteration(uniform_on(generators), gamma=0.1, max_rounds=4)
        assert all(following <= norm + 1e-12 for norm, following in zip(trace_record.norms,
                                                                         trace_record.norms[1:]))
        assert trace_record.rounds <= 4

        capped = flattening_iteration(uniform_on(generators), cap=1)
        assert capped.capped
        assert not capped.reached

    def test_bounded_generation(self, generators):
        """Powers of S and T cover a congruence coset."""
        result = bounded_generation_probe(generators, K_max=60)
        assert result.k_cover is not None
        assert result.Q_found in (1, 2)
        assert list(result.sizes) == sorted(result.sizes)

        with pytest.raises(GroupCapExceededException):
            bounded_generation_probe(generators, group_cap=10)

    @pytest.mark.parametrize("q", [53, 101])
    def test_generator_measure_flattens(self, q):
        """μ_S with N = 20 shrinks under self-convolution at a prime q."""
        measure = uniform_on(generator_set(20, q))
        assert len(measure) == 20
        ratio = flattening_ratio(measure)
        assert ratio < 1
        assert ratio == pytest.approx(20 ** -0.5, rel=1e-3)

    def test_bounded_generation_matches_cayley_radius(self):
        """Covering Γ_q takes exactly the radius of the directed Cayley graph of S."""
        generators = generator_set(2, 5)
        radius, reached = cayley_radius(generators, 5)
        assert reached == group_order(5)

        result = bounded_generation_probe(generators, K_max=40)
        assert result.Q_found == 1
        assert result.k_cover == max(1, radius)
        assert result.sizes[-1] == group_order(5)

    @pytest.mark.parametrize("q", [5, 7, 11])
    def test_tripling_inequality_on_random_sets(self, q):
        """|B^l|/|B| ≤ (|B³|/|B|)^(l−2) for B = A ∪ A⁻¹, l = 4, 5, on 100 random sets A."""
        rng = np.random.default_rng([3, q])
        violations = 0
        for _ in range(100):
            A = {random_element(q, rng) for _ in range(int(rng.integers(2, 6)))}
            profile = helfgott_profile(A, (4, 5))
            violations += sum(not holds for holds in profile.holds.values())
            assert triple_product(A).size3 >= len(A)
        assert violations == 0

    def test_unencodable_modulus(self):
        """Element codes must fit into int64."""
        q = MAX_ENCODABLE_Q + 1
        with pytest.raises(GroupCapExceededException):
            triple_product([identity(q), GroupElement(1, 1, 0, 1, q)])
        assert triple_product([identity(MAX_ENCODABLE_Q)]).size3 == 1
