#!/usr/bin/env python
# -*- coding: utf-8 -*-
# type: ignore[no-untyped-def]
"""
Tests for the arithmetic in SL2(Z/qZ) and the projective line.
"""
import numpy as np
import pytest

from model.group.sl2 import (GroupElement, MatElement, ProjPoint, act, adjugate, affine, congruence_coset,
                             enumerate_group, generator, generator_set, group_order, identity, inv, kernel_size,
                             mat_mul, mobius, mul, orbit, p1_size, project, projective_line, random_element, trace)
from model.utilities.exceptions import (DeterminantException, GroupCapExceededException, ModulusMismatchException,
                                        NotADivisorException)


def standard_generators(q):
    """S and T generate SL2(Z/qZ)."""
    return [GroupElement(0, -1, 1, 0, q), GroupElement(1, 1, 0, 1, q)]


@pytest.fixture(name="rng")
def rng_fixture():
    return np.random.default_rng(7)


class TestGroupElement:
    """
    Elements, products and inverses.
    """

    def test_generators_have_determinant_one(self):
        """g_j = [[2j, 1 − 4j²], [−1, 2j]] lies in SL2 for every j and q."""
        for q in (2, 5, 12, 101):
            for j in range(1, 30):
                assert generator(j, q).determinant() == 1 % q

    def test_determinant_is_checked(self):
        """Singular matrices are no group elements."""
        with pytest.raises(DeterminantException):
            GroupElement(1, 1, 1, 1, 5)

    def test_modulus_mismatch(self):
        """Elements of different moduli cannot be multiplied."""
        with pytest.raises(ModulusMismatchException):
            mul(identity(5), identity(7))

    def test_group_laws(self, rng):
        """Associativity, identity and inverses on random elements."""
        for q in (6, 35, 101):
            for _ in range(20):
                g, h, k = (random_element(q, rng) for _ in range(3))
                assert mul(mul(g, h), k) == mul(g, mul(h, k))
                assert mul(g, identity(q)) == g
                assert mul(g, inv(g)) == identity(q)
                assert g * h == mul(g, h)

    def test_adjugate_of_matrix(self):
        """The adjugate inverts a unit-determinant matrix up to the determinant."""
        matrix = MatElement(2, 1, 1, 3, 7)
        assert mat_mul(matrix, adjugate(matrix)) == MatElement(5, 0, 0, 5, 7)

    def test_encode_decode(self):
        """Codes are a bijection onto [0, q⁴)."""
        elements = list(enumerate_group(3))
        codes = {element.encode() for element in elements}
        assert len(codes) == len(elements)
        assert all(0 <= code < 3 ** 4 for code in codes)
        assert all(GroupElement.decode(element.encode(), 3) == element for element in elements)

    def test_trace_and_reduction(self):
        """Trace of the identity, nonvanishing modulo every prime."""
        assert trace(identity(7)) == 2
        assert not MatElement(2, 0, 0, 2, 6).nonzero_mod_every_p()
        assert MatElement(3, 0, 0, 2, 6).nonzero_mod_every_p()

    def test_generator_set_removes_repetitions(self):
        """g_j only depends on j modulo q, and for even q on j modulo q/2."""
        assert len(generator_set(10, 3)) == 3
        assert len(generator_set(4, 4)) == 2

class TestEnumeration:
    """
    Group orders, cosets and projections.
    """

    @pytest.mark.parametrize("q", [2, 3, 4, 5, 6, 8, 9, 12])
    def test_group_order(self, q):
        """Enumeration yields |SL2(Z/qZ)| distinct elements."""
        elements = list(enumerate_group(q))
        assert len(elements) == len(set(elements)) == group_order(q)

    def test_known_orders(self):
        """|SL2(Z/qZ)| for small q."""
        assert [group_order(q) for q in (2, 3, 4, 5, 6)] == [6, 24, 48, 120, 144]

    def test_group_cap(self):
        """q³ beyond the cap is refused."""
        with pytest.raises(GroupCapExceededException):
            list(enumerate_group(30, cap=1000))

    def test_congruence_coset(self):
        """Γ(Q)/Γ(q) is the kernel of the reduction to Q."""
        coset = congruence_coset(2, 4)
        assert len(coset) == kernel_size(4, 2) == 8
        assert all(project(element, 2) == identity(2) for element in coset)
        assert len(congruence_coset(1, 5)) == 120
        assert congruence_coset(6, 6) == {identity(6)}

        with pytest.raises(NotADivisorException):
            congruence_coset(3, 4)

    def test_project(self):
        """Reduction commutes with the generator formula."""
        assert project(generator(3, 12), 4) == generator(3, 4)
        with pytest.raises(NotADivisorException):
            project(generator(3, 12), 5)


class TestProjectiveLine:
    """
    Points of P¹(Z/qZ) and the linear fractional action.
    """

    @pytest.mark.parametrize("q", [2, 3, 4, 6, 8, 9, 12, 30])
    def test_size(self, q):
        """The enumeration has p1_size(q) distinct points."""
        points = projective_line(q)
        assert len(points) == len(set(points)) == p1_size(q)

    def test_scaling(self):
        """Pairs differing by a unit are the same point."""
        assert ProjPoint(2, 4, 7) == ProjPoint(1, 2, 7)
        assert ProjPoint(5, 5, 12) == ProjPoint(1, 1, 12)
        assert ProjPoint(2, 3, 6) != ProjPoint(1, 3, 6)

    def test_transitive_action(self):
        """The orbit of (0 : 1) under S and T is the whole line."""
        for q in (5, 6, 12):
            assert orbit(affine(0, q), standard_generators(q)) == set(projective_line(q))

    def test_mobius(self):
        """(a : 1) goes to (b : 1) with (a + 2j)(b + 2j) ≡ 1."""
        q = 13
        for j in (1, 2, 5):
            for a in range(q):
                if (a + 2 * j) % q == 0:
                    continue
                b = (pow(a + 2 * j, -1, q) - 2 * j) % q
                assert act(mobius(j, q), affine(a, q)) == affine(b, q)

    @pytest.mark.parametrize("q", [4, 6, 8, 9, 10, 12, 15, 16, 18, 20, 21, 24, 25, 27, 30, 36, 40, 42, 45, 48, 50])
    def test_mobius_on_composite_moduli(self, q):
        """(a : 1) maps to (b : 1) exactly when (a + 2j)(b + 2j) ≡ 1, also where a + 2j is not a unit."""
        for j in (1, 2, 3):
            m = mobius(j, q)
            for a in range(q):
                image = act(m, affine(a, q))
                for b in range(q):
                    congruent = (a + 2 * j) * (b + 2 * j) % q == 1 % q
                    assert (image == affine(b, q)) == congruent

    def test_singular_action(self):
        """Matrices with a non-unit determinant do not act."""
        with pytest.raises(DeterminantException):
            act(MatElement(2, 0, 0, 1, 4), affine(1, 4))
