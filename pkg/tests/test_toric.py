"""Tests for stacky line potentials, critical data and the bulk-deformed teardrop."""
import math
from fractions import Fraction

import pytest

from mirror_mf.algebra.ring import FREE, AlphaRelation, LaurentPolynomial, NovikovScalar, T
from mirror_mf.exceptions import ToricDataError
from mirror_mf.services.toric import (
    StackyLine,
    bulk_c,
    bulk_critical,
    bulk_critical_roots,
    bulk_potential,
    coprime_lines,
    critical_data,
    critical_value_formula,
    displaceable_bulk_fiber,
    hori_vafa_potential,
)

Z = ("z",)
BULK_POSITIONS = [Fraction(0), Fraction(1, 12), Fraction(1, 8), Fraction(1, 6), Fraction(1, 4), Fraction(3, 10)]


def z_var():
    return LaurentPolynomial.variable("z", Z)


class TestStackyLine:
    """Weights, polytope and the alpha relation."""

    def test_polytope_and_relation(self):
        """P(3,1) has polytope [-1/3, 1] and relation 3 alpha^4 = 1."""
        s = StackyLine(3, 1)
        assert s.moment_polytope == (Fraction(-1, 3), Fraction(1))
        assert s.relation == AlphaRelation.quotient(3, 1)
        assert s.q == T(Fraction(1, 3))
        assert s.label == "P(3,1)"

    @pytest.mark.parametrize("m, n", [(0, 1), (1, -2), (True, 1)])
    def test_invalid_weights(self, m, n):
        """Weights must be positive integers."""
        with pytest.raises(ToricDataError):
            StackyLine(m, n)

    def test_non_coprime_allowed(self):
        """Non-coprime weights only warn."""
        assert StackyLine(2, 4).relation.period == 6


class TestPotential:
    """W = z^m + T^((m+n)/m) z^-n."""

    def test_cp1_line(self):
        """P(1,1) gives z + T^2/z."""
        z = z_var()
        assert hori_vafa_potential(StackyLine(1, 1)) == z + T(2) * z ** -1

    def test_teardrop(self):
        """P(3,1) gives z^3 + T^(4/3)/z."""
        z = z_var()
        assert hori_vafa_potential(StackyLine(3, 1)) == z ** 3 + T(Fraction(4, 3)) * z ** -1

    def test_independent_of_fiber(self):
        """The chart absorbs the fiber position."""
        s = StackyLine(2, 3)
        assert hori_vafa_potential(s, Fraction(1, 5)) == hori_vafa_potential(s)


class TestCriticalData:
    """z0 = q alpha is critical with value q^m (alpha^m + alpha^-n)."""

    def test_teardrop_value(self):
        """On P(3,1) the value reduces to 4 T alpha^3."""
        data = critical_data(StackyLine(3, 1))
        rel = AlphaRelation.quotient(3, 1)
        expected = NovikovScalar.monomial(4, 1, 3, rel)
        assert data.critical_value == expected
        assert data.critical_point == NovikovScalar.monomial(1, Fraction(1, 3), 1, rel)

    def test_cp1_value(self):
        """On P(1,1) alpha^-1 = alpha so the value is 2 T alpha."""
        data = critical_data(StackyLine(1, 1))
        assert data.critical_value == NovikovScalar.monomial(2, 1, 1, AlphaRelation.quotient(1, 1))

    @pytest.mark.parametrize("m, n", [(1, 2), (2, 3), (4, 1), (3, 5)])
    def test_derivative_vanishes(self, m, n):
        """Critical data exists for several coprime weights."""
        s = StackyLine(m, n)
        data = critical_data(s)
        assert data.potential.derivative("z").evaluate({"z": data.critical_point}).is_zero

    def test_free_formula(self):
        """Over free alpha the value keeps both powers."""
        s = StackyLine(2, 1)
        alpha = NovikovScalar.alpha(FREE)
        assert critical_value_formula(s, FREE) == T(1) * (alpha ** 2 + alpha ** -1)


class TestBulk:
    """W^b = z^3 + T^(4/3)/z + c z on the teardrop."""

    def test_c_values(self):
        """c(1/6) = T^(1/3) - 3T and c(0) = -2T^(2/3)."""
        assert bulk_c(Fraction(1, 6)) == T(Fraction(1, 3)) - T(1, 3)
        assert bulk_c(0) == T(Fraction(2, 3), -2)

    def test_c_leaves_lambda_plus(self):
        """At u = 1/3 the constant term 1 appears in c."""
        bulk = bulk_potential(Fraction(1, 3))
        assert not bulk.c_in_lambda_plus
        assert displaceable_bulk_fiber(Fraction(1, 3))
        assert not displaceable_bulk_fiber(Fraction(1, 6))

    def test_potential_shape(self):
        """The orbifold disc contributes c z."""
        u = Fraction(1, 6)
        z = z_var()
        expected = z ** 3 + T(Fraction(4, 3)) * z ** -1 + bulk_c(u) * z
        assert bulk_potential(u).potential == expected

    @pytest.mark.parametrize("u", BULK_POSITIONS)
    def test_critical_value(self, u):
        """lambda^b = 2T^(1-u) - 2T^(3u+1) at z0 = T^(u+1/3)."""
        data = bulk_critical(u)
        assert data.critical_point == T(u + Fraction(1, 3))
        assert data.critical_value == T(1 - u, 2) - T(3 * u + 1, 2)

    def test_four_roots(self):
        """Two roots in the Novikov field, two needing sqrt(-1/3)."""
        roots = bulk_critical_roots(Fraction(1, 6))
        assert len(roots) == 4
        assert [r.value for r in roots[:2]] == [T(Fraction(1, 2)), T(Fraction(1, 2), -1)]
        assert all(r.value is None for r in roots[2:])
        assert "sqrt(-1/3)" in roots[2].description


class TestCoprimeLines:
    """Enumeration of weight pairs for sweeps."""

    def test_small_bound(self):
        """Up to m + n = 4: (1,1), (1,2), (2,1), (1,3), (3,1)."""
        assert [(s.m, s.n) for s in coprime_lines(4)] == [(1, 1), (1, 2), (2, 1), (1, 3), (3, 1)]

    def test_default_bound(self):
        """The default bound comes from the settings."""
        lines = coprime_lines()
        assert max(s.m + s.n for s in lines) == 12
        assert all(math.gcd(s.m, s.n) == 1 for s in lines)

    def test_every_line_is_critical(self):
        """dW(q alpha) vanishes modulo the relation on every coprime line up to m + n = 12."""
        for s in coprime_lines(12):
            data = critical_data(s)
            assert data.potential.derivative("z").evaluate({"z": data.critical_point}).is_zero
