"""Tests for the twisted torus Floer complex."""
import math
import random
from fractions import Fraction

import pytest

from mirror_mf.exceptions import ComplexError
from mirror_mf.services.floer_torus import (
    TorusComplex,
    chain_isomorphism_check,
    differential,
    format_element,
    homology_ranks,
    parse_holonomy,
    reduced_simplex_ranks,
    torus_report,
)


def as_text(block):
    return [[str(x) for x in row] for row in block.to_Matrix().tolist()]


class TestParseHolonomy:
    """Exact Gaussian rational literals."""

    @pytest.mark.parametrize(
        "text, expected",
        [("2", "2"), ("-1/3", "-1/3"), ("i", "I"), ("-i", "-I"), ("1/2-3i", "1/2 - 3*I")],
    )
    def test_literals(self, text, expected):
        """Rationals and Gaussian rationals parse exactly."""
        assert format_element(parse_holonomy(text)) == expected

    @pytest.mark.parametrize("text", ["", "x", "1/0"])
    def test_rejects_junk(self, text):
        """Malformed literals raise ComplexError."""
        with pytest.raises(ComplexError):
            parse_holonomy(text)


class TestTorusComplex:
    """Differentials over {0, 1/2}^n."""

    def test_generators_by_index(self):
        """Degree k generators have k zero coordinates."""
        c = TorusComplex.from_text(3, "1,1,1", "1,1,1")
        assert [len(c.generators(k)) for k in range(4)] == [1, 3, 3, 1]

    def test_top_differential_on_square(self):
        """n = 2 with opposite holonomies: d(0,0) = 2 (1/2,0) - 2 (0,1/2)."""
        c = TorusComplex.from_text(2, "1,-1", "-1,1")
        assert [format_element(f) for f in c.factors] == ["2", "2"]
        assert as_text(c.differential(2)) == [["-2"], ["2"]]

    def test_differential_by_degree(self):
        """differential() returns one block per degree 1..n shaped C(n, k-1) x C(n, k)."""
        c = TorusComplex.from_text(3, "i,1,2", "1,-1,i")
        blocks = differential(c)
        assert sorted(blocks) == [1, 2, 3]
        for k, block in blocks.items():
            assert block.shape == (math.comb(3, k - 1), math.comb(3, k))
            assert block == c.differential(k)
        assert as_text(blocks[1]) == [["1 - I", "2", "1 + 2*I"]]

    @pytest.mark.parametrize("n, h0, h1", [(2, "1,-1", "-1,1"), (3, "i,1,2", "1,-1,i"), (4, "1,1,-1,i", "1,-1,-1,2")])
    def test_boundary_squares_to_zero(self, n, h0, h1):
        """d o d = 0 for any holonomies."""
        assert TorusComplex.from_text(n, h0, h1).boundary_squares_to_zero()

    def test_zero_holonomy(self):
        """Holonomies must be units."""
        with pytest.raises(ComplexError, match="zero holonomy"):
            TorusComplex.from_text(2, "0,1", "1,1")

    def test_length_mismatch(self):
        """One holonomy per circle factor."""
        with pytest.raises(ComplexError):
            TorusComplex.from_text(2, "1", "1,1")

    def test_differential_out_of_range(self):
        """No differential out of degree 0."""
        with pytest.raises(ComplexError):
            TorusComplex.from_text(2, "1,1", "1,1").differential(0)


class TestHomology:
    """Ranks of the twisted complex."""

    @pytest.mark.parametrize("n", [1, 2, 3, 4])
    def test_equal_bundles(self, n):
        """Equal bundles give the full cohomology of T^n."""
        ones = ",".join(["1"] * n)
        ranks = homology_ranks(TorusComplex.from_text(n, ones, ones))
        assert ranks == [math.comb(n, k) for k in range(n + 1)]

    @pytest.mark.parametrize("n, h0, h1", [(2, "1,-1", "-1,1"), (2, "1,1", "1,-1"), (3, "i,1,1", "1,1,1")])
    def test_one_nontrivial_factor_kills_homology(self, n, h0, h1):
        """A single differing holonomy makes the complex acyclic."""
        assert homology_ranks(TorusComplex.from_text(n, h0, h1)) == [0] * (n + 1)

    @pytest.mark.parametrize("n", [1, 2, 3, 5])
    def test_reduced_simplex(self, n):
        """The reduced complex of a simplex is acyclic."""
        assert reduced_simplex_ranks(n) == [0] * (n + 1)

    def test_chain_isomorphism(self):
        """Psi intertwines the twisted and unit differentials when every factor is a unit."""
        c = TorusComplex.from_text(3, "1,-1,i", "-1,1,2")
        assert chain_isomorphism_check(c)

    def test_psi_not_invertible(self):
        """A vanishing factor makes Psi singular."""
        c = TorusComplex.from_text(2, "1,-1", "1,1")
        with pytest.raises(ComplexError, match="Psi not invertible"):
            chain_isomorphism_check(c)

    def test_report(self):
        """The report carries formatted holonomies and the total rank."""
        result = torus_report(TorusComplex.from_text(2, "1,1", "1,1"))
        assert result.h0 == ("1", "1")
        assert result.ranks == (1, 2, 1)
        assert result.total == 4
        assert result.chain_isomorphism is None


class TestRandomHolonomies:
    """Seeded sweeps over random Gaussian rational holonomies."""

    def setup_method(self):
        self.rng = random.Random(1729)

    def literal(self):
        real = Fraction(self.rng.randint(-3, 3), self.rng.randint(1, 3))
        imag = Fraction(self.rng.randint(-3, 3), self.rng.randint(1, 3))
        if real == 0 and imag == 0:
            real = Fraction(1)
        return f"{real}{'+' if imag >= 0 else '-'}{abs(imag)}i"

    def vector(self, n):
        return ",".join(self.literal() for _ in range(n))

    @pytest.mark.parametrize("n", [1, 2, 3, 4, 5])
    def test_boundary_squares_to_zero(self, n):
        """d o d = 0 for random holonomies up to n = 5."""
        for _ in range(3):
            assert TorusComplex.from_text(n, self.vector(n), self.vector(n)).boundary_squares_to_zero()

    @pytest.mark.parametrize("n", [1, 2, 3, 4])
    def test_total_rank(self, n):
        """Total rank is 2^n when the bundles agree and 0 otherwise."""
        h = self.vector(n)
        assert sum(homology_ranks(TorusComplex.from_text(n, h, h))) == 2 ** n
        c = TorusComplex.from_text(n, self.vector(n), self.vector(n))
        expected = 2 ** n if c.bundles_agree else 0
        assert sum(homology_ranks(c)) == expected
