"""Tests for truncated tensor series, Chen products and signatures."""

import math

import numpy as np
import pytest

from hs_signorm.curves import AxisPath, Polyline, random_polyline, sample_polyline
from hs_signorm.errors import DimensionMismatch, ValidationError
from hs_signorm.tensor import (
    TruncatedTensorSeries,
    chen_product,
    hs_inner,
    hs_norm,
    pairwise_sum,
    segment_exponential,
    signature,
)


def central_binomial_ratio(n: int) -> float:
    return math.comb(2 * n, n) / 4**n


class TestSegmentExponential:
    """Test suite for straight-segment signatures."""

    def test_one_letter(self):
        """v=(1,0), N=2 gives levels 1, (1,0), (1/2,0,0,0)."""
        series = segment_exponential([1.0, 0.0], 2)
        np.testing.assert_array_equal(series.levels[0], [1.0])
        np.testing.assert_array_equal(series.levels[1], [1.0, 0.0])
        np.testing.assert_array_equal(series.levels[2], [0.5, 0.0, 0.0, 0.0])

    def test_zero_vector_is_identity(self):
        """exp(0) is the unit."""
        series = segment_exponential([0.0, 0.0], 3)
        identity = TruncatedTensorSeries.identity(2, 3)
        for a, b in zip(series.levels, identity.levels):
            np.testing.assert_array_equal(a, b)

    def test_level_one(self):
        """Level 1 is the increment."""
        np.testing.assert_array_equal(segment_exponential([1.0, 1.0], 1).levels[1], [1.0, 1.0])

    def test_level_shape(self):
        """level(k) reshapes to (d,)*k."""
        series = segment_exponential([1.0, 2.0, 3.0], 3)
        assert series.level(3).shape == (3, 3, 3)
        assert series.level(2)[1, 2] == pytest.approx(2.0 * 3.0 / 2)

    def test_negative_degree(self):
        """Degree must be non-negative."""
        with pytest.raises(ValidationError):
            segment_exponential([1.0], -1)


class TestChenProduct:
    """Test suite for Chen products."""

    def test_right_identity(self):
        """chen(x, 1) = x."""
        x = segment_exponential([0.3, -0.2], 4)
        result = chen_product(x, TruncatedTensorSeries.identity(2, 4))
        for a, b in zip(result.levels, x.levels):
            np.testing.assert_array_equal(a, b)

    def test_level_one_additive(self):
        """Level 1 of a product is the sum of increments."""
        v, w = np.array([0.3, 0.1]), np.array([-0.5, 0.7])
        result = chen_product(segment_exponential(v, 3), segment_exponential(w, 3))
        np.testing.assert_allclose(result.levels[1], v + w)

    @pytest.mark.parametrize("n, expected", [(1, 0.5), (2, 0.375), (3, 0.3125)])
    def test_orthogonal_halves(self, n, expected):
        """Two orthogonal half segments give (2n)!/(2^{2n} (n!)^2)."""
        x = chen_product(segment_exponential([0.5, 0.0], n), segment_exponential([0.0, 0.5], n))
        assert math.factorial(n) ** 2 * hs_inner(x, x, n) == pytest.approx(expected, rel=1e-12)

    def test_associative(self, rng):
        """(ab)c = a(bc) on random group-like triples."""
        a, b, c = (segment_exponential(rng.standard_normal(3), 4) for _ in range(3))
        left = chen_product(chen_product(a, b), c)
        right = chen_product(a, chen_product(b, c))
        for x, y in zip(left.levels, right.levels):
            np.testing.assert_allclose(x, y, atol=1e-12)

    def test_levels_use_fixed_tree(self, rng):
        """Each level equals the pairwise sum of its outer-product terms, bit for bit."""
        a = segment_exponential(rng.standard_normal(3), 5)
        b = segment_exponential(rng.standard_normal(3), 5)
        product = chen_product(a, b)
        for n in range(6):
            terms = [np.outer(a.levels[k], b.levels[n - k]).ravel() for k in range(n + 1)]
            assert np.array_equal(product.levels[n], pairwise_sum(terms))

    def test_dimension_mismatch(self):
        """Operands must share dimension and degree."""
        with pytest.raises(DimensionMismatch):
            chen_product(segment_exponential([1.0, 0.0], 2), segment_exponential([1.0], 2))
        with pytest.raises(DimensionMismatch):
            chen_product(segment_exponential([1.0, 0.0], 2), segment_exponential([1.0, 0.0], 3))


class TestPairwiseSum:
    """Test suite for pairwise_sum."""

    def test_tree_shape(self):
        """Three terms add as a + (b + c), which keeps the two half-ulp terms."""
        tiny = 2.0**-53
        total = pairwise_sum([np.array([1.0]), np.array([tiny]), np.array([tiny])])
        assert total[0] == 1.0 + 2.0**-52

    def test_single_term_copied(self):
        """One term comes back as a fresh float array."""
        term = np.array([1, 2])
        total = pairwise_sum([term])
        assert total.dtype == float
        assert total is not term


class TestSignature:
    """Test suite for polyline signatures."""

    def test_straight_line(self, straight_line):
        """n! ||X^n|| = 1 for a unit segment."""
        series = signature(straight_line, 6)
        for n in range(7):
            assert math.factorial(n) * hs_norm(series, n) == pytest.approx(1.0, rel=1e-12)

    def test_group_like(self, rng):
        """Signatures satisfy the degree-2 shuffle relation and level 1 is the increment."""
        path = random_polyline(7, 3, rng)
        series = signature(path, 3)
        assert series.is_group_like(tol=1e-12)
        np.testing.assert_allclose(series.levels[1], path.vertices[-1] - path.vertices[0])

    def test_axis_path_matches_chen(self, half_half_axis):
        """Axis path corners reproduce the hand-built product."""
        series = signature(half_half_axis, 3)
        assert 36 * hs_inner(series, series, 3) == pytest.approx(0.3125, rel=1e-12)

    def test_reverse_is_inverse(self, rng):
        """chen(S(p), S(reverse p)) is the identity."""
        path = random_polyline(5, 2, rng)
        product = chen_product(signature(path, 4), signature(path.reverse(), 4))
        assert product.levels[0][0] == pytest.approx(1.0)
        for level in product.levels[1:]:
            np.testing.assert_allclose(level, 0.0, atol=1e-12)

    def test_concat_is_chen(self, rng):
        """S(p * q) = S(p) S(q)."""
        p = random_polyline(3, 2, rng)
        q = random_polyline(4, 2, rng)
        joined = signature(p.concat(q), 4)
        product = chen_product(signature(p, 4), signature(q, 4))
        for a, b in zip(joined.levels, product.levels):
            np.testing.assert_allclose(a, b, atol=1e-13)

    def test_level_two_brute_force(self, full_circle):
        """Level-2 norm equals an independent double sum over coordinates."""
        series = signature(full_circle, 2, segments=512)
        level = series.level(2)
        brute = sum(level[i, j] ** 2 for i in range(2) for j in range(2))
        assert hs_norm(series, 2) ** 2 == pytest.approx(brute, rel=1e-12)

    def test_polyline_refinement(self, unit_circle):
        """Refining the chord polyline barely moves the norm."""
        coarse = signature(unit_circle, 4, segments=512)
        fine = signature(unit_circle, 4, segments=1024)
        assert abs(hs_norm(coarse, 4) - hs_norm(fine, 4)) < 1e-6

    def test_sampled_polyline_passthrough(self, unit_circle):
        """A pre-sampled polyline gives the same signature."""
        chord = sample_polyline(unit_circle, 64)
        a = signature(chord, 3)
        b = signature(unit_circle, 3, segments=64)
        np.testing.assert_allclose(a.levels[3], b.levels[3])


class TestHilbertSchmidt:
    """Test suite for Hilbert-Schmidt pairings."""

    def test_level_zero(self, rng):
        """<x, x>_0 = 1 for signatures."""
        series = signature(random_polyline(4, 2, rng), 2)
        assert hs_inner(series, series, 0) == 1.0

    def test_orthogonal_lines(self):
        """Orthogonal directions have zero level-1 pairing."""
        a = signature(Polyline([[0, 0], [1, 0]]), 1)
        b = signature(Polyline([[0, 0], [0, 1]]), 1)
        assert hs_inner(a, b, 1) == 0.0

    def test_level_out_of_range(self):
        """Levels above the truncation are rejected."""
        x = segment_exponential([1.0, 0.0], 2)
        with pytest.raises(DimensionMismatch):
            hs_inner(x, x, 3)

    @pytest.mark.slow
    @pytest.mark.parametrize("n", range(1, 13))
    def test_axis_closed_form(self, n):
        """(n!)^2 ||X^n||^2 of e1(1/2) e2(1/2) equals the central binomial ratio."""
        series = signature(AxisPath([0, 1], [0.5, 0.5]), n)
        value = math.factorial(n) ** 2 * hs_inner(series, series, n)
        assert value == pytest.approx(central_binomial_ratio(n), rel=1e-10)
