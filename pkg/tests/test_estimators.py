"""Tests for the Monte-Carlo norm and kernel estimators."""

import math

import numpy as np
import pytest

from hs_signorm.curves import CircleArc, Polyline, random_polyline
from hs_signorm.errors import DimensionMismatch, DomainError, ValidationError
from hs_signorm.orderstats import (
    EstimatorResult,
    circle_wasserstein_estimator,
    kernel_estimator,
    kernel_summands,
    norm_estimator,
    norm_summands,
    sample_order_stats_block,
    turning_angles,
)
from hs_signorm.rng import block_generator
from hs_signorm.tensor import hs_inner, signature

# Monte-Carlo agreement band, in standard errors
Z = 4.0


def tensor_value(curve, n, segments=512):
    series = signature(curve, n, segments=segments)
    return math.factorial(n) ** 2 * hs_inner(series, series, n) / curve.length ** (2 * n)


class TestEstimatorResult:
    """Test suite for EstimatorResult."""

    def test_from_values(self):
        """Mean and standard error use ddof = 1."""
        result = EstimatorResult.from_values(np.array([1.0, 2.0, 3.0, 4.0]), seed=3)
        assert result.mean == pytest.approx(2.5)
        assert result.stderr == pytest.approx(np.std([1, 2, 3, 4], ddof=1) / 2)
        assert result.replicates == 4
        assert result.to_dict()["seed"] == 3

    def test_single_value(self):
        """One replicate has no standard error."""
        assert math.isnan(EstimatorResult.from_values(np.array([0.5]), seed=0).stderr)


class TestNormEstimator:
    """Test suite for norm_estimator."""

    @pytest.mark.parametrize("form", ["product", "exponential"])
    def test_straight_line_exact(self, straight_line, form):
        """All turning angles vanish on a straight line."""
        result = norm_estimator(straight_line, 5, 500, form=form, seed=1)
        assert result.mean == 1.0
        assert result.stderr == 0.0

    def test_axis_path_product(self, half_half_axis):
        """The product form is unbiased for 0.375 at degree 2."""
        result = norm_estimator(half_half_axis, 2, 20_000, form="product", seed=7)
        assert abs(result.mean - 0.375) < Z * result.stderr

    def test_summand_ranges(self, unit_circle, rng):
        """Product summands lie in [-1, 1], exponential summands in (0, 1]."""
        u, v = sample_order_stats_block(6, 200, rng)
        product = norm_summands(unit_circle, u, v, "product")
        exponential = norm_summands(unit_circle, u, v, "exponential")
        assert np.all(np.abs(product) <= 1)
        assert np.all((exponential > 0) & (exponential <= 1))

    def test_swap_symmetry(self, rng):
        """Exchanging U and V gives identical per-replicate values."""
        curve = CircleArc(curvature=2.0, length=1.0)
        u, v = sample_order_stats_block(5, 100, rng)
        for form in ("product", "exponential"):
            np.testing.assert_allclose(
                norm_summands(curve, u, v, form), norm_summands(curve, v, u, form), rtol=1e-14
            )

    def test_deterministic(self, unit_circle):
        """Same seed and stream give bit-identical means."""
        a = norm_estimator(unit_circle, 3, 3000, seed=99, stream=2)
        b = norm_estimator(unit_circle, 3, 3000, seed=99, stream=2)
        assert a.mean == b.mean
        assert a.stderr == b.stderr

    def test_diagnostics(self, unit_circle):
        """Diagnostics hold the form and the largest y_n."""
        result = norm_estimator(unit_circle, 3, 100, form="product", seed=1)
        assert result.diagnostics["form"] == "product"
        assert 0 < result.diagnostics["max_y_n"] <= 1

    def test_invalid_form(self, unit_circle):
        """Unknown forms are rejected."""
        with pytest.raises(ValidationError):
            norm_estimator(unit_circle, 2, 10, form="cosine")

    def test_turning_angles_circle(self, rng):
        """On an arc the turning angle is kappa l |U - V|."""
        arc = CircleArc(curvature=1.5, length=1.0)
        u, v = sample_order_stats_block(4, 10, rng)
        np.testing.assert_allclose(
            turning_angles(arc, arc, u, v), 1.5 * np.abs(u - v), atol=1e-7
        )

    def test_gap_shrinks_with_degree(self, unit_circle):
        """The paired product-exponential gap decreases over degrees 2, 8, 32."""
        gaps = []
        for n in (2, 8, 32):
            u, v = sample_order_stats_block(n, 20_000, block_generator(5, 0, n))
            diff = norm_summands(unit_circle, u, v, "exponential") - norm_summands(
                unit_circle, u, v, "product"
            )
            stderr = diff.std(ddof=1) / math.sqrt(diff.size)
            assert stderr < abs(diff.mean()) / 5
            gaps.append(abs(diff.mean()))
        assert gaps[0] > gaps[1] > gaps[2]

    @pytest.mark.slow
    @pytest.mark.parametrize("n", [2, 4, 6])
    def test_product_matches_tensor(self, unit_circle, n):
        """Product form at 10^5 replicates agrees with the tensor route."""
        expected = tensor_value(unit_circle, n)
        result = norm_estimator(unit_circle, n, 100_000, form="product", seed=2024, stream=n)
        assert abs(result.mean - expected) < Z * result.stderr

    @pytest.mark.slow
    @pytest.mark.parametrize("n", [2, 4, 6])
    def test_exponential_close_to_tensor(self, unit_circle, n):
        """Exponential form sits within its O(1/n) gap of the tensor route."""
        expected = tensor_value(unit_circle, n)
        result = norm_estimator(unit_circle, n, 100_000, form="exponential", seed=2024, stream=n)
        assert abs(result.mean - expected) < 0.05 / n + Z * result.stderr


class TestKernelEstimator:
    """Test suite for kernel_estimator."""

    def test_straight_line_exact(self, straight_line):
        """The kernel of a line with itself is 1."""
        result = kernel_estimator(straight_line, straight_line, 4, 200, seed=3)
        assert result.mean == 1.0
        assert result.stderr == 0.0

    def test_series_matches_exponential_norm(self, unit_circle):
        """On a = b the truncated series reproduces the exponential norm form draw for draw."""
        kernel = kernel_estimator(unit_circle, unit_circle, 4, 5000, truncation=8, seed=4)
        norm = norm_estimator(unit_circle, 4, 5000, form="exponential", seed=4)
        assert kernel.mean == pytest.approx(norm.mean, rel=1e-6)
        assert kernel.diagnostics["remainder"] < 1e-6

    def test_remainder_reported(self, rng):
        """Remainder is the largest first omitted term."""
        a = random_polyline(4, 2, rng)
        b = random_polyline(4, 2, rng)
        u, v = sample_order_stats_block(3, 50, rng)
        values, remainder = kernel_summands(a, b, u, v, truncation=2, form="series")
        assert values.shape == remainder.shape == (50,)
        assert np.all(remainder >= 0)
        assert np.all((values > 0) & (values <= 1))

    def test_dimension_mismatch(self, rng):
        """Curves must share the ambient dimension."""
        with pytest.raises(DimensionMismatch):
            kernel_estimator(random_polyline(2, 2, rng), random_polyline(2, 3, rng), 2, 10)

    def test_invalid_truncation(self, straight_line):
        """Truncation starts at 1."""
        with pytest.raises(ValidationError):
            kernel_estimator(straight_line, straight_line, 2, 10, truncation=0)

    @pytest.mark.slow
    @pytest.mark.parametrize("n", [1, 2, 3, 4])
    def test_product_kernel_matches_tensor(self, n):
        """Product-form kernel of two random polylines agrees with (n!)^2 <S(a), S(b)>."""
        generator = np.random.default_rng(77)
        a = random_polyline(5, 2, generator)
        b = random_polyline(5, 2, generator)
        expected = math.factorial(n) ** 2 * hs_inner(signature(a, n), signature(b, n), n)
        result = kernel_estimator(a, b, n, 100_000, seed=11, form="product", stream=n)
        assert abs(result.mean - expected) < Z * result.stderr


class TestCircleWasserstein:
    """Test suite for the transport form of the circle estimator."""

    def test_matches_exponential_form(self):
        """Same seed and stream give the exponential-form estimate."""
        arc = CircleArc(curvature=2.0, length=1.0)
        transport = circle_wasserstein_estimator(arc, 5, 4000, seed=8, stream=1)
        norm = norm_estimator(arc, 5, 4000, form="exponential", seed=8, stream=1)
        assert transport.mean == pytest.approx(norm.mean, rel=1e-6)

    def test_turning_limit(self):
        """Arcs turning by more than pi are rejected."""
        with pytest.raises(DomainError):
            circle_wasserstein_estimator(CircleArc(curvature=4.0, length=1.0), 3, 10)

    def test_polyline_line(self):
        """Sanity: a horizontal segment is a valid norm-estimator input."""
        line = Polyline([[0.0, 0.0], [2.0, 0.0]])
        assert norm_estimator(line, 2, 10, seed=0).mean == 1.0
