"""Tests for order-statistics sampling and the arcsine series."""

import math

import numpy as np
import pytest

from hs_signorm.errors import DomainError, ValidationError
from hs_signorm.orderstats import (
    OrderStatSample,
    angle_sum_functional,
    arcsine_closed_form,
    sample_order_stats,
    sample_order_stats_block,
    series_coefficient,
    series_partial_sum,
)
from hs_signorm.rng import StreamPlan, block_generator


class TestSampling:
    """Test suite for uniform order statistics."""

    def test_sorted_in_unit_interval(self, rng):
        """Both samples are sorted and lie in [0, 1]."""
        sample = sample_order_stats(50, rng)
        for x in (sample.u, sample.v):
            assert np.all(np.diff(x) >= 0)
            assert x.min() >= 0 and x.max() <= 1
        assert 0 <= sample.y_n <= 1
        assert sample.n == 50

    def test_deterministic(self):
        """Same seed, same draw."""
        a = sample_order_stats(20, np.random.default_rng(5))
        b = sample_order_stats(20, np.random.default_rng(5))
        np.testing.assert_array_equal(a.u, b.u)
        np.testing.assert_array_equal(a.v, b.v)

    def test_median_order_statistic(self):
        """The middle order statistic has mean 1/2."""
        n = 9
        u, _ = sample_order_stats_block(n, 10_000, block_generator(11, 0, 0))
        middle = u[:, math.ceil(n / 2) - 1]
        stderr = middle.std(ddof=1) / math.sqrt(middle.size)
        assert abs(middle.mean() - 0.5) < 4 * stderr

    def test_block_shape(self, rng):
        """Blocks are (size, n) and sorted along rows."""
        u, v = sample_order_stats_block(4, 7, rng)
        assert u.shape == v.shape == (7, 4)
        assert np.all(np.diff(u, axis=1) >= 0)

    def test_swapped(self, rng):
        """swapped() exchanges U and V and keeps y_n."""
        sample = sample_order_stats(6, rng)
        swapped = sample.swapped()
        np.testing.assert_array_equal(swapped.u, sample.v)
        assert swapped.y_n == sample.y_n

    def test_invalid(self, rng):
        """n must be positive and shapes must match."""
        with pytest.raises(ValidationError):
            sample_order_stats(0, rng)
        with pytest.raises(ValidationError):
            OrderStatSample(np.zeros(3), np.zeros(4))


class TestStreams:
    """Test suite for counter-based random streams."""

    def test_blocks_cover_replicates(self):
        """Block sizes add up to the replicate count."""
        plan = StreamPlan(seed=1, replicates=2500, block_size=1000)
        sizes = [size for _, size, _ in plan.blocks()]
        assert sizes == [1000, 1000, 500]
        assert plan.n_blocks == 3

    def test_block_independent_of_schedule(self):
        """Block b of a stream is the same generator whichever way it is reached."""
        plan = StreamPlan(seed=9, replicates=300, stream=4, block_size=100)
        draws = {block: gen.random(3) for block, _, gen in plan.blocks()}
        np.testing.assert_array_equal(draws[2], block_generator(9, 4, 2).random(3))

    def test_streams_differ(self):
        """Different stream labels give different draws."""
        assert block_generator(1, 0, 0).random() != block_generator(1, 1, 0).random()

    def test_invalid_replicates(self):
        """Plans need at least one replicate."""
        with pytest.raises(ValidationError):
            StreamPlan(seed=0, replicates=0)


class TestSeriesCoefficient:
    """Test suite for the arcsine-squared series."""

    def test_first_coefficients(self):
        """coeff(1) = 1/2 and coeff(2) = 1/24."""
        assert series_coefficient(1) == pytest.approx(0.5)
        assert series_coefficient(2) == pytest.approx(1 / 24)

    def test_log_space_continuous(self):
        """The log-gamma branch continues the exact branch."""
        exact = 1.0 / (math.comb(52, 26) * 26 * 26)
        assert series_coefficient(26) == pytest.approx(exact, rel=1e-12)

    def test_invalid_index(self):
        """Indices start at 1."""
        with pytest.raises(ValidationError):
            series_coefficient(0)

    @pytest.mark.parametrize("x", [0.5, 1.0, 1.9])
    def test_fifty_terms_inside(self, x):
        """Fifty terms reproduce 2 asin(x/2)^2 to 1e-3, and to 1e-6 away from the edge."""
        error = abs(float(series_partial_sum(x, 50)) - float(arcsine_closed_form(x)))
        assert error < (1e-3 if x > 1.5 else 1e-6)

    def test_convergence_near_edge(self):
        """At x = 1.9 more terms close the gap below 1e-6."""
        error = abs(float(series_partial_sum(1.9, 200)) - float(arcsine_closed_form(1.9)))
        assert error < 1e-6

    def test_edge_tail(self):
        """At x = 2 the tail after K terms behaves like 2 sqrt(pi / K)."""
        target = math.pi**2 / 2
        assert float(arcsine_closed_form(2.0)) == pytest.approx(target)
        for terms in (50, 200):
            error = target - float(series_partial_sum(2.0, terms))
            assert 3.0 < error * math.sqrt(terms) < 3.7

    def test_vectorised(self):
        """Arrays are summed elementwise."""
        x = np.array([0.0, 0.5, 1.0])
        np.testing.assert_allclose(series_partial_sum(x, 40), arcsine_closed_form(x), atol=1e-12)


class TestAngleSumFunctional:
    """Test suite for the product and exponential functionals."""

    def test_zero_angles(self):
        """All-zero angles give (1, 1)."""
        product, exponential = angle_sum_functional(np.zeros(5))
        assert product == pytest.approx(1.0)
        assert exponential == pytest.approx(1.0)

    def test_right_angle(self):
        """A single right angle gives (0, exp(-pi^2 / 8))."""
        product, exponential = angle_sum_functional(np.array([math.pi / 2]))
        assert product == pytest.approx(0.0, abs=1e-15)
        assert exponential == pytest.approx(math.exp(-(math.pi**2) / 8))
        assert exponential == pytest.approx(0.2912, abs=1e-4)

    def test_exponential_matches_half_square(self, rng):
        """The exponential form equals exp(-0.5 sum theta^2)."""
        thetas = rng.uniform(0, math.pi, size=(20, 6))
        _, exponential = angle_sum_functional(thetas)
        np.testing.assert_allclose(exponential, np.exp(-0.5 * np.sum(thetas**2, axis=-1)))

    def test_gap_shrinks(self):
        """With theta_j = c / sqrt(n) the gap between the two forms decays like 1/n."""
        gaps = []
        for n in (4, 16, 64, 256):
            product, exponential = angle_sum_functional(np.full(n, 1.0 / math.sqrt(n)))
            gaps.append(abs(product - exponential))
        assert all(b < a for a, b in zip(gaps, gaps[1:]))
        assert gaps[-2] / gaps[-1] == pytest.approx(4.0, rel=0.05)

    @pytest.mark.parametrize("bad", [-0.1, math.pi + 0.01, math.nan])
    def test_domain(self, bad):
        """Angles outside [0, pi] are rejected."""
        with pytest.raises(DomainError):
            angle_sum_functional(np.array([0.1, bad]))
