"""Speed-difference bound factors and the J_p / K_p functionals of ``F``."""

from __future__ import annotations

import logging
import math
from typing import NamedTuple, Optional

import numpy as np
from scipy.integrate import simpson

from ..config_loader import get_quadrature_points
from ..errors import DomainError, ValidationError
from ..orderstats.result import EstimatorResult
from ..rng import StreamPlan
from .distribution import DistributionF

logger = logging.getLogger(__name__)

# quantile sub-intervals per atom in the empirical transport quadrature
_QUANTILE_SUBDIVISIONS = 16


class BoundFactors(NamedTuple):
    """``((1 - M L y)^p, (1 + M L y)^p)`` and whether ``M L y >= 1``."""

    lower: float
    upper: float
    degenerate: bool


def bound_factors(M: float, L: float, y_n: float, p: int) -> BoundFactors:
    """
    Factors bounding the ratio of speeds after the curvature time change.

    ``y_n = 0`` gives the exact factors ``(1, 1)`` whatever ``M`` and ``L`` are.
    When ``M L y_n >= 1`` or the product is not finite the lower factor is
    reported as 0 and the result is flagged degenerate.

    Raises:
        DomainError: If any of ``M``, ``L``, ``y_n`` is negative
    """
    if M < 0 or L < 0 or y_n < 0:
        raise DomainError("M, L and y_n must be >= 0")
    if p < 1:
        raise ValidationError(f"p must be >= 1, got {p}")
    if y_n == 0:
        return BoundFactors(1.0, 1.0, False)
    x = M * L * y_n
    degenerate = not math.isfinite(x) or x >= 1.0
    if degenerate:
        logger.warning(f"Degenerate speed bound: M*L*y_n = {x:.4g} is not below 1")
    lower = 0.0 if degenerate else (1.0 - x) ** p
    upper = (1.0 + x) ** p if math.isfinite(x) else math.inf
    return BoundFactors(lower, upper, degenerate)


def _quadrature_grid(distribution: DistributionF, points: Optional[int]) -> np.ndarray:
    points = points or get_quadrature_points()
    if points < 3:
        raise ValidationError(f"quadrature needs at least 3 points, got {points}")
    # Simpson wants an odd point count
    if points % 2 == 0:
        points += 1
    return np.linspace(0.0, distribution.tau, points)


def j_p_functional(distribution: DistributionF, p: int, points: Optional[int] = None) -> float:
    """
    ``J_p = int_0^tau [F (1 - F)]^{p/2} / f^{p-1} dt`` by composite Simpson.

    Args:
        distribution: Solved curvature distribution
        p: Order, normally even
        points: Quadrature points (default ``numerics.quadrature_points``)
    """
    if p < 1:
        raise ValidationError(f"p must be >= 1, got {p}")
    t = _quadrature_grid(distribution, points)
    F = np.clip(distribution(t), 0.0, 1.0)
    f = distribution.density(t)
    integrand = (F * (1.0 - F)) ** (p / 2.0) / f ** (p - 1)
    return float(simpson(integrand, x=t))


def k_p_functional(distribution: DistributionF, p: int, points: Optional[int] = None) -> float:
    """``K_p = int_0^tau |x|^{p-1} sqrt(F (1 - F)) dx`` by composite Simpson."""
    if p < 1:
        raise ValidationError(f"p must be >= 1, got {p}")
    t = _quadrature_grid(distribution, points)
    F = np.clip(distribution(t), 0.0, 1.0)
    integrand = np.abs(t) ** (p - 1) * np.sqrt(F * (1.0 - F))
    return float(simpson(integrand, x=t))


def expected_wasserstein_bound(
    distribution: DistributionF, p: int, n: int, points: Optional[int] = None
) -> float:
    """Upper bound ``(5 p / sqrt(n + 2))^p J_p`` on ``E[W_p^p(mu_n, mu)]``."""
    if n < 1:
        raise ValidationError(f"sample size must be >= 1, got {n}")
    return (5.0 * p / math.sqrt(n + 2)) ** p * j_p_functional(distribution, p, points)


def empirical_wasserstein_mean(
    distribution: DistributionF,
    p: int,
    n: int,
    replicates: int,
    seed: int = 0,
    stream: int = 0,
) -> EstimatorResult:
    """
    Monte-Carlo estimate of ``E[W_p^p(mu_n, mu)]`` for ``mu`` with distribution ``F``.

    Each replicate draws ``X_(1..n) = F^{-1}(U_(1..n))`` and evaluates
    ``int_0^1 |F_n^{-1}(u) - F^{-1}(u)|^p du`` by midpoint quadrature on a
    fixed subdivision of every quantile cell.
    """
    if p < 1 or n < 1:
        raise ValidationError("empirical transport needs p >= 1 and n >= 1")
    k = _QUANTILE_SUBDIVISIONS
    cells = (np.arange(n)[:, None] + (np.arange(k)[None, :] + 0.5) / k) / n
    reference = distribution.inverse(cells)

    values = []
    for _, size, generator in StreamPlan(seed, replicates, stream=stream).blocks():
        atoms = distribution.inverse(np.sort(generator.random((size, n)), axis=1))
        cost = np.abs(atoms[:, :, None] - reference[None, :, :]) ** p
        values.append(cost.mean(axis=(1, 2)))
    return EstimatorResult.from_values(np.concatenate(values), seed, {"p": p, "n": n})
