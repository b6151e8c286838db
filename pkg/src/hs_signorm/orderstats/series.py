"""The arcsine-squared power series and the angle functionals built from it."""

from __future__ import annotations

import math
from typing import Tuple

import numpy as np
from scipy.special import gammaln

from ..errors import DomainError, ValidationError

# beyond this index the central binomial coefficient is taken from log-gamma
_EXACT_INDEX_LIMIT = 25


def series_coefficient(k: int) -> float:
    """
    Coefficient ``1 / (k^2 C(2k, k))`` of ``x^{2k}`` in ``2 asin(x/2)^2``.

    The series converges on ``[0, 2]``.
    """
    if k < 1:
        raise ValidationError(f"series index must be >= 1, got {k}")
    if k <= _EXACT_INDEX_LIMIT:
        return 1.0 / (math.comb(2 * k, k) * k * k)
    return math.exp(-(gammaln(2 * k + 1) - 2.0 * gammaln(k + 1)) - 2.0 * math.log(k))


def series_partial_sum(x: np.ndarray, terms: int) -> np.ndarray:
    """``sum_{k <= terms} coeff(k) x^{2k}``, vectorised over ``x``."""
    x2 = np.asarray(x, dtype=float) ** 2
    total = np.zeros_like(x2)
    power = np.ones_like(x2)
    for k in range(1, terms + 1):
        power = power * x2
        total = total + series_coefficient(k) * power
    return total


def arcsine_closed_form(x: np.ndarray) -> np.ndarray:
    """``2 asin(x/2)^2``."""
    return 2.0 * np.arcsin(np.clip(np.asarray(x, dtype=float) / 2.0, -1.0, 1.0)) ** 2


def angle_sum_functional(thetas: np.ndarray) -> Tuple[np.ndarray, np.ndarray]:
    """
    Product and exponential functionals of turning angles.

    ``product = prod_j cos(theta_j)`` and ``exponential = exp(-sum_j c(x_j))``
    with ``x_j = 2 sin(theta_j / 2)`` the chord between unit vectors at angle
    ``theta_j`` and ``c = 2 asin(x/2)^2``, which equals ``exp(-0.5 sum theta^2)``.
    Reduction is over the last axis.

    Raises:
        DomainError: If an angle lies outside ``[0, pi]``
    """
    thetas = np.asarray(thetas, dtype=float)
    if np.any(thetas < 0) or np.any(thetas > math.pi) or np.any(~np.isfinite(thetas)):
        raise DomainError("angles must lie in [0, pi]")
    product = np.prod(np.cos(thetas), axis=-1)
    chords = 2.0 * np.sin(thetas / 2.0)
    exponential = np.exp(-np.sum(arcsine_closed_form(chords), axis=-1))
    return product, exponential
