"""Curvature profiles on a uniform time grid."""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass
from typing import Optional

import numpy as np

from ..config_loader import get_lipschitz_grid
from ..errors import UnsupportedDerivative, ValidationError
from .base import Curve

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class CurvatureProfile:
    """
    Squared curvature sampled at ``t_j = j * length / n`` for ``j = 1..n``.

    Attributes:
        n: Grid size
        length: Length of the source curve
        times: Grid times, shape ``(n,)``
        gamma: ``|gamma''(t_j)|^2``, shape ``(n,)``
        sup: ``M``, the sup-norm of ``|gamma''|``
        lipschitz: ``L``, Lipschitz constant of ``t -> |gamma''_t|^-1``
        lipschitz_estimated: True when ``L`` comes from finite differences
    """

    n: int
    length: float
    times: np.ndarray
    gamma: np.ndarray
    sup: float
    lipschitz: float
    lipschitz_estimated: bool = False

    @classmethod
    def constant(cls, n: int, value: float, length: float = 1.0) -> "CurvatureProfile":
        """Profile of constant squared curvature ``value``."""
        if n < 1:
            raise ValidationError(f"grid size must be >= 1, got {n}")
        if value < 0:
            raise ValidationError("squared curvature must be >= 0")
        times = length * np.arange(1, n + 1) / n
        return cls(n, length, times, np.full(n, float(value)), math.sqrt(value), 0.0)

    @classmethod
    def from_values(cls, gamma: np.ndarray, length: float = 1.0) -> "CurvatureProfile":
        """Profile from raw squared-curvature values; ``L`` is left undetermined."""
        gamma = np.asarray(gamma, dtype=float)
        if gamma.ndim != 1 or gamma.size < 1 or np.any(gamma < 0):
            raise ValidationError("squared curvature values must be a non-empty array >= 0")
        n = gamma.size
        times = length * np.arange(1, n + 1) / n
        return cls(n, length, times, gamma, float(np.sqrt(gamma.max())), math.nan)

    @property
    def is_constant(self) -> bool:
        return bool(np.all(self.gamma == self.gamma[0]))


def estimate_lipschitz(curve: Curve, grid: Optional[int] = None) -> float:
    """
    Estimate the Lipschitz constant of ``t -> 1/|gamma''_t|``.

    Central differences on a uniform grid; the estimate is advisory.
    """
    grid = grid or get_lipschitz_grid()
    times = np.linspace(0.0, curve.length, grid + 1)
    kappa = curve.curvature(times)
    if np.any(kappa <= 0):
        return math.inf
    slope = np.gradient(1.0 / kappa, times)
    return float(np.max(np.abs(slope)))


def curvature_profile(
    curve: Curve,
    n: int,
    lipschitz: Optional[float] = None,
    estimate: bool = False,
) -> CurvatureProfile:
    """
    Sample ``Gamma_j = |gamma''(j l / n)|^2`` on ``j = 1..n``.

    Args:
        curve: Curve with a second derivative
        n: Grid size, at least 1
        lipschitz: Declared ``L``; overrides the curve's own declaration
        estimate: Estimate ``L`` by finite differences instead

    Returns:
        CurvatureProfile

    Raises:
        UnsupportedDerivative: For curves without curvature (polylines, axis paths)
    """
    if n < 1:
        raise ValidationError(f"grid size must be >= 1, got {n}")
    if not curve.has_curvature:
        raise UnsupportedDerivative(f"{curve.kind.value} curves have no curvature profile")

    times = curve.length * np.arange(1, n + 1) / n
    times[-1] = curve.length
    gamma = np.sum(np.atleast_2d(curve.evaluate(times, order=2)) ** 2, axis=-1)
    sup = float(np.sqrt(gamma.max()))
    try:
        sup = max(sup, curve.curvature_sup)
    except UnsupportedDerivative:
        pass

    estimated = False
    if lipschitz is None and not estimate:
        try:
            lipschitz = curve.lipschitz_inverse_curvature
        except UnsupportedDerivative:
            estimate = True
    if estimate:
        lipschitz = estimate_lipschitz(curve)
        estimated = True
        logger.debug(f"Estimated L={lipschitz:.6g} for {curve!r}")

    return CurvatureProfile(n, curve.length, times, gamma, sup, float(lipschitz), estimated)
