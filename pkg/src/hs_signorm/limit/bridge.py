"""Brownian-bridge sampling and exponential functionals of squared bridges."""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass
from typing import Union

import numpy as np

from ..curves.profile import CurvatureProfile
from ..errors import DomainError, ValidationError
from ..orderstats.result import EstimatorResult
from ..rng import StreamPlan
from .sturm_liouville import DiscreteMeasure, solve_psi_discrete

logger = logging.getLogger(__name__)

R_ND_ROUTES = ("ode", "mc")


@dataclass(frozen=True)
class BridgePath:
    """Standard Brownian bridge sampled at ``j/n``, ``j = 0..n``."""

    times: np.ndarray
    values: np.ndarray

    @property
    def n(self) -> int:
        return self.times.size - 1


def sample_bridges(n: int, size: int, rng: np.random.Generator) -> np.ndarray:
    """
    Draw ``size`` bridges on the grid ``j/n`` as ``B_t = W_t - t W_1``.

    Returns:
        Array of shape ``(size, n + 1)`` with both end columns exactly zero
    """
    if n < 1 or size < 1:
        raise ValidationError("bridge sampling needs n >= 1 and size >= 1")
    increments = rng.standard_normal((size, n)) / math.sqrt(n)
    walk = np.concatenate([np.zeros((size, 1)), np.cumsum(increments, axis=1)], axis=1)
    times = np.arange(n + 1) / n
    bridges = walk - times[None, :] * walk[:, -1:]
    bridges[:, 0] = 0.0
    bridges[:, -1] = 0.0
    return bridges


def sample_bridge(n: int, rng: np.random.Generator) -> BridgePath:
    """Draw one bridge on the grid ``j/n``."""
    return BridgePath(np.arange(n + 1) / n, sample_bridges(n, 1, rng)[0])


def closed_form_bridge_exponential(alpha: float) -> float:
    """
    ``E[exp(-alpha int_0^1 B_s^2 ds)] = (sqrt(2 alpha) / sinh sqrt(2 alpha))^{1/2}``.

    Evaluated in log space so large ``alpha`` does not overflow.
    """
    if alpha < 0:
        raise DomainError(f"alpha must be >= 0, got {alpha}")
    if alpha == 0:
        return 1.0
    x = math.sqrt(2.0 * alpha)
    log_sinh = x + math.log1p(-math.exp(-2.0 * x)) - math.log(2.0)
    return math.exp(0.5 * (math.log(x) - log_sinh))


def bridge_exponential_mc(
    alpha: float, n: int, replicates: int, seed: int = 0, stream: int = 0
) -> EstimatorResult:
    """Monte-Carlo ``E[exp(-alpha / n sum_{j=1..n} B_{j/n}^2)]``."""
    profile = CurvatureProfile.constant(n, 1.0)
    return _r_nd_mc(profile, alpha / 2.0, replicates, seed, stream)


def _r_nd_mc(
    profile: CurvatureProfile, D: float, replicates: int, seed: int, stream: int
) -> EstimatorResult:
    n = profile.n
    coefficients = (2.0 * D / n) * profile.gamma
    values = []
    for block, size, generator in StreamPlan(seed, replicates, stream=stream).blocks():
        bridges = sample_bridges(n, size, generator)[:, 1:]
        values.append(np.exp(-(bridges**2) @ coefficients))
        logger.debug(f"bridge block {block}: {size} replicates on {n} nodes")
    return EstimatorResult.from_values(np.concatenate(values), seed, {"route": "mc", "n": n})


def r_nD(
    profile: CurvatureProfile,
    D: float,
    route: str = "ode",
    replicates: int = 0,
    seed: int = 0,
    stream: int = 0,
) -> Union[float, EstimatorResult]:
    """
    ``r_{n,D} = E[exp(-(2D/n) sum_{j=1..n} Gamma_j B_{j/n}^2)]`` on the profile grid.

    The ``ode`` route puts weights ``(4D/n) Gamma_j`` on the atoms ``j/n`` and
    returns ``psi(1)^{-1/2}``, which is exact for the atomic measure; the ``mc``
    route averages over sampled bridges.

    Args:
        profile: Squared curvature on the grid ``j/n``
        D: Scale, ``D >= 0``
        route: ``ode`` or ``mc``
        replicates: Bridge draws (``mc`` only)
        seed: Top-level seed (``mc`` only)
        stream: Stream label (``mc`` only)

    Returns:
        A float for ``ode``, an EstimatorResult for ``mc``
    """
    if D < 0:
        raise DomainError(f"D must be >= 0, got {D}")
    if route == "ode":
        mu = DiscreteMeasure.uniform_grid(profile.gamma, scale=4.0 * D / profile.n)
        return solve_psi_discrete(mu).value ** -0.5
    if route == "mc":
        if replicates < 2:
            raise ValidationError("the mc route needs replicates >= 2")
        return _r_nd_mc(profile, D, replicates, seed, stream)
    raise ValidationError(f"route must be one of {R_ND_ROUTES}, got {route!r}")
